#include <phl/syntax.hh>

#include <algorithm>
#include <functional>

using std::optional;
using std::set;
using std::string;
using std::to_string;
using std::vector;

namespace phl
{
    auto Signature::add_sort(const string & name) -> SortId
    {
        if (find_sort(name))
            throw PhlError{"duplicate sort '" + name + "'"};
        _sorts.push_back(name);
        return _sorts.size() - 1;
    }

    auto Signature::add_function(const string & name, vector<SortId> args, SortId result) -> FunctionId
    {
        if (name == "=")
            throw PhlError{"'=' cannot be declared as a symbol"};
        if (find_function(name) || find_relation(name))
            throw PhlError{"duplicate symbol '" + name + "'"};
        for (auto s : args)
            if (s >= _sorts.size())
                throw PhlError{"function '" + name + "' uses an undeclared sort"};
        if (result >= _sorts.size())
            throw PhlError{"function '" + name + "' has an undeclared result sort"};
        _functions.push_back(FunctionSymbol{name, std::move(args), result});
        return _functions.size() - 1;
    }

    auto Signature::add_relation(const string & name, vector<SortId> args) -> RelationId
    {
        if (name == "=")
            throw PhlError{"'=' is never a declared relation symbol"};
        if (find_function(name) || find_relation(name))
            throw PhlError{"duplicate symbol '" + name + "'"};
        for (auto s : args)
            if (s >= _sorts.size())
                throw PhlError{"relation '" + name + "' uses an undeclared sort"};
        _relations.push_back(RelationSymbol{name, std::move(args)});
        return _relations.size() - 1;
    }

    auto Signature::find_sort(const string & name) const -> optional<SortId>
    {
        for (SortId i = 0; i < _sorts.size(); ++i)
            if (_sorts[i] == name)
                return i;
        return std::nullopt;
    }

    auto Signature::find_function(const string & name) const -> optional<FunctionId>
    {
        for (FunctionId i = 0; i < _functions.size(); ++i)
            if (_functions[i].name == name)
                return i;
        return std::nullopt;
    }

    auto Signature::find_relation(const string & name) const -> optional<RelationId>
    {
        for (RelationId i = 0; i < _relations.size(); ++i)
            if (_relations[i].name == name)
                return i;
        return std::nullopt;
    }

    auto Signature::sort_id(const string & name) const -> SortId
    {
        if (auto s = find_sort(name))
            return *s;
        throw PhlError{"unknown sort '" + name + "'"};
    }

    auto Signature::function_id(const string & name) const -> FunctionId
    {
        if (auto f = find_function(name))
            return *f;
        throw PhlError{"unknown function symbol '" + name + "'"};
    }

    auto Signature::relation_id(const string & name) const -> RelationId
    {
        if (auto r = find_relation(name))
            return *r;
        throw PhlError{"unknown relation symbol '" + name + "'"};
    }

    auto Term::make_var(string name, SortId sort) -> Term
    {
        Term t;
        t.kind = Kind::variable;
        t.var = Variable{std::move(name), sort};
        return t;
    }

    auto Term::make_apply(FunctionId f, vector<Term> args) -> Term
    {
        Term t;
        t.kind = Kind::apply;
        t.function = f;
        t.args = std::move(args);
        return t;
    }

    auto Formula::make_relation(RelationId r, vector<Term> args) -> Formula
    {
        Formula f;
        f.kind = Kind::relation;
        f.relation = r;
        f.terms = std::move(args);
        return f;
    }

    auto Formula::make_equation(Term lhs, Term rhs) -> Formula
    {
        Formula f;
        f.kind = Kind::equation;
        f.terms.push_back(std::move(lhs));
        f.terms.push_back(std::move(rhs));
        return f;
    }

    auto Formula::make_truth() -> Formula
    {
        return Formula{};
    }

    auto Formula::make_conjunction(Formula lhs, Formula rhs) -> Formula
    {
        Formula f;
        f.kind = Kind::conjunction;
        f.parts.push_back(std::move(lhs));
        f.parts.push_back(std::move(rhs));
        return f;
    }

    auto Formula::conjoin(vector<Formula> fs) -> Formula
    {
        if (fs.empty())
            return make_truth();
        Formula result = std::move(fs.front());
        for (std::size_t i = 1; i < fs.size(); ++i)
            result = make_conjunction(std::move(result), std::move(fs[i]));
        return result;
    }

    auto identity_morphism(const TheoryPtr & t) -> TheoryMorphism
    {
        TheoryMorphism rho;
        rho.name = "id_" + t->name;
        rho.source = t;
        rho.target = t;
        const auto & sig = *t->signature;
        for (SortId s = 0; s < sig.sorts().size(); ++s)
            rho.sort_map.push_back(s);
        for (FunctionId f = 0; f < sig.functions().size(); ++f)
            rho.function_map.push_back(f);
        for (RelationId r = 0; r < sig.relations().size(); ++r)
            rho.relation_map.push_back(r);
        return rho;
    }

    auto check_morphism_arities(const TheoryMorphism & rho) -> void
    {
        const auto & src = *rho.source->signature;
        const auto & tgt = *rho.target->signature;
        if (rho.sort_map.size() != src.sorts().size() || rho.function_map.size() != src.functions().size()
            || rho.relation_map.size() != src.relations().size())
            throw PhlError{"morphism '" + rho.name + "' does not map every source symbol"};

        for (auto s : rho.sort_map)
            if (s >= tgt.sorts().size())
                throw PhlError{"morphism '" + rho.name + "' maps a sort outside the target"};

        auto map_sorts = [&](const vector<SortId> & ss) {
            vector<SortId> out;
            for (auto s : ss)
                out.push_back(rho.sort_map[s]);
            return out;
        };

        for (FunctionId f = 0; f < src.functions().size(); ++f) {
            auto g = rho.function_map[f];
            if (g >= tgt.functions().size())
                throw PhlError{"morphism '" + rho.name + "' maps function '" + src.functions()[f].name + "' outside the target"};
            const auto & fs = src.functions()[f];
            const auto & gs = tgt.functions()[g];
            if (map_sorts(fs.args) != gs.args || rho.sort_map[fs.result] != gs.result)
                throw PhlError{"morphism '" + rho.name + "': arity of '" + fs.name + "' is incompatible with '" + gs.name + "'"};
        }

        for (RelationId r = 0; r < src.relations().size(); ++r) {
            auto q = rho.relation_map[r];
            if (q >= tgt.relations().size())
                throw PhlError{"morphism '" + rho.name + "' maps relation '" + src.relations()[r].name + "' outside the target"};
            const auto & rs = src.relations()[r];
            const auto & qs = tgt.relations()[q];
            if (map_sorts(rs.args) != qs.args)
                throw PhlError{"morphism '" + rho.name + "': arity of '" + rs.name + "' is incompatible with '" + qs.name + "'"};
        }
    }

    auto type_of(const Signature & sig, const Term & t) -> SortId
    {
        if (t.kind == Term::Kind::variable) {
            if (t.var.sort >= sig.sorts().size())
                throw PhlError{"variable '" + t.var.name + "' has an undeclared sort"};
            return t.var.sort;
        }
        if (t.function >= sig.functions().size())
            throw PhlError{"unknown function symbol"};
        const auto & f = sig.functions()[t.function];
        if (f.args.size() != t.args.size())
            throw PhlError{"'" + f.name + "' expects " + to_string(f.args.size()) + " arguments, got " + to_string(t.args.size())};
        for (std::size_t i = 0; i < t.args.size(); ++i)
            if (type_of(sig, t.args[i]) != f.args[i])
                throw PhlError{"argument " + to_string(i + 1) + " of '" + f.name + "' has the wrong sort"};
        return f.result;
    }

    auto free_variables(const Term & t, vector<Variable> & out) -> void
    {
        if (t.kind == Term::Kind::variable) {
            if (std::find(out.begin(), out.end(), t.var) == out.end())
                out.push_back(t.var);
            return;
        }
        for (const auto & a : t.args)
            free_variables(a, out);
    }

    auto free_variables(const Formula & f, vector<Variable> & out) -> void
    {
        for (const auto & t : f.terms)
            free_variables(t, out);
        for (const auto & p : f.parts)
            free_variables(p, out);
    }

    namespace
    {
        auto term_functions(const Term & t, set<FunctionId> & out) -> void
        {
            if (t.kind == Term::Kind::apply) {
                out.insert(t.function);
                for (const auto & a : t.args)
                    term_functions(a, out);
            }
        }
    }

    auto formula_functions(const Formula & f, set<FunctionId> & out) -> void
    {
        for (const auto & t : f.terms)
            term_functions(t, out);
        for (const auto & p : f.parts)
            formula_functions(p, out);
    }

    auto formula_relations(const Formula & f, set<RelationId> & out) -> void
    {
        if (f.kind == Formula::Kind::relation)
            out.insert(f.relation);
        for (const auto & p : f.parts)
            formula_relations(p, out);
    }

    namespace
    {
        struct SequentChecker
        {
            const Signature & sig;
            const Context & context;
            const string & where;
            WellFormednessReport & report;

            auto fail(const string & msg) -> void { report.violations.push_back(Violation{where, msg}); }

            // Returns the sort when it could be determined.
            auto check_term(const Term & t) -> optional<SortId>
            {
                if (t.kind == Term::Kind::variable) {
                    auto it = std::find_if(context.begin(), context.end(), [&](const Variable & v) { return v.name == t.var.name; });
                    if (it == context.end()) {
                        fail("unbound variable '" + t.var.name + "'");
                        return std::nullopt;
                    }
                    if (it->sort != t.var.sort) {
                        fail("variable '" + t.var.name + "' used at a sort different from its context sort");
                        return std::nullopt;
                    }
                    return t.var.sort;
                }
                if (t.function >= sig.functions().size()) {
                    fail("unknown function symbol");
                    return std::nullopt;
                }
                const auto & f = sig.functions()[t.function];
                bool ok = true;
                if (f.args.size() != t.args.size()) {
                    fail("arity mismatch: '" + f.name + "' expects " + to_string(f.args.size()) + " arguments, got " + to_string(t.args.size()));
                    ok = false;
                }
                for (std::size_t i = 0; i < t.args.size(); ++i) {
                    auto s = check_term(t.args[i]);
                    if (s && i < f.args.size() && *s != f.args[i]) {
                        fail("arity mismatch: argument " + to_string(i + 1) + " of '" + f.name + "' has sort '" + sig.sorts()[*s] + "', expected '"
                            + sig.sorts()[f.args[i]] + "'");
                        ok = false;
                    }
                }
                return ok ? optional<SortId>{f.result} : std::nullopt;
            }

            auto check_formula(const Formula & f) -> void
            {
                switch (f.kind) {
                case Formula::Kind::truth: break;
                case Formula::Kind::conjunction:
                    if (f.parts.size() != 2)
                        fail("conjunction must have two parts");
                    for (const auto & p : f.parts)
                        check_formula(p);
                    break;
                case Formula::Kind::equation: {
                    if (f.terms.size() != 2) {
                        fail("equation must have two sides");
                        break;
                    }
                    auto a = check_term(f.terms[0]);
                    auto b = check_term(f.terms[1]);
                    if (a && b && *a != *b)
                        fail("equation between terms of different sorts '" + sig.sorts()[*a] + "' and '" + sig.sorts()[*b] + "'");
                    break;
                }
                case Formula::Kind::relation: {
                    if (f.relation >= sig.relations().size()) {
                        fail("unknown relation symbol");
                        break;
                    }
                    const auto & r = sig.relations()[f.relation];
                    if (r.args.size() != f.terms.size())
                        fail("arity mismatch: '" + r.name + "' expects " + to_string(r.args.size()) + " arguments, got " + to_string(f.terms.size()));
                    for (std::size_t i = 0; i < f.terms.size(); ++i) {
                        auto s = check_term(f.terms[i]);
                        if (s && i < r.args.size() && *s != r.args[i])
                            fail("arity mismatch: argument " + to_string(i + 1) + " of '" + r.name + "' has the wrong sort");
                    }
                    break;
                }
                }
            }
        };
    }

    auto validate_sequent(const Signature & sig, const Sequent & s, const string & where) -> WellFormednessReport
    {
        WellFormednessReport report;
        SequentChecker checker{sig, s.context, where, report};
        for (std::size_t i = 0; i < s.context.size(); ++i) {
            if (s.context[i].sort >= sig.sorts().size())
                checker.fail("context variable '" + s.context[i].name + "' has an undeclared sort");
            for (std::size_t j = 0; j < i; ++j)
                if (s.context[i].name == s.context[j].name)
                    checker.fail("context variables must be distinct ('" + s.context[i].name + "' repeated)");
            if (auto f = sig.find_function(s.context[i].name); f && sig.functions()[*f].args.empty())
                checker.fail("context variable '" + s.context[i].name + "' clashes with a constant symbol");
        }
        checker.check_formula(s.premise);
        checker.check_formula(s.conclusion);
        return report;
    }

    auto validate_theory(const Theory & t) -> WellFormednessReport
    {
        WellFormednessReport report;
        if (! t.signature) {
            report.violations.push_back(Violation{t.name, "missing signature"});
            return report;
        }
        const auto & sig = *t.signature;

        set<string> names;
        for (const auto & f : sig.functions())
            if (! names.insert(f.name).second)
                report.violations.push_back(Violation{t.name, "duplicate symbol '" + f.name + "'"});
        for (const auto & r : sig.relations()) {
            if (! names.insert(r.name).second)
                report.violations.push_back(Violation{t.name, "duplicate symbol '" + r.name + "'"});
            if (r.name == "=")
                report.violations.push_back(Violation{t.name, "'=' declared as a relation"});
        }

        for (std::size_t i = 0; i < t.axioms.size(); ++i) {
            auto sub = validate_sequent(sig, t.axioms[i], t.name + " axiom " + to_string(i + 1));
            report.violations.insert(report.violations.end(), sub.violations.begin(), sub.violations.end());
        }
        return report;
    }

    auto translate_along(const TheoryMorphism & rho, const Term & t) -> Term
    {
        if (t.kind == Term::Kind::variable) {
            if (t.var.sort >= rho.sort_map.size())
                throw PhlError{"sort outside the domain of '" + rho.name + "'"};
            return Term::make_var(t.var.name, rho.sort_map[t.var.sort]);
        }
        if (t.function >= rho.function_map.size())
            throw PhlError{"function symbol outside the domain of '" + rho.name + "'"};
        vector<Term> args;
        args.reserve(t.args.size());
        for (const auto & a : t.args)
            args.push_back(translate_along(rho, a));
        return Term::make_apply(rho.function_map[t.function], std::move(args));
    }

    auto translate_along(const TheoryMorphism & rho, const Formula & f) -> Formula
    {
        Formula out;
        out.kind = f.kind;
        if (f.kind == Formula::Kind::relation) {
            if (f.relation >= rho.relation_map.size())
                throw PhlError{"relation symbol outside the domain of '" + rho.name + "'"};
            out.relation = rho.relation_map[f.relation];
        }
        for (const auto & t : f.terms)
            out.terms.push_back(translate_along(rho, t));
        for (const auto & p : f.parts)
            out.parts.push_back(translate_along(rho, p));
        return out;
    }

    auto translate_context(const TheoryMorphism & rho, const Context & c) -> Context
    {
        Context out;
        for (const auto & v : c) {
            if (v.sort >= rho.sort_map.size())
                throw PhlError{"sort outside the domain of '" + rho.name + "'"};
            out.push_back(Variable{v.name, rho.sort_map[v.sort]});
        }
        return out;
    }

    auto translate_along(const TheoryMorphism & rho, const Sequent & s) -> Sequent
    {
        return Sequent{translate_context(rho, s.context), translate_along(rho, s.premise), translate_along(rho, s.conclusion)};
    }

    auto check_relative_judgment(const RelativeTheory & rt, const Sequent & s) -> JudgmentVerdict
    {
        const auto first_op = rt.base->signature->functions().size();
        set<FunctionId> used;
        formula_functions(s.premise, used);
        for (auto f : used)
            if (f >= first_op)
                return JudgmentVerdict{false, "premise mentions operation '" + rt.combined->functions()[f].name + "'", {}, {}};
        return JudgmentVerdict{true, "premise mentions no operation", {}, {}};
    }

    namespace
    {
        // Reconstruction of a source-signature preimage for a target-signature
        // premise. Variable sorts are fixed up front; each subterm then has an
        // exact set of achievable source sorts.
        struct PreimageSearch
        {
            const TheoryMorphism & rho;
            const Signature & src;
            std::map<string, SortId> var_sorts;

            auto achievable(const Term & t) const -> set<SortId>
            {
                if (t.kind == Term::Kind::variable) {
                    auto it = var_sorts.find(t.var.name);
                    if (it == var_sorts.end())
                        return {};
                    return {it->second};
                }
                vector<set<SortId>> arg_sets;
                for (const auto & a : t.args)
                    arg_sets.push_back(achievable(a));
                set<SortId> out;
                for (FunctionId f = 0; f < src.functions().size(); ++f) {
                    if (rho.function_map[f] != t.function)
                        continue;
                    const auto & fs = src.functions()[f];
                    if (fs.args.size() != t.args.size())
                        continue;
                    bool ok = true;
                    for (std::size_t i = 0; i < fs.args.size() && ok; ++i)
                        ok = arg_sets[i].count(fs.args[i]) != 0;
                    if (ok)
                        out.insert(fs.result);
                }
                return out;
            }

            auto rebuild(const Term & t, SortId wanted) const -> optional<Term>
            {
                if (t.kind == Term::Kind::variable) {
                    auto it = var_sorts.find(t.var.name);
                    if (it == var_sorts.end() || it->second != wanted)
                        return std::nullopt;
                    return Term::make_var(t.var.name, wanted);
                }
                for (FunctionId f = 0; f < src.functions().size(); ++f) {
                    if (rho.function_map[f] != t.function)
                        continue;
                    const auto & fs = src.functions()[f];
                    if (fs.result != wanted || fs.args.size() != t.args.size())
                        continue;
                    vector<Term> args;
                    for (std::size_t i = 0; i < fs.args.size(); ++i) {
                        auto a = rebuild(t.args[i], fs.args[i]);
                        if (! a)
                            break;
                        args.push_back(std::move(*a));
                    }
                    if (args.size() == fs.args.size())
                        return Term::make_apply(f, std::move(args));
                }
                return std::nullopt;
            }

            auto rebuild(const Formula & f) const -> optional<Formula>
            {
                switch (f.kind) {
                case Formula::Kind::truth: return Formula::make_truth();
                case Formula::Kind::conjunction: {
                    auto a = rebuild(f.parts[0]);
                    auto b = a ? rebuild(f.parts[1]) : std::nullopt;
                    if (! b)
                        return std::nullopt;
                    return Formula::make_conjunction(std::move(*a), std::move(*b));
                }
                case Formula::Kind::equation: {
                    auto common = achievable(f.terms[0]);
                    auto other = achievable(f.terms[1]);
                    for (auto s : common)
                        if (other.count(s)) {
                            auto a = rebuild(f.terms[0], s);
                            auto b = rebuild(f.terms[1], s);
                            if (a && b)
                                return Formula::make_equation(std::move(*a), std::move(*b));
                        }
                    return std::nullopt;
                }
                case Formula::Kind::relation: {
                    for (RelationId r = 0; r < src.relations().size(); ++r) {
                        if (rho.relation_map[r] != f.relation)
                            continue;
                        const auto & rs = src.relations()[r];
                        if (rs.args.size() != f.terms.size())
                            continue;
                        vector<Term> args;
                        for (std::size_t i = 0; i < rs.args.size(); ++i) {
                            auto a = rebuild(f.terms[i], rs.args[i]);
                            if (! a)
                                break;
                            args.push_back(std::move(*a));
                        }
                        if (args.size() == rs.args.size())
                            return Formula::make_relation(r, std::move(args));
                    }
                    return std::nullopt;
                }
                }
                return std::nullopt;
            }
        };
    }

    auto check_relative_judgment(const TheoryMorphism & rho, const Sequent & s) -> JudgmentVerdict
    {
        const auto & src = *rho.source->signature;

        // every symbol of the premise must lie in the image of rho
        set<FunctionId> fs;
        set<RelationId> rs;
        formula_functions(s.premise, fs);
        formula_relations(s.premise, rs);
        for (auto f : fs)
            if (std::find(rho.function_map.begin(), rho.function_map.end(), f) == rho.function_map.end())
                return JudgmentVerdict{false, "function '" + rho.target->signature->functions()[f].name + "' is not in the image", {}, {}};
        for (auto r : rs)
            if (std::find(rho.relation_map.begin(), rho.relation_map.end(), r) == rho.relation_map.end())
                return JudgmentVerdict{false, "relation '" + rho.target->signature->relations()[r].name + "' is not in the image", {}, {}};

        vector<vector<SortId>> choices;
        for (const auto & v : s.context) {
            vector<SortId> pre;
            for (SortId a = 0; a < rho.sort_map.size(); ++a)
                if (rho.sort_map[a] == v.sort)
                    pre.push_back(a);
            if (pre.empty())
                return JudgmentVerdict{false, "context sort of '" + v.name + "' is not in the image", {}, {}};
            choices.push_back(std::move(pre));
        }

        vector<std::size_t> pick(choices.size(), 0);
        while (true) {
            PreimageSearch search{rho, src, {}};
            Context ctx;
            for (std::size_t i = 0; i < choices.size(); ++i) {
                search.var_sorts[s.context[i].name] = choices[i][pick[i]];
                ctx.push_back(Variable{s.context[i].name, choices[i][pick[i]]});
            }
            if (auto pre = search.rebuild(s.premise))
                return JudgmentVerdict{true, "premise is a translation", ctx, std::move(*pre)};

            std::size_t i = 0;
            for (; i < pick.size(); ++i) {
                if (++pick[i] < choices[i].size())
                    break;
                pick[i] = 0;
            }
            if (i == pick.size())
                break;
        }
        return JudgmentVerdict{false, "no source formula translates to the premise", {}, {}};
    }

    auto make_combined_signature(const Signature & base, const vector<RelativeOperation> & ops) -> SignaturePtr
    {
        auto combined = std::make_shared<Signature>(base);
        for (const auto & op : ops) {
            if (base.find_function(op.name) || base.find_relation(op.name))
                throw PhlError{"operation '" + op.name + "' clashes with a base symbol"};
            vector<SortId> args;
            for (const auto & v : op.arity_context)
                args.push_back(v.sort);
            combined->add_function(op.name, std::move(args), op.result);
        }
        return combined;
    }

    auto compile_relative_theory(const RelativeTheory & rt) -> TheoryPtr
    {
        const auto & base_sig = *rt.base->signature;
        auto combined = rt.combined ? rt.combined : make_combined_signature(base_sig, rt.operations);
        for (std::size_t i = 0; i < rt.operations.size(); ++i)
            if (combined->functions().size() != base_sig.functions().size() + rt.operations.size()
                || combined->functions()[base_sig.functions().size() + i].name != rt.operations[i].name)
                throw PhlError{"combined signature of '" + rt.name + "' does not match its operations"};

        auto t = std::make_shared<Theory>();
        t->name = rt.name;
        t->signature = combined;
        t->axioms = rt.base->axioms;

        for (std::size_t i = 0; i < rt.operations.size(); ++i) {
            const auto & op = rt.operations[i];
            vector<Term> vars;
            for (const auto & v : op.arity_context)
                vars.push_back(Term::make_var(v.name, v.sort));
            auto app = Term::make_apply(base_sig.functions().size() + i, std::move(vars));
            auto defined = Formula::make_equation(app, app);
            t->axioms.push_back(Sequent{op.arity_context, defined, op.arity});
            t->axioms.push_back(Sequent{op.arity_context, op.arity, defined});
        }

        for (const auto & j : rt.judgments)
            t->axioms.push_back(j);

        auto report = validate_theory(*t);
        if (! report.ok())
            throw PhlError{"compiled theory '" + rt.name + "' is ill-formed: " + report.violations.front().message};
        return t;
    }

    auto base_inclusion(const RelativeTheory & rt, const TheoryPtr & compiled) -> TheoryMorphism
    {
        TheoryMorphism rho;
        rho.name = "incl_" + rt.name;
        rho.source = rt.base;
        rho.target = compiled;
        const auto & sig = *rt.base->signature;
        for (SortId s = 0; s < sig.sorts().size(); ++s)
            rho.sort_map.push_back(s);
        for (FunctionId f = 0; f < sig.functions().size(); ++f)
            rho.function_map.push_back(f);
        for (RelationId r = 0; r < sig.relations().size(); ++r)
            rho.relation_map.push_back(r);
        return rho;
    }
}
