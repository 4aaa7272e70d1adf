#include <phl/semantics.hh>

#include <algorithm>
#include <map>

using std::optional;
using std::size_t;
using std::string;
using std::to_string;
using std::vector;

namespace phl
{
    namespace
    {
        auto check_env(const PartialStructure & m, const Context & ctx, const Tuple & env) -> void
        {
            if (env.size() != ctx.size())
                throw PhlError{"assignment has " + to_string(env.size()) + " values for a context of " + to_string(ctx.size())};
            for (size_t i = 0; i < ctx.size(); ++i) {
                if (ctx[i].sort >= m.signature().sorts().size())
                    throw PhlError{"context variable '" + ctx[i].name + "' has an unknown sort"};
                if (env[i] < 0 || static_cast<size_t>(env[i]) >= m.carrier_size(ctx[i].sort))
                    throw PhlError{"value for '" + ctx[i].name + "' is not in the carrier of its sort"};
            }
        }

        auto eval_unchecked(const PartialStructure & m, const Context & ctx, const Term & t, const Tuple & env) -> optional<Element>
        {
            if (t.kind == Term::Kind::variable) {
                for (size_t i = 0; i < ctx.size(); ++i)
                    if (ctx[i].name == t.var.name) {
                        if (ctx[i].sort != t.var.sort)
                            throw PhlError{"sort mismatch for variable '" + t.var.name + "'"};
                        return env[i];
                    }
                throw PhlError{"unbound variable '" + t.var.name + "'"};
            }
            Tuple args;
            for (const auto & a : t.args) {
                auto v = eval_unchecked(m, ctx, a, env);
                if (! v)
                    return std::nullopt;
                args.push_back(*v);
            }
            auto v = m.value(t.function, args);
            if (v == undefined)
                return std::nullopt;
            return v;
        }

        auto holds_unchecked(const PartialStructure & m, const Context & ctx, const Formula & f, const Tuple & env) -> bool
        {
            switch (f.kind) {
            case Formula::Kind::truth: return true;
            case Formula::Kind::conjunction: return holds_unchecked(m, ctx, f.parts[0], env) && holds_unchecked(m, ctx, f.parts[1], env);
            case Formula::Kind::equation: {
                auto a = eval_unchecked(m, ctx, f.terms[0], env);
                auto b = eval_unchecked(m, ctx, f.terms[1], env);
                return a && b && *a == *b;
            }
            case Formula::Kind::relation: {
                Tuple args;
                for (const auto & t : f.terms) {
                    auto v = eval_unchecked(m, ctx, t, env);
                    if (! v)
                        return false;
                    args.push_back(*v);
                }
                return m.holds(f.relation, args);
            }
            }
            return false;
        }

        // Visits every assignment in lexicographic order; stops when visit
        // returns false.
        template <typename F>
        auto for_each_assignment(const vector<size_t> & sizes, F && visit) -> void
        {
            for (auto n : sizes)
                if (n == 0)
                    return;
            Tuple env(sizes.size(), 0);
            while (true) {
                if (! visit(env))
                    return;
                size_t i = sizes.size();
                while (i > 0) {
                    --i;
                    if (static_cast<size_t>(++env[i]) < sizes[i])
                        break;
                    env[i] = 0;
                    if (i == 0)
                        return;
                }
                if (sizes.empty())
                    return;
            }
        }

        auto context_sizes(const PartialStructure & m, const Context & ctx) -> vector<size_t>
        {
            vector<size_t> out;
            for (const auto & v : ctx)
                out.push_back(m.carrier_size(v.sort));
            return out;
        }

        auto same_signature(const PartialStructure & m, const SignaturePtr & sig) -> bool
        {
            return m.signature_ptr() == sig || m.signature() == *sig;
        }
    }

    auto eval_term(const PartialStructure & m, const Context & ctx, const Term & t, const Tuple & env) -> optional<Element>
    {
        check_env(m, ctx, env);
        return eval_unchecked(m, ctx, t, env);
    }

    auto eval_formula(const PartialStructure & m, const Context & ctx, const Formula & f) -> vector<Tuple>
    {
        vector<Tuple> out;
        for_each_assignment(context_sizes(m, ctx), [&](const Tuple & env) {
            if (holds_unchecked(m, ctx, f, env))
                out.push_back(env);
            return true;
        });
        return out;
    }

    auto sequent_counterexample(const PartialStructure & m, const Sequent & s) -> optional<Tuple>
    {
        optional<Tuple> found;
        for_each_assignment(context_sizes(m, s.context), [&](const Tuple & env) {
            if (holds_unchecked(m, s.context, s.premise, env) && ! holds_unchecked(m, s.context, s.conclusion, env)) {
                found = env;
                return false;
            }
            return true;
        });
        return found;
    }

    auto sequent_valid(const PartialStructure & m, const Sequent & s) -> bool
    {
        return ! sequent_counterexample(m, s).has_value();
    }

    auto is_model(const PartialStructure & m, const Theory & t) -> bool
    {
        if (! same_signature(m, t.signature))
            throw PhlError{"structure signature does not match theory '" + t.name + "'"};
        return CompiledTheory{t}.is_model(m);
    }

    CompiledSequent::CompiledSequent(const Signature & sig, const Sequent & s)
    {
        auto report = validate_sequent(sig, s);
        if (! report.ok())
            throw PhlError{"ill-formed sequent: " + report.violations.front().message};
        for (const auto & v : s.context)
            _var_sorts.push_back(v.sort);
        compile_formula(s.context, s.premise, _premise);
        compile_formula(s.context, s.conclusion, _conclusion);
    }

    auto CompiledSequent::compile_term(const Context & ctx, const Term & t) -> size_t
    {
        Node node;
        if (t.kind == Term::Kind::variable) {
            node.is_var = true;
            node.index = 0;
            for (size_t i = 0; i < ctx.size(); ++i)
                if (ctx[i].name == t.var.name)
                    node.index = i;
        }
        else {
            node.is_var = false;
            node.index = t.function;
            for (const auto & a : t.args)
                node.children.push_back(compile_term(ctx, a));
        }
        _nodes.push_back(std::move(node));
        return _nodes.size() - 1;
    }

    auto CompiledSequent::compile_formula(const Context & ctx, const Formula & f, vector<Atom> & out) -> void
    {
        switch (f.kind) {
        case Formula::Kind::truth: break;
        case Formula::Kind::conjunction:
            compile_formula(ctx, f.parts[0], out);
            compile_formula(ctx, f.parts[1], out);
            break;
        case Formula::Kind::equation: {
            Atom a{true, 0, {}};
            a.nodes.push_back(compile_term(ctx, f.terms[0]));
            a.nodes.push_back(compile_term(ctx, f.terms[1]));
            out.push_back(std::move(a));
            break;
        }
        case Formula::Kind::relation: {
            Atom a{false, f.relation, {}};
            for (const auto & t : f.terms)
                a.nodes.push_back(compile_term(ctx, t));
            out.push_back(std::move(a));
            break;
        }
        }
    }

    auto CompiledSequent::mentions_function(FunctionId f) const -> bool
    {
        return std::any_of(_nodes.begin(), _nodes.end(), [&](const Node & n) { return ! n.is_var && n.index == f; });
    }

    auto CompiledSequent::mentions_relation(RelationId r) const -> bool
    {
        auto in = [&](const vector<Atom> & as) { return std::any_of(as.begin(), as.end(), [&](const Atom & a) { return ! a.is_equation && a.relation == r; }); };
        return in(_premise) || in(_conclusion);
    }

    namespace
    {
        enum class Truth
        {
            no,
            yes,
            unknown
        };
    }

    template <bool three_valued_>
    auto CompiledSequent::check(const PartialStructure & m) const -> bool
    {
        vector<size_t> sizes;
        for (auto s : _var_sorts)
            sizes.push_back(m.carrier_size(s));
        const auto & sig = m.signature();

        vector<Element> values(_nodes.size());
        auto atom_truth = [&](const Atom & a) -> Truth {
            bool unknown = false;
            for (auto n : a.nodes) {
                if (values[n] == undefined)
                    return Truth::no;
                if (values[n] == unassigned)
                    unknown = true;
            }
            if (unknown)
                return Truth::unknown;
            if (a.is_equation)
                return values[a.nodes[0]] == values[a.nodes[1]] ? Truth::yes : Truth::no;
            const auto & rs = sig.relations()[a.relation];
            size_t index = 0;
            for (size_t i = 0; i < a.nodes.size(); ++i)
                index = index * m.carrier_size(rs.args[i]) + static_cast<size_t>(values[a.nodes[i]]);
            auto cell = m.relation_table(a.relation)[index];
            if (cell == 0)
                return Truth::no;
            if (cell == 1)
                return Truth::yes;
            return Truth::unknown;
        };

        bool ok = true;
        for_each_assignment(sizes, [&](const Tuple & env) {
            for (size_t i = 0; i < _nodes.size(); ++i) {
                const auto & node = _nodes[i];
                if (node.is_var) {
                    values[i] = env[node.index];
                    continue;
                }
                bool undef = false, unknown = false;
                for (auto c : node.children) {
                    if (values[c] == undefined)
                        undef = true;
                    else if (values[c] == unassigned)
                        unknown = true;
                }
                if (undef) {
                    values[i] = undefined;
                    continue;
                }
                if (unknown) {
                    values[i] = unassigned;
                    continue;
                }
                const auto & fs = sig.functions()[node.index];
                size_t index = 0;
                for (size_t c = 0; c < node.children.size(); ++c)
                    index = index * m.carrier_size(fs.args[c]) + static_cast<size_t>(values[node.children[c]]);
                values[i] = m.function_table(node.index)[index];
            }

            for (const auto & a : _premise) {
                auto t = atom_truth(a);
                if (t == Truth::no)
                    return true;
                if constexpr (three_valued_) {
                    if (t == Truth::unknown)
                        return true;
                }
            }
            for (const auto & a : _conclusion)
                if (atom_truth(a) == Truth::no) {
                    ok = false;
                    return false;
                }
            return true;
        });
        return ok;
    }

    auto CompiledSequent::valid(const PartialStructure & m) const -> bool
    {
        return check<false>(m);
    }

    auto CompiledSequent::possibly_valid(const PartialStructure & m) const -> bool
    {
        return check<true>(m);
    }

    CompiledTheory::CompiledTheory(const Theory & t)
    {
        for (const auto & a : t.axioms)
            _axioms.emplace_back(*t.signature, a);
    }

    auto CompiledTheory::is_model(const PartialStructure & m) const -> bool
    {
        return std::all_of(_axioms.begin(), _axioms.end(), [&](const CompiledSequent & s) { return s.valid(m); });
    }

    auto is_homomorphism(const SortMap & maps, const PartialStructure & m, const PartialStructure & n) -> MapCheck
    {
        const auto & sig = m.signature();
        if (! (m.signature_ptr() == n.signature_ptr() || sig == n.signature()))
            return MapCheck{false, "", {}, "signatures differ"};
        if (maps.size() != sig.sorts().size())
            return MapCheck{false, "", {}, "map does not cover every sort"};
        for (SortId s = 0; s < maps.size(); ++s) {
            if (maps[s].size() != m.carrier_size(s))
                return MapCheck{false, sig.sorts()[s], {}, "map is not total on sort '" + sig.sorts()[s] + "'"};
            for (auto v : maps[s])
                if (v < 0 || static_cast<size_t>(v) >= n.carrier_size(s))
                    return MapCheck{false, sig.sorts()[s], {}, "map leaves the target carrier of '" + sig.sorts()[s] + "'"};
        }

        for (FunctionId f = 0; f < sig.functions().size(); ++f) {
            const auto & fs = sig.functions()[f];
            for (size_t i = 0; i < m.table_size(f); ++i) {
                auto v = m.function_table(f)[i];
                if (v == undefined)
                    continue;
                auto args = m.function_args(f, i);
                Tuple image;
                for (size_t a = 0; a < args.size(); ++a)
                    image.push_back(maps[fs.args[a]][args[a]]);
                auto w = n.value(f, image);
                if (w == undefined)
                    return MapCheck{false, fs.name, args, "'" + fs.name + "' is defined in the source but not at the image"};
                if (w != maps[fs.result][v])
                    return MapCheck{false, fs.name, args, "'" + fs.name + "' is not preserved"};
            }
        }

        for (RelationId r = 0; r < sig.relations().size(); ++r) {
            const auto & rs = sig.relations()[r];
            for (size_t i = 0; i < m.relation_size(r); ++i) {
                if (! m.relation_table(r)[i])
                    continue;
                auto args = m.relation_args(r, i);
                Tuple image;
                for (size_t a = 0; a < args.size(); ++a)
                    image.push_back(maps[rs.args[a]][args[a]]);
                if (! n.holds(r, image))
                    return MapCheck{false, rs.name, args, "'" + rs.name + "' is not preserved"};
            }
        }
        return MapCheck{};
    }

    auto is_homomorphism(const Homomorphism & h) -> MapCheck
    {
        return is_homomorphism(h.maps, *h.source, *h.target);
    }

    auto is_injective(const Homomorphism & h) -> bool
    {
        for (SortId s = 0; s < h.maps.size(); ++s) {
            vector<bool> hit(h.target->carrier_size(s), false);
            for (auto v : h.maps[s]) {
                if (hit[v])
                    return false;
                hit[v] = true;
            }
        }
        return true;
    }

    auto is_surjective(const Homomorphism & h) -> bool
    {
        for (SortId s = 0; s < h.maps.size(); ++s) {
            vector<bool> hit(h.target->carrier_size(s), false);
            for (auto v : h.maps[s])
                hit[v] = true;
            if (std::find(hit.begin(), hit.end(), false) != hit.end())
                return false;
        }
        return true;
    }

    auto is_closed_mono(const Homomorphism & h) -> MapCheck
    {
        if (! is_injective(h))
            throw PhlError{"closed-mono check on a non-injective map"};
        const auto & m = *h.source;
        const auto & n = *h.target;
        const auto & sig = m.signature();

        for (FunctionId f = 0; f < sig.functions().size(); ++f) {
            const auto & fs = sig.functions()[f];
            for (size_t i = 0; i < m.table_size(f); ++i) {
                if (m.function_table(f)[i] != undefined)
                    continue;
                auto args = m.function_args(f, i);
                Tuple image;
                for (size_t a = 0; a < args.size(); ++a)
                    image.push_back(h.maps[fs.args[a]][args[a]]);
                if (n.value(f, image) != undefined)
                    return MapCheck{false, fs.name, args, "'" + fs.name + "' is defined at the image but not in the source"};
            }
        }

        for (RelationId r = 0; r < sig.relations().size(); ++r) {
            const auto & rs = sig.relations()[r];
            for (size_t i = 0; i < m.relation_size(r); ++i) {
                if (m.relation_table(r)[i])
                    continue;
                auto args = m.relation_args(r, i);
                Tuple image;
                for (size_t a = 0; a < args.size(); ++a)
                    image.push_back(h.maps[rs.args[a]][args[a]]);
                if (n.holds(r, image))
                    return MapCheck{false, rs.name, args, "'" + rs.name + "' holds at the image but not in the source"};
            }
        }
        return MapCheck{};
    }

    auto identity_hom(const StructurePtr & m) -> Homomorphism
    {
        Homomorphism h{m, m, {}};
        for (SortId s = 0; s < m->signature().sorts().size(); ++s) {
            h.maps.emplace_back();
            for (size_t e = 0; e < m->carrier_size(s); ++e)
                h.maps.back().push_back(static_cast<Element>(e));
        }
        return h;
    }

    auto compose(const Homomorphism & g, const Homomorphism & f) -> Homomorphism
    {
        Homomorphism h{f.source, g.target, {}};
        for (SortId s = 0; s < f.maps.size(); ++s) {
            h.maps.emplace_back();
            for (auto v : f.maps[s])
                h.maps.back().push_back(g.maps[s][v]);
        }
        return h;
    }

    auto terminal_structure(const SignaturePtr & sig) -> PartialStructure
    {
        vector<vector<string>> carriers(sig->sorts().size(), vector<string>{"*"});
        PartialStructure t{sig, std::move(carriers)};
        for (FunctionId f = 0; f < sig->functions().size(); ++f)
            std::fill(t.function_table(f).begin(), t.function_table(f).end(), 0);
        for (RelationId r = 0; r < sig->relations().size(); ++r)
            std::fill(t.relation_table(r).begin(), t.relation_table(r).end(), 1);
        t.name = "1";
        return t;
    }

    auto product_sizes(const SignaturePtr & sig, const vector<StructurePtr> & family) -> vector<size_t>
    {
        vector<size_t> sizes(sig->sorts().size(), 1);
        for (const auto & m : family)
            for (SortId s = 0; s < sizes.size(); ++s)
                sizes[s] *= m->carrier_size(s);
        return sizes;
    }

    auto product(const SignaturePtr & sig, const vector<StructurePtr> & family, size_t bound) -> Cone
    {
        for (const auto & m : family)
            if (! same_signature(*m, sig))
                throw PhlError{"product of structures over different signatures"};

        if (family.empty())
            return Cone{std::make_shared<PartialStructure>(terminal_structure(sig)), {}};

        // a product element is a mixed-radix tuple of component indices,
        // first member most significant
        auto sizes = product_sizes(sig, family);
        for (SortId s = 0; s < sizes.size(); ++s)
            if (sizes[s] > bound)
                throw PhlError{"product carrier of sort '" + sig->sorts()[s] + "' exceeds the bound " + to_string(bound)};

        auto decode = [&](SortId s, size_t e) {
            Tuple parts(family.size());
            for (size_t i = family.size(); i-- > 0;) {
                auto n = family[i]->carrier_size(s);
                parts[i] = static_cast<Element>(e % n);
                e /= n;
            }
            return parts;
        };
        auto encode = [&](SortId s, const Tuple & parts) {
            size_t e = 0;
            for (size_t i = 0; i < family.size(); ++i)
                e = e * family[i]->carrier_size(s) + static_cast<size_t>(parts[i]);
            return static_cast<Element>(e);
        };

        vector<vector<string>> carriers(sizes.size());
        for (SortId s = 0; s < sizes.size(); ++s)
            for (size_t e = 0; e < sizes[s]; ++e) {
                auto parts = decode(s, e);
                string label = "(";
                for (size_t i = 0; i < parts.size(); ++i)
                    label += (i ? "," : "") + family[i]->label(s, parts[i]);
                carriers[s].push_back(label + ")");
            }

        auto p = std::make_shared<PartialStructure>(sig, std::move(carriers));

        for (FunctionId f = 0; f < sig->functions().size(); ++f) {
            const auto & fs = sig->functions()[f];
            for (size_t c = 0; c < p->table_size(f); ++c) {
                auto args = p->function_args(f, c);
                vector<Tuple> split;
                for (size_t a = 0; a < args.size(); ++a)
                    split.push_back(decode(fs.args[a], static_cast<size_t>(args[a])));
                Tuple value(family.size());
                bool defined = true;
                for (size_t i = 0; i < family.size() && defined; ++i) {
                    Tuple component;
                    for (size_t a = 0; a < args.size(); ++a)
                        component.push_back(split[a][i]);
                    value[i] = family[i]->value(f, component);
                    defined = value[i] != undefined;
                }
                if (defined)
                    p->function_table(f)[c] = encode(fs.result, value);
            }
        }

        for (RelationId r = 0; r < sig->relations().size(); ++r) {
            const auto & rs = sig->relations()[r];
            for (size_t c = 0; c < p->relation_size(r); ++c) {
                auto args = p->relation_args(r, c);
                vector<Tuple> split;
                for (size_t a = 0; a < args.size(); ++a)
                    split.push_back(decode(rs.args[a], static_cast<size_t>(args[a])));
                bool all = true;
                for (size_t i = 0; i < family.size() && all; ++i) {
                    Tuple component;
                    for (size_t a = 0; a < args.size(); ++a)
                        component.push_back(split[a][i]);
                    all = family[i]->holds(r, component);
                }
                p->relation_table(r)[c] = all ? 1 : 0;
            }
        }

        Cone cone{p, {}};
        for (size_t i = 0; i < family.size(); ++i) {
            Homomorphism proj{p, family[i], {}};
            for (SortId s = 0; s < sizes.size(); ++s) {
                proj.maps.emplace_back();
                for (size_t e = 0; e < sizes[s]; ++e)
                    proj.maps.back().push_back(decode(s, e)[i]);
            }
            cone.legs.push_back(std::move(proj));
        }
        return cone;
    }

    auto pullback(const Homomorphism & f, const Homomorphism & g) -> Cone
    {
        if (! (f.target == g.target || *f.target == *g.target))
            throw PhlError{"pullback of maps with different codomains"};
        const auto & a = *f.source;
        const auto & b = *g.source;
        const auto & sig = a.signature();

        vector<vector<std::pair<Element, Element>>> pairs(sig.sorts().size());
        vector<vector<string>> carriers(sig.sorts().size());
        vector<std::map<std::pair<Element, Element>, Element>> index(sig.sorts().size());
        for (SortId s = 0; s < sig.sorts().size(); ++s)
            for (size_t x = 0; x < a.carrier_size(s); ++x)
                for (size_t y = 0; y < b.carrier_size(s); ++y)
                    if (f.maps[s][x] == g.maps[s][y]) {
                        std::pair<Element, Element> p{static_cast<Element>(x), static_cast<Element>(y)};
                        index[s][p] = static_cast<Element>(pairs[s].size());
                        pairs[s].push_back(p);
                        carriers[s].push_back("(" + a.label(s, p.first) + "," + b.label(s, p.second) + ")");
                    }

        auto pb = std::make_shared<PartialStructure>(a.signature_ptr(), std::move(carriers));
        for (FunctionId fn = 0; fn < sig.functions().size(); ++fn) {
            const auto & fs = sig.functions()[fn];
            for (size_t c = 0; c < pb->table_size(fn); ++c) {
                auto args = pb->function_args(fn, c);
                Tuple xa, ya;
                for (size_t i = 0; i < args.size(); ++i) {
                    xa.push_back(pairs[fs.args[i]][args[i]].first);
                    ya.push_back(pairs[fs.args[i]][args[i]].second);
                }
                auto vx = a.value(fn, xa);
                auto vy = b.value(fn, ya);
                if (vx == undefined || vy == undefined)
                    continue;
                auto it = index[fs.result].find({vx, vy});
                if (it != index[fs.result].end())
                    pb->function_table(fn)[c] = it->second;
            }
        }
        for (RelationId r = 0; r < sig.relations().size(); ++r) {
            const auto & rs = sig.relations()[r];
            for (size_t c = 0; c < pb->relation_size(r); ++c) {
                auto args = pb->relation_args(r, c);
                Tuple xa, ya;
                for (size_t i = 0; i < args.size(); ++i) {
                    xa.push_back(pairs[rs.args[i]][args[i]].first);
                    ya.push_back(pairs[rs.args[i]][args[i]].second);
                }
                pb->relation_table(r)[c] = (a.holds(r, xa) && b.holds(r, ya)) ? 1 : 0;
            }
        }

        Homomorphism p1{pb, f.source, {}}, p2{pb, g.source, {}};
        for (SortId s = 0; s < sig.sorts().size(); ++s) {
            p1.maps.emplace_back();
            p2.maps.emplace_back();
            for (const auto & [x, y] : pairs[s]) {
                p1.maps.back().push_back(x);
                p2.maps.back().push_back(y);
            }
        }
        return Cone{pb, {std::move(p1), std::move(p2)}};
    }

    auto reduct(const TheoryMorphism & rho, const PartialStructure & n) -> PartialStructure
    {
        const auto & src = rho.source->signature;
        if (! same_signature(n, rho.target->signature))
            throw PhlError{"reduct of a structure not over the target of '" + rho.name + "'"};
        vector<vector<string>> carriers;
        for (SortId s = 0; s < src->sorts().size(); ++s)
            carriers.push_back(n.labels(rho.sort_map[s]));
        PartialStructure m{src, std::move(carriers)};
        for (FunctionId f = 0; f < src->functions().size(); ++f)
            m.function_table(f) = n.function_table(rho.function_map[f]);
        for (RelationId r = 0; r < src->relations().size(); ++r)
            m.relation_table(r) = n.relation_table(rho.relation_map[r]);
        m.name = n.name;
        return m;
    }

    auto reduct(const TheoryMorphism & rho, const Homomorphism & h) -> Homomorphism
    {
        Homomorphism out{std::make_shared<PartialStructure>(reduct(rho, *h.source)), std::make_shared<PartialStructure>(reduct(rho, *h.target)), {}};
        for (SortId s = 0; s < rho.sort_map.size(); ++s)
            out.maps.push_back(h.maps[rho.sort_map[s]]);
        return out;
    }

    auto disjoint_union(const Theory & t, const StructurePtr & m, const StructurePtr & n) -> Cone
    {
        if (! t.has_flag(flags::disjoint_union))
            throw PhlError{"theory '" + t.name + "' does not declare the disjoint_union flag"};
        const auto & sig = t.signature;
        for (const auto & f : sig->functions())
            if (f.args.empty())
                throw PhlError{"disjoint union over a signature with constant '" + f.name + "'"};
        if (! same_signature(*m, sig) || ! same_signature(*n, sig))
            throw PhlError{"disjoint union of structures not over theory '" + t.name + "'"};

        vector<vector<string>> carriers(sig->sorts().size());
        for (SortId s = 0; s < carriers.size(); ++s) {
            for (const auto & l : m->labels(s))
                carriers[s].push_back("0." + l);
            for (const auto & l : n->labels(s))
                carriers[s].push_back("1." + l);
        }
        auto u = std::make_shared<PartialStructure>(sig, std::move(carriers));

        auto side = [&](SortId s, Element e) { return static_cast<size_t>(e) < m->carrier_size(s) ? 0 : 1; };
        auto local = [&](SortId s, Element e) { return side(s, e) == 0 ? e : static_cast<Element>(e - static_cast<Element>(m->carrier_size(s))); };

        for (FunctionId f = 0; f < sig->functions().size(); ++f) {
            const auto & fs = sig->functions()[f];
            for (size_t c = 0; c < u->table_size(f); ++c) {
                auto args = u->function_args(f, c);
                auto which = side(fs.args[0], args[0]);
                Tuple inner;
                bool mixed = false;
                for (size_t a = 0; a < args.size(); ++a) {
                    mixed = mixed || side(fs.args[a], args[a]) != which;
                    inner.push_back(local(fs.args[a], args[a]));
                }
                if (mixed)
                    continue;
                auto v = (which == 0 ? *m : *n).value(f, inner);
                if (v != undefined)
                    u->function_table(f)[c] = which == 0 ? v : v + static_cast<Element>(m->carrier_size(fs.result));
            }
        }
        for (RelationId r = 0; r < sig->relations().size(); ++r) {
            const auto & rs = sig->relations()[r];
            for (size_t c = 0; c < u->relation_size(r); ++c) {
                auto args = u->relation_args(r, c);
                if (args.empty()) {
                    u->relation_table(r)[c] = (m->holds(r, {}) || n->holds(r, {})) ? 1 : 0;
                    continue;
                }
                auto which = side(rs.args[0], args[0]);
                Tuple inner;
                bool mixed = false;
                for (size_t a = 0; a < args.size(); ++a) {
                    mixed = mixed || side(rs.args[a], args[a]) != which;
                    inner.push_back(local(rs.args[a], args[a]));
                }
                if (! mixed && (which == 0 ? *m : *n).holds(r, inner))
                    u->relation_table(r)[c] = 1;
            }
        }

        Homomorphism inl{m, u, {}}, inr{n, u, {}};
        for (SortId s = 0; s < sig->sorts().size(); ++s) {
            inl.maps.emplace_back();
            inr.maps.emplace_back();
            for (size_t e = 0; e < m->carrier_size(s); ++e)
                inl.maps.back().push_back(static_cast<Element>(e));
            for (size_t e = 0; e < n->carrier_size(s); ++e)
                inr.maps.back().push_back(static_cast<Element>(e + m->carrier_size(s)));
        }
        return Cone{u, {std::move(inl), std::move(inr)}};
    }

    auto permute(const PartialStructure & m, const SortMap & perm) -> PartialStructure
    {
        const auto & sig = m.signature();
        vector<vector<string>> carriers(sig.sorts().size());
        for (SortId s = 0; s < carriers.size(); ++s) {
            carriers[s].resize(m.carrier_size(s));
            for (size_t e = 0; e < m.carrier_size(s); ++e)
                carriers[s][perm[s][e]] = m.label(s, static_cast<Element>(e));
        }
        PartialStructure out{m.signature_ptr(), std::move(carriers)};
        for (FunctionId f = 0; f < sig.functions().size(); ++f) {
            const auto & fs = sig.functions()[f];
            for (size_t c = 0; c < m.table_size(f); ++c) {
                auto v = m.function_table(f)[c];
                if (v == undefined)
                    continue;
                auto args = m.function_args(f, c);
                for (size_t a = 0; a < args.size(); ++a)
                    args[a] = perm[fs.args[a]][args[a]];
                out.set_value(f, args, perm[fs.result][v]);
            }
        }
        for (RelationId r = 0; r < sig.relations().size(); ++r) {
            const auto & rs = sig.relations()[r];
            for (size_t c = 0; c < m.relation_size(r); ++c) {
                if (! m.relation_table(r)[c])
                    continue;
                auto args = m.relation_args(r, c);
                for (size_t a = 0; a < args.size(); ++a)
                    args[a] = perm[rs.args[a]][args[a]];
                out.set_holds(r, args, true);
            }
        }
        out.name = m.name;
        return out;
    }
}
