#include <phl/homsearch.hh>

#include <algorithm>
#include <functional>
#include <numeric>

using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace phl
{
    namespace
    {
        // Elements of the source are the variables, numbered sort by sort.
        class Searcher
        {
        public:
            Searcher(const PartialStructure & m, const PartialStructure & n, const Domains * initial) :
                _m(m),
                _n(n)
            {
                const auto & sig = m.signature();
                if (! (m.signature_ptr() == n.signature_ptr() || sig == n.signature()))
                    throw PhlError{"homomorphism search between structures over different signatures"};

                for (SortId s = 0; s < sig.sorts().size(); ++s) {
                    _offset.push_back(_var_sort.size());
                    for (size_t e = 0; e < m.carrier_size(s); ++e) {
                        _var_sort.push_back(s);
                        vector<Element> dom;
                        if (initial)
                            dom = (*initial)[s][e];
                        else
                            for (size_t t = 0; t < n.carrier_size(s); ++t)
                                dom.push_back(static_cast<Element>(t));
                        _domains.push_back(std::move(dom));
                    }
                }
                _assignment.assign(_var_sort.size(), undefined);
                _var_constraints.resize(_var_sort.size());

                for (FunctionId f = 0; f < sig.functions().size(); ++f) {
                    const auto & fs = sig.functions()[f];
                    for (size_t i = 0; i < m.table_size(f); ++i) {
                        auto v = m.function_table(f)[i];
                        if (v == undefined)
                            continue;
                        auto args = m.function_args(f, i);
                        Constraint c{true, f, {}};
                        for (size_t a = 0; a < args.size(); ++a)
                            c.vars.push_back(_offset[fs.args[a]] + static_cast<size_t>(args[a]));
                        c.vars.push_back(_offset[fs.result] + static_cast<size_t>(v));
                        add(std::move(c));
                    }
                }
                for (RelationId r = 0; r < sig.relations().size(); ++r) {
                    const auto & rs = sig.relations()[r];
                    for (size_t i = 0; i < m.relation_size(r); ++i) {
                        if (! m.relation_table(r)[i])
                            continue;
                        auto args = m.relation_args(r, i);
                        Constraint c{false, r, {}};
                        for (size_t a = 0; a < args.size(); ++a)
                            c.vars.push_back(_offset[rs.args[a]] + static_cast<size_t>(args[a]));
                        add(std::move(c));
                    }
                }

                // constraints on a single variable only filter its domain
                for (size_t ci = 0; ci < _constraints.size() && _feasible; ++ci) {
                    auto distinct = distinct_vars(_constraints[ci]);
                    if (distinct.empty())
                        _feasible = satisfied(_constraints[ci]);
                    else if (distinct.size() == 1)
                        _feasible = filter(ci, distinct.front(), _domains);
                }
                for (const auto & d : _domains)
                    if (d.empty())
                        _feasible = false;
            }

            auto first() -> optional<SortMap>
            {
                if (! _feasible)
                    return std::nullopt;

                // independent components are solved one after another
                vector<size_t> parent(_var_sort.size());
                std::iota(parent.begin(), parent.end(), 0);
                std::function<size_t(size_t)> find = [&](size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
                for (const auto & c : _constraints)
                    for (size_t i = 1; i < c.vars.size(); ++i) {
                        auto a = find(c.vars[0]), b = find(c.vars[i]);
                        if (a != b)
                            parent[std::max(a, b)] = std::min(a, b);
                    }

                vector<vector<size_t>> components;
                vector<size_t> component_of(_var_sort.size(), SIZE_MAX);
                for (size_t v = 0; v < _var_sort.size(); ++v) {
                    auto root = find(v);
                    if (component_of[root] == SIZE_MAX) {
                        component_of[root] = components.size();
                        components.emplace_back();
                    }
                    components[component_of[root]].push_back(v);
                }

                for (const auto & order : components) {
                    bool found = false;
                    search(0, order, _domains, [&] {
                        found = true;
                        return false;
                    });
                    if (! found)
                        return std::nullopt;
                    // search leaves the component's solution in place
                    for (auto v : order)
                        _domains[v] = {_assignment[v]};
                }
                return to_sort_map();
            }

            auto all(size_t limit) -> vector<SortMap>
            {
                vector<SortMap> out;
                if (! _feasible || limit == 0)
                    return out;
                vector<size_t> order(_var_sort.size());
                std::iota(order.begin(), order.end(), 0);
                search(0, order, _domains, [&] {
                    out.push_back(to_sort_map());
                    return out.size() < limit;
                });
                return out;
            }

        private:
            struct Constraint
            {
                bool is_function;
                size_t symbol;
                vector<size_t> vars; // arguments, then the result for functions
            };

            const PartialStructure & _m;
            const PartialStructure & _n;
            vector<size_t> _offset;
            vector<SortId> _var_sort;
            vector<vector<Element>> _domains;
            vector<Element> _assignment;
            vector<Constraint> _constraints;
            vector<vector<size_t>> _var_constraints;
            bool _feasible = true;

            auto add(Constraint c) -> void
            {
                auto idx = _constraints.size();
                for (auto v : distinct_vars(c))
                    _var_constraints[v].push_back(idx);
                _constraints.push_back(std::move(c));
            }

            static auto distinct_vars(const Constraint & c) -> vector<size_t>
            {
                vector<size_t> out;
                for (auto v : c.vars)
                    if (std::find(out.begin(), out.end(), v) == out.end())
                        out.push_back(v);
                return out;
            }

            auto satisfied(const Constraint & c) const -> bool
            {
                const auto & sig = _n.signature();
                if (c.is_function) {
                    const auto & fs = sig.functions()[c.symbol];
                    size_t index = 0;
                    for (size_t a = 0; a < fs.args.size(); ++a)
                        index = index * _n.carrier_size(fs.args[a]) + static_cast<size_t>(_assignment[c.vars[a]]);
                    auto w = _n.function_table(c.symbol)[index];
                    return w != undefined && w == _assignment[c.vars.back()];
                }
                const auto & rs = sig.relations()[c.symbol];
                size_t index = 0;
                for (size_t a = 0; a < rs.args.size(); ++a)
                    index = index * _n.carrier_size(rs.args[a]) + static_cast<size_t>(_assignment[c.vars[a]]);
                return _n.relation_table(c.symbol)[index] == 1;
            }

            // Keeps the values of `u` that satisfy constraint ci, all other
            // variables of ci being assigned.
            auto filter(size_t ci, size_t u, vector<vector<Element>> & domains) -> bool
            {
                auto & dom = domains[u];
                vector<Element> kept;
                for (auto cand : dom) {
                    _assignment[u] = cand;
                    if (satisfied(_constraints[ci]))
                        kept.push_back(cand);
                }
                _assignment[u] = undefined;
                dom = std::move(kept);
                return ! dom.empty();
            }

            auto propagate(size_t x, vector<vector<Element>> & domains) -> bool
            {
                for (auto ci : _var_constraints[x]) {
                    const auto & c = _constraints[ci];
                    size_t unassigned_var = SIZE_MAX;
                    size_t count = 0;
                    for (auto v : c.vars)
                        if (_assignment[v] == undefined && v != unassigned_var) {
                            if (count == 0)
                                unassigned_var = v;
                            ++count;
                            if (count > 1)
                                break;
                        }
                    if (count == 0) {
                        if (! satisfied(c))
                            return false;
                    }
                    else if (count == 1) {
                        if (! filter(ci, unassigned_var, domains))
                            return false;
                    }
                }
                return true;
            }

            template <typename Emit>
            auto search(size_t depth, const vector<size_t> & order, const vector<vector<Element>> & domains, Emit && emit) -> bool
            {
                if (depth == order.size())
                    return emit();
                auto x = order[depth];
                for (auto v : domains[x]) {
                    _assignment[x] = v;
                    auto next = domains;
                    next[x] = {v};
                    if (propagate(x, next))
                        if (! search(depth + 1, order, next, emit))
                            return false;
                    _assignment[x] = undefined;
                }
                return true;
            }

            auto to_sort_map() const -> SortMap
            {
                SortMap out;
                for (SortId s = 0; s < _offset.size(); ++s) {
                    out.emplace_back();
                    for (size_t e = 0; e < _m.carrier_size(s); ++e)
                        out.back().push_back(_assignment[_offset[s] + e]);
                }
                return out;
            }
        };

        auto verified(Homomorphism h) -> Homomorphism
        {
            auto check = is_homomorphism(h);
            if (! check.ok)
                throw PhlError{"internal error: search produced a non-homomorphism: " + check.message};
            return h;
        }
    }

    auto hom_exists(const PartialStructure & m, const PartialStructure & n) -> bool
    {
        return Searcher{m, n, nullptr}.first().has_value();
    }

    auto find_hom(const StructurePtr & m, const StructurePtr & n) -> optional<Homomorphism>
    {
        if (auto maps = Searcher{*m, *n, nullptr}.first())
            return verified(Homomorphism{m, n, std::move(*maps)});
        return std::nullopt;
    }

    auto find_hom_within(const StructurePtr & m, const StructurePtr & n, const Domains & domains) -> optional<Homomorphism>
    {
        if (auto maps = Searcher{*m, *n, &domains}.first())
            return verified(Homomorphism{m, n, std::move(*maps)});
        return std::nullopt;
    }

    auto enumerate_homs(const StructurePtr & m, const StructurePtr & n, size_t limit) -> vector<Homomorphism>
    {
        vector<Homomorphism> out;
        for (auto & maps : Searcher{*m, *n, nullptr}.all(limit))
            out.push_back(Homomorphism{m, n, std::move(maps)});
        return out;
    }

    namespace
    {
        auto preimages(const Homomorphism & p) -> Domains
        {
            Domains pre(p.maps.size());
            for (SortId s = 0; s < p.maps.size(); ++s) {
                pre[s].resize(p.target->carrier_size(s));
                for (size_t x = 0; x < p.maps[s].size(); ++x)
                    pre[s][p.maps[s][x]].push_back(static_cast<Element>(x));
            }
            return pre;
        }
    }

    auto find_section(const Homomorphism & p) -> optional<Homomorphism>
    {
        auto section = find_hom_within(p.target, p.source, preimages(p));
        if (section)
            for (SortId s = 0; s < p.maps.size(); ++s)
                for (size_t y = 0; y < section->maps[s].size(); ++y)
                    if (p.maps[s][section->maps[s][y]] != static_cast<Element>(y))
                        throw PhlError{"internal error: section does not split p"};
        return section;
    }

    auto find_lift(const Homomorphism & p, const Homomorphism & f) -> optional<Homomorphism>
    {
        auto pre = preimages(p);
        Domains domains(f.maps.size());
        for (SortId s = 0; s < f.maps.size(); ++s)
            for (auto y : f.maps[s])
                domains[s].push_back(pre[s][y]);
        return find_hom_within(f.source, p.source, domains);
    }

    auto to_string(LocalRetractionVerdict v) -> string
    {
        switch (v) {
        case LocalRetractionVerdict::passed_up_to_probes: return "PassedUpToProbes";
        case LocalRetractionVerdict::failed_with_witness: return "FailedWithWitness";
        case LocalRetractionVerdict::exact_true: return "ExactTrue";
        case LocalRetractionVerdict::exact_false: return "ExactFalse";
        }
        return "?";
    }

    auto local_retraction_check(const Homomorphism & p, const vector<StructurePtr> & probes) -> LocalRetractionResult
    {
        for (size_t i = 0; i < probes.size(); ++i) {
            if (! (probes[i]->signature_ptr() == p.target->signature_ptr() || probes[i]->signature() == p.target->signature()))
                throw PhlError{"probe " + std::to_string(i) + " is over a different signature"};
            for (auto & f : enumerate_homs(probes[i], p.target, SIZE_MAX))
                if (! find_lift(p, f)) {
                    LocalRetractionResult r;
                    r.verdict = LocalRetractionVerdict::failed_with_witness;
                    r.probe_index = i;
                    r.witness = std::move(f);
                    r.note = "a map from probe " + std::to_string(i) + " has no lift";
                    return r;
                }
        }
        LocalRetractionResult r;
        r.note = "no counterexample among " + std::to_string(probes.size()) + " probes";
        return r;
    }

    auto has_exact_local_retraction_rule(const Theory & t) -> bool
    {
        return t.has_flag(flags::exact_surjection) || t.has_flag(flags::exact_constants);
    }

    auto local_retraction_exact(const Homomorphism & p, const Theory & t) -> LocalRetractionResult
    {
        LocalRetractionResult r;
        if (t.has_flag(flags::exact_constants)) {
            bool ok = is_surjective(p);
            r.note = ok ? "surjective" : "not surjective";
            const auto & sig = t.signature;
            for (FunctionId a = 0; a < sig->functions().size() && ok; ++a)
                for (FunctionId b = a + 1; b < sig->functions().size() && ok; ++b) {
                    const auto & fa = sig->functions()[a];
                    const auto & fb = sig->functions()[b];
                    if (! fa.args.empty() || ! fb.args.empty() || fa.result != fb.result)
                        continue;
                    auto x = p.source->value(a, {}), y = p.source->value(b, {});
                    if (x != undefined && y != undefined && x != y && p.maps[fa.result][x] == p.maps[fa.result][y]) {
                        ok = false;
                        r.note = "merges constants '" + fa.name + "' and '" + fb.name + "'";
                    }
                }
            r.verdict = ok ? LocalRetractionVerdict::exact_true : LocalRetractionVerdict::exact_false;
            return r;
        }
        if (t.has_flag(flags::exact_surjection)) {
            bool ok = is_surjective(p);
            r.note = ok ? "surjective" : "not surjective";
            r.verdict = ok ? LocalRetractionVerdict::exact_true : LocalRetractionVerdict::exact_false;
            return r;
        }
        throw PhlError{"theory '" + t.name + "' declares no exact local-retraction rule"};
    }
}
