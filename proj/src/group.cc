#include <phl/group.hh>

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

using std::size_t;
using std::string;
using std::vector;

namespace phl
{
    FiniteGroup::FiniteGroup(vector<string> elements, vector<vector<size_t>> table, size_t max_order) :
        _elements(std::move(elements)),
        _table(std::move(table))
    {
        const auto n = _elements.size();
        if (n == 0)
            throw PhlError{"a group needs at least one element"};
        if (n > std::min<size_t>(max_order, 64))
            throw PhlError{"group of order " + std::to_string(n) + " exceeds the bound " + std::to_string(std::min<size_t>(max_order, 64))};
        if (_table.size() != n)
            throw PhlError{"multiplication table has " + std::to_string(_table.size()) + " rows for " + std::to_string(n) + " elements"};
        for (const auto & row : _table) {
            if (row.size() != n)
                throw PhlError{"multiplication table row of the wrong length"};
            for (auto v : row)
                if (v >= n)
                    throw PhlError{"multiplication table entry out of range"};
        }
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b)
                for (size_t c = 0; c < n; ++c)
                    if (_table[_table[a][b]][c] != _table[a][_table[b][c]])
                        throw PhlError{"multiplication is not associative at (" + _elements[a] + ", " + _elements[b] + ", " + _elements[c] + ")"};

        bool found = false;
        for (size_t e = 0; e < n && ! found; ++e) {
            bool unit = true;
            for (size_t a = 0; a < n && unit; ++a)
                unit = _table[e][a] == a && _table[a][e] == a;
            if (unit) {
                _identity = e;
                found = true;
            }
        }
        if (! found)
            throw PhlError{"multiplication table has no identity"};

        _inverse.assign(n, n);
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b)
                if (_table[a][b] == _identity && _table[b][a] == _identity)
                    _inverse[a] = b;
        for (size_t a = 0; a < n; ++a)
            if (_inverse[a] == n)
                throw PhlError{"element " + _elements[a] + " has no inverse"};
    }

    auto FiniteGroup::from_json(const nlohmann::json & j, size_t max_order) -> FiniteGroup
    {
        if (! j.is_object() || ! j.contains("elements") || ! j.contains("table"))
            throw PhlError{"group JSON needs \"elements\" and \"table\""};
        vector<string> elements;
        for (const auto & e : j.at("elements"))
            elements.push_back(e.is_string() ? e.get<string>() : e.dump());
        auto resolve = [&](const nlohmann::json & v) -> size_t {
            if (v.is_number_unsigned() || v.is_number_integer()) {
                auto i = v.get<long long>();
                if (i < 0 || static_cast<size_t>(i) >= elements.size())
                    throw PhlError{"group table index " + std::to_string(i) + " out of range"};
                return static_cast<size_t>(i);
            }
            auto label = v.is_string() ? v.get<string>() : v.dump();
            auto it = std::find(elements.begin(), elements.end(), label);
            if (it == elements.end())
                throw PhlError{"group table mentions unknown element '" + label + "'"};
            return static_cast<size_t>(it - elements.begin());
        };
        vector<vector<size_t>> table;
        for (const auto & row : j.at("table")) {
            table.emplace_back();
            for (const auto & v : row)
                table.back().push_back(resolve(v));
        }
        return FiniteGroup{std::move(elements), std::move(table), max_order};
    }

    auto FiniteGroup::cyclic(size_t n) -> FiniteGroup
    {
        vector<string> elements;
        vector<vector<size_t>> table(n, vector<size_t>(n));
        for (size_t a = 0; a < n; ++a) {
            elements.push_back(std::to_string(a));
            for (size_t b = 0; b < n; ++b)
                table[a][b] = (a + b) % n;
        }
        return FiniteGroup{std::move(elements), std::move(table), 64};
    }

    auto FiniteGroup::symmetric3() -> FiniteGroup
    {
        vector<vector<size_t>> perms;
        vector<size_t> p{0, 1, 2};
        do
            perms.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));

        vector<string> elements;
        for (const auto & q : perms)
            elements.push_back(std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]));
        vector<vector<size_t>> table(6, vector<size_t>(6));
        for (size_t a = 0; a < 6; ++a)
            for (size_t b = 0; b < 6; ++b) {
                // (ab)(i) = a(b(i))
                vector<size_t> c(3);
                for (size_t i = 0; i < 3; ++i)
                    c[i] = perms[a][perms[b][i]];
                table[a][b] = static_cast<size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
            }
        return FiniteGroup{std::move(elements), std::move(table), 64};
    }

    namespace
    {
        auto bit(size_t i) -> Subgroup { return Subgroup{1} << i; }

        auto closure(const FiniteGroup & g, Subgroup s) -> Subgroup
        {
            s |= bit(g.identity());
            while (true) {
                auto next = s;
                for (size_t a = 0; a < g.order(); ++a)
                    if (s & bit(a))
                        for (size_t b = 0; b < g.order(); ++b)
                            if (s & bit(b))
                                next |= bit(g.mul(a, b));
                if (next == s)
                    return s;
                s = next;
            }
        }

        auto conjugate(const FiniteGroup & g, size_t x, Subgroup h) -> Subgroup
        {
            Subgroup out = 0;
            for (size_t a = 0; a < g.order(); ++a)
                if (h & bit(a))
                    out |= bit(g.mul(g.mul(x, a), g.inverse(x)));
            return out;
        }

        auto by_size(const vector<Subgroup> & v) -> vector<Subgroup>
        {
            auto out = v;
            std::sort(out.begin(), out.end(), [](Subgroup a, Subgroup b) {
                auto pa = std::popcount(a), pb = std::popcount(b);
                return pa != pb ? pa < pb : a < b;
            });
            return out;
        }
    }

    auto subgroups(const FiniteGroup & g) -> vector<Subgroup>
    {
        std::set<Subgroup> found{closure(g, 0)};
        vector<Subgroup> frontier{*found.begin()};
        while (! frontier.empty()) {
            vector<Subgroup> next;
            for (auto h : frontier)
                for (size_t a = 0; a < g.order(); ++a)
                    if (! (h & bit(a))) {
                        auto k = closure(g, h | bit(a));
                        if (found.insert(k).second)
                            next.push_back(k);
                    }
            frontier = std::move(next);
        }
        return by_size(vector<Subgroup>(found.begin(), found.end()));
    }

    auto subgroup_name(const FiniteGroup & g, Subgroup h) -> string
    {
        string out = "{";
        bool first = true;
        for (size_t a = 0; a < g.order(); ++a)
            if (h & bit(a)) {
                out += (first ? "" : ",") + g.elements()[a];
                first = false;
            }
        return out + "}";
    }

    auto subgroup_category(const FiniteGroup & g) -> HomQuiver
    {
        auto subs = subgroups(g);
        vector<string> names;
        vector<std::pair<size_t, size_t>> edges;
        for (auto h : subs)
            names.push_back(subgroup_name(g, h));
        for (size_t i = 0; i < subs.size(); ++i)
            for (size_t j = 0; j < subs.size(); ++j)
                for (size_t x = 0; x < g.order(); ++x) {
                    auto c = conjugate(g, x, subs[i]);
                    if ((c & subs[j]) == c) {
                        edges.emplace_back(i, j);
                        break;
                    }
                }
        return abstract_quiver(names, edges);
    }

    auto gset_theory(const FiniteGroup & g) -> TheoryPtr
    {
        auto sig = std::make_shared<Signature>();
        auto s = sig->add_sort("X");
        for (size_t a = 0; a < g.order(); ++a)
            sig->add_function("act" + std::to_string(a), {s}, s);

        auto t = std::make_shared<Theory>();
        t->name = "gset";
        auto x = Term::make_var("x", s);
        auto act = [&](size_t a, Term arg) { return Term::make_apply(static_cast<FunctionId>(a), {std::move(arg)}); };
        auto axiom = [&](Term lhs, Term rhs) {
            t->axioms.push_back(Sequent{{Variable{"x", s}}, Formula::make_truth(), Formula::make_equation(std::move(lhs), std::move(rhs))});
        };
        for (size_t a = 0; a < g.order(); ++a)
            axiom(act(a, x), act(a, x));
        axiom(act(g.identity(), x), x);
        for (size_t a = 0; a < g.order(); ++a)
            for (size_t b = 0; b < g.order(); ++b)
                axiom(act(a, act(b, x)), act(g.mul(a, b), x));
        t->signature = sig;
        return t;
    }

    namespace
    {
        struct Orbit
        {
            Subgroup h;
            vector<Subgroup> cosets;
            vector<vector<size_t>> action; // action[a][coset]
        };

        auto make_orbit(const FiniteGroup & g, Subgroup h) -> Orbit
        {
            Orbit o{h, {}, {}};
            for (size_t a = 0; a < g.order(); ++a) {
                Subgroup coset = 0;
                for (size_t b = 0; b < g.order(); ++b)
                    if (h & bit(b))
                        coset |= bit(g.mul(a, b));
                if (std::find(o.cosets.begin(), o.cosets.end(), coset) == o.cosets.end())
                    o.cosets.push_back(coset);
            }
            std::sort(o.cosets.begin(), o.cosets.end(), [](Subgroup x, Subgroup y) { return std::countr_zero(x) < std::countr_zero(y); });
            o.action.assign(g.order(), vector<size_t>(o.cosets.size()));
            for (size_t a = 0; a < g.order(); ++a)
                for (size_t c = 0; c < o.cosets.size(); ++c) {
                    auto rep = static_cast<size_t>(std::countr_zero(o.cosets[c]));
                    auto image = g.mul(a, rep);
                    for (size_t d = 0; d < o.cosets.size(); ++d)
                        if (o.cosets[d] & bit(image))
                            o.action[a][c] = d;
                }
            return o;
        }

        auto build(const FiniteGroup & g, const TheoryPtr & theory, const vector<const Orbit *> & orbits) -> StructurePtr
        {
            vector<string> labels;
            vector<size_t> offset;
            string name;
            for (size_t i = 0; i < orbits.size(); ++i) {
                offset.push_back(labels.size());
                for (size_t c = 0; c < orbits[i]->cosets.size(); ++c)
                    labels.push_back(std::to_string(i) + "." + std::to_string(c));
                name += (i ? " + G/" : "G/") + subgroup_name(g, orbits[i]->h);
            }
            auto m = std::make_shared<PartialStructure>(theory->signature, vector<vector<string>>{labels});
            for (size_t i = 0; i < orbits.size(); ++i)
                for (size_t a = 0; a < g.order(); ++a)
                    for (size_t c = 0; c < orbits[i]->cosets.size(); ++c)
                        m->set_value(static_cast<FunctionId>(a), {static_cast<Element>(offset[i] + c)}, static_cast<Element>(offset[i] + orbits[i]->action[a][c]));
            m->name = orbits.empty() ? "empty" : name;
            return m;
        }
    }

    auto coset_gset(const FiniteGroup & g, const TheoryPtr & theory, Subgroup h) -> StructurePtr
    {
        auto o = make_orbit(g, h);
        return build(g, theory, {&o});
    }

    auto enumerate_gsets(const FiniteGroup & g, const TheoryPtr & theory, size_t bound) -> vector<StructurePtr>
    {
        // one subgroup per conjugacy class
        vector<Orbit> kinds;
        std::set<Subgroup> covered;
        for (auto h : subgroups(g)) {
            if (covered.count(h))
                continue;
            for (size_t x = 0; x < g.order(); ++x)
                covered.insert(conjugate(g, x, h));
            kinds.push_back(make_orbit(g, h));
        }

        // orbit decompositions are unique, so distinct multisets of orbit
        // kinds give pairwise non-isomorphic G-sets
        vector<vector<const Orbit *>> found;
        vector<const Orbit *> current;
        std::function<void(size_t, size_t)> grow = [&](size_t from, size_t used) {
            found.push_back(current);
            for (size_t k = from; k < kinds.size(); ++k)
                if (used + kinds[k].cosets.size() <= bound) {
                    current.push_back(&kinds[k]);
                    grow(k, used + kinds[k].cosets.size());
                    current.pop_back();
                }
        };
        grow(0, 0);

        auto total = [](const vector<const Orbit *> & v) {
            size_t n = 0;
            for (auto o : v)
                n += o->cosets.size();
            return n;
        };
        std::stable_sort(found.begin(), found.end(), [&](const auto & a, const auto & b) { return total(a) < total(b); });

        vector<StructurePtr> out;
        for (const auto & v : found)
            out.push_back(build(g, theory, v));
        return out;
    }

    auto gset_sigma_check(const FiniteGroup & g, size_t bound) -> GsetReport
    {
        GsetReport r;
        auto sub_sigma = condense_sigma(subgroup_category(g));
        r.required_bound = g.order() * sub_sigma.size();
        r.lattice = lower_set_lattice(sub_sigma.poset).as_poset();
        if (bound < r.required_bound) {
            r.message = "bound " + std::to_string(bound) + " is below |G| times the number of subgroup components (" + std::to_string(r.required_bound) + ")";
            return r;
        }

        auto theory = gset_theory(g);
        auto family = enumerate_gsets(g, theory, bound);
        r.models = family.size();
        r.gset_sigma = sigma_of_family(family).poset;
        if (poset_isomorphism(r.gset_sigma, r.lattice)) {
            r.ok = true;
            r.message = "isomorphic, " + std::to_string(r.gset_sigma.size()) + " elements";
        }
        else
            r.message = "sigma of G-sets has " + std::to_string(r.gset_sigma.size()) + " elements, the lower-set lattice " + std::to_string(r.lattice.size());
        return r;
    }
}
