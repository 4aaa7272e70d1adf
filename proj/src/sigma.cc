#include <phl/sigma.hh>

#include <algorithm>
#include <functional>
#include <map>

using std::optional;
using std::pair;
using std::size_t;
using std::string;
using std::vector;

namespace phl
{
    auto FinitePoset::is_partial_order() const -> bool
    {
        const auto n = size();
        for (size_t a = 0; a < n; ++a) {
            if (! leq[a][a])
                return false;
            for (size_t b = 0; b < n; ++b) {
                if (a != b && leq[a][b] && leq[b][a])
                    return false;
                if (leq[a][b])
                    for (size_t c = 0; c < n; ++c)
                        if (leq[b][c] && ! leq[a][c])
                            return false;
            }
        }
        return true;
    }

    auto FinitePoset::is_total() const -> bool
    {
        for (size_t a = 0; a < size(); ++a)
            for (size_t b = 0; b < size(); ++b)
                if (! leq[a][b] && ! leq[b][a])
                    return false;
        return true;
    }

    auto FinitePoset::covers() const -> vector<pair<size_t, size_t>>
    {
        vector<pair<size_t, size_t>> out;
        for (size_t a = 0; a < size(); ++a)
            for (size_t b = 0; b < size(); ++b) {
                if (! less(a, b))
                    continue;
                bool between = false;
                for (size_t c = 0; c < size() && ! between; ++c)
                    between = less(a, c) && less(c, b);
                if (! between)
                    out.emplace_back(a, b);
            }
        return out;
    }

    auto FinitePoset::to_json() const -> nlohmann::ordered_json
    {
        nlohmann::ordered_json j;
        j["elements"] = elements;
        auto pairs = nlohmann::ordered_json::array();
        for (size_t a = 0; a < size(); ++a)
            for (size_t b = 0; b < size(); ++b)
                if (leq[a][b])
                    pairs.push_back({a, b});
        j["leq"] = pairs;
        return j;
    }

    auto chain_poset(size_t n) -> FinitePoset
    {
        FinitePoset p;
        for (size_t i = 0; i < n; ++i)
            p.elements.push_back(std::to_string(i));
        p.leq.assign(n, vector<bool>(n, false));
        for (size_t a = 0; a < n; ++a)
            for (size_t b = a; b < n; ++b)
                p.leq[a][b] = true;
        return p;
    }

    auto antichain_poset(size_t n) -> FinitePoset
    {
        FinitePoset p;
        for (size_t i = 0; i < n; ++i)
            p.elements.push_back(std::to_string(i));
        p.leq.assign(n, vector<bool>(n, false));
        for (size_t a = 0; a < n; ++a)
            p.leq[a][a] = true;
        return p;
    }

    auto product_poset(const FinitePoset & a, const FinitePoset & b) -> FinitePoset
    {
        FinitePoset p;
        for (const auto & x : a.elements)
            for (const auto & y : b.elements)
                p.elements.push_back("(" + x + "," + y + ")");
        const auto n = p.size();
        p.leq.assign(n, vector<bool>(n, false));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                p.leq[i][j] = a.leq[i / b.size()][j / b.size()] && b.leq[i % b.size()][j % b.size()];
        return p;
    }

    auto poset_isomorphism(const FinitePoset & a, const FinitePoset & b) -> optional<vector<size_t>>
    {
        const auto n = a.size();
        if (b.size() != n)
            return std::nullopt;

        auto profile = [](const FinitePoset & p, size_t x) {
            size_t below = 0, above = 0;
            for (size_t y = 0; y < p.size(); ++y) {
                below += p.leq[y][x];
                above += p.leq[x][y];
            }
            return pair{below, above};
        };
        vector<pair<size_t, size_t>> pa(n), pb(n);
        for (size_t i = 0; i < n; ++i) {
            pa[i] = profile(a, i);
            pb[i] = profile(b, i);
        }
        {
            auto sa = pa, sb = pb;
            std::sort(sa.begin(), sa.end());
            std::sort(sb.begin(), sb.end());
            if (sa != sb)
                return std::nullopt;
        }

        vector<size_t> map(n);
        vector<bool> used(n, false);
        std::function<bool(size_t)> place = [&](size_t i) -> bool {
            if (i == n)
                return true;
            for (size_t j = 0; j < n; ++j) {
                if (used[j] || pa[i] != pb[j])
                    continue;
                bool ok = true;
                for (size_t k = 0; k < i && ok; ++k)
                    ok = a.leq[k][i] == b.leq[map[k]][j] && a.leq[i][k] == b.leq[j][map[k]];
                if (! ok)
                    continue;
                used[j] = true;
                map[i] = j;
                if (place(i + 1))
                    return true;
                used[j] = false;
            }
            return false;
        };
        if (! place(0))
            return std::nullopt;
        return map;
    }

    auto build_hom_quiver(const vector<StructurePtr> & family) -> HomQuiver
    {
        HomQuiver q;
        q.vertices = family;
        for (size_t i = 0; i < family.size(); ++i) {
            if (! (family[i]->signature_ptr() == family[0]->signature_ptr() || family[i]->signature() == family[0]->signature()))
                throw PhlError{"hom quiver over structures of different signatures"};
            q.names.push_back(family[i]->name.empty() ? std::to_string(i) : family[i]->name);
        }
        const auto n = family.size();
        q.edges.assign(n, vector<bool>(n, false));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                q.edges[i][j] = i == j || hom_exists(*family[i], *family[j]);
        return q;
    }

    auto abstract_quiver(const vector<string> & names, const vector<pair<size_t, size_t>> & edges) -> HomQuiver
    {
        HomQuiver q;
        q.names = names;
        const auto n = names.size();
        q.edges.assign(n, vector<bool>(n, false));
        for (size_t i = 0; i < n; ++i)
            q.edges[i][i] = true;
        for (auto [a, b] : edges) {
            if (a >= n || b >= n)
                throw PhlError{"quiver edge out of range"};
            q.edges[a][b] = true;
        }
        return q;
    }

    auto product_quiver(const HomQuiver & a, const HomQuiver & b) -> HomQuiver
    {
        HomQuiver q;
        for (const auto & x : a.names)
            for (const auto & y : b.names)
                q.names.push_back("(" + x + "," + y + ")");
        const auto n = q.size();
        q.edges.assign(n, vector<bool>(n, false));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                q.edges[i][j] = a.edges[i / b.size()][j / b.size()] && b.edges[i % b.size()][j % b.size()];
        return q;
    }

    namespace
    {
        // Orders components by least vertex and fills in the reachability
        // order, closing it transitively.
        auto finish_sigma(const vector<string> & names, vector<vector<size_t>> components, const std::function<bool(size_t, size_t)> & edge)
            -> SigmaPoset
        {
            for (auto & c : components)
                std::sort(c.begin(), c.end());
            std::sort(components.begin(), components.end(), [](const auto & x, const auto & y) { return x.front() < y.front(); });

            SigmaPoset s;
            s.component_of.assign(names.size(), 0);
            for (size_t c = 0; c < components.size(); ++c)
                for (auto v : components[c])
                    s.component_of[v] = c;
            const auto m = components.size();
            s.poset.leq.assign(m, vector<bool>(m, false));
            for (size_t c = 0; c < m; ++c) {
                s.poset.elements.push_back(names[components[c].front()]);
                s.poset.leq[c][c] = true;
            }
            for (size_t a = 0; a < m; ++a)
                for (size_t b = 0; b < m; ++b)
                    if (a != b && edge(a, b))
                        s.poset.leq[a][b] = true;
            for (size_t k = 0; k < m; ++k)
                for (size_t a = 0; a < m; ++a)
                    if (s.poset.leq[a][k])
                        for (size_t b = 0; b < m; ++b)
                            if (s.poset.leq[k][b])
                                s.poset.leq[a][b] = true;
            s.components = std::move(components);
            return s;
        }
    }

    auto condense_sigma(const HomQuiver & q) -> SigmaPoset
    {
        // Tarjan, iteratively
        const auto n = q.size();
        constexpr size_t unvisited = static_cast<size_t>(-1);
        vector<size_t> index(n, unvisited), low(n, 0);
        vector<bool> on_stack(n, false);
        vector<size_t> stack;
        vector<vector<size_t>> components;
        size_t counter = 0;

        for (size_t root = 0; root < n; ++root) {
            if (index[root] != unvisited)
                continue;
            vector<pair<size_t, size_t>> frames{{root, 0}};
            index[root] = low[root] = counter++;
            stack.push_back(root);
            on_stack[root] = true;
            while (! frames.empty()) {
                auto & [v, next] = frames.back();
                if (next < n) {
                    auto w = next++;
                    if (! q.edges[v][w])
                        continue;
                    if (index[w] == unvisited) {
                        index[w] = low[w] = counter++;
                        stack.push_back(w);
                        on_stack[w] = true;
                        frames.emplace_back(w, 0);
                    }
                    else if (on_stack[w])
                        low[v] = std::min(low[v], index[w]);
                    continue;
                }
                auto done = v;
                frames.pop_back();
                if (! frames.empty())
                    low[frames.back().first] = std::min(low[frames.back().first], low[done]);
                if (low[done] == index[done]) {
                    vector<size_t> comp;
                    size_t w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.push_back(w);
                    } while (w != done);
                    components.push_back(std::move(comp));
                }
            }
        }

        for (auto & comp : components)
            std::sort(comp.begin(), comp.end());
        std::sort(components.begin(), components.end(), [](const auto & x, const auto & y) { return x.front() < y.front(); });
        return finish_sigma(q.names, components, [&](size_t a, size_t b) {
            for (auto x : components[a])
                for (auto y : components[b])
                    if (q.edges[x][y])
                        return true;
            return false;
        });
    }

    auto sigma_of_family(const vector<StructurePtr> & family) -> SigmaPoset
    {
        vector<string> names;
        for (size_t i = 0; i < family.size(); ++i) {
            if (! (family[i]->signature_ptr() == family[0]->signature_ptr() || family[i]->signature() == family[0]->signature()))
                throw PhlError{"sigma poset over structures of different signatures"};
            names.push_back(family[i]->name.empty() ? std::to_string(i) : family[i]->name);
        }

        vector<vector<size_t>> components;
        for (size_t i = 0; i < family.size(); ++i) {
            bool placed = false;
            for (auto & c : components) {
                const auto & rep = *family[c.front()];
                if (hom_exists(*family[i], rep) && hom_exists(rep, *family[i])) {
                    c.push_back(i);
                    placed = true;
                    break;
                }
            }
            if (! placed)
                components.push_back({i});
        }
        return finish_sigma(names, components, [&](size_t a, size_t b) {
            return hom_exists(*family[components[a].front()], *family[components[b].front()]);
        });
    }

    auto LowerSetLattice::as_poset() const -> FinitePoset
    {
        FinitePoset p;
        const auto n = sets.size();
        for (const auto & s : sets) {
            string name = "{";
            for (size_t i = 0; i < s.generators.size(); ++i)
                name += (i ? "," : "") + base.elements[s.generators[i]];
            p.elements.push_back(name + "}");
        }
        p.leq.assign(n, vector<bool>(n, false));
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) {
                bool sub = true;
                for (size_t x = 0; x < base.size() && sub; ++x)
                    sub = ! sets[a].members[x] || sets[b].members[x];
                p.leq[a][b] = sub;
            }
        return p;
    }

    auto down_closure(const FinitePoset & p, const vector<size_t> & elements) -> vector<bool>
    {
        vector<bool> out(p.size(), false);
        for (auto e : elements)
            for (size_t x = 0; x < p.size(); ++x)
                if (p.leq[x][e])
                    out[x] = true;
        return out;
    }

    auto generators_of_lower_set(const FinitePoset & p, const vector<bool> & set) -> vector<size_t>
    {
        for (size_t x = 0; x < p.size(); ++x)
            if (set[x])
                for (size_t y = 0; y < p.size(); ++y)
                    if (p.leq[y][x] && ! set[y])
                        throw PhlError{"not a lower set: " + p.elements[y] + " lies below " + p.elements[x]};
        vector<size_t> out;
        for (size_t x = 0; x < p.size(); ++x) {
            if (! set[x])
                continue;
            bool maximal = true;
            for (size_t y = 0; y < p.size() && maximal; ++y)
                maximal = ! (set[y] && p.less(x, y));
            if (maximal)
                out.push_back(x);
        }
        return out;
    }

    auto lower_set_lattice(const FinitePoset & p, size_t guard) -> LowerSetLattice
    {
        if (! p.is_partial_order())
            throw PhlError{"lower sets of a relation that is not a partial order"};
        const auto n = p.size();

        // a linear extension: fewer elements below first
        vector<size_t> order(n);
        for (size_t i = 0; i < n; ++i)
            order[i] = i;
        auto below = [&](size_t x) {
            size_t c = 0;
            for (size_t y = 0; y < n; ++y)
                c += p.leq[y][x];
            return c;
        };
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return below(a) < below(b); });

        LowerSetLattice out;
        out.base = p;
        vector<bool> current(n, false);
        std::function<void(size_t)> walk = [&](size_t i) {
            if (i == n) {
                if (out.sets.size() >= guard)
                    throw PhlError{"more than " + std::to_string(guard) + " lower sets"};
                out.sets.push_back(LowerSet{current, generators_of_lower_set(p, current)});
                return;
            }
            auto x = order[i];
            walk(i + 1);
            bool allowed = true;
            for (size_t y = 0; y < n && allowed; ++y)
                allowed = ! p.less(y, x) || current[y];
            if (allowed) {
                current[x] = true;
                walk(i + 1);
                current[x] = false;
            }
        };
        walk(0);

        auto members = [](const LowerSet & s) {
            vector<size_t> v;
            for (size_t i = 0; i < s.members.size(); ++i)
                if (s.members[i])
                    v.push_back(i);
            return v;
        };
        std::sort(out.sets.begin(), out.sets.end(), [&](const LowerSet & a, const LowerSet & b) {
            auto ma = members(a), mb = members(b);
            if (ma.size() != mb.size())
                return ma.size() < mb.size();
            return ma < mb;
        });
        return out;
    }

    auto acc_probe(const ChainRecipe & c, size_t horizon) -> StabilizationReport
    {
        StabilizationReport r;
        r.horizon = horizon;
        vector<StructurePtr> stages;
        for (size_t n = 0; n < horizon; ++n) {
            stages.push_back(c.stage(n));
            r.stage_names.push_back(stages.back()->name.empty() ? c.name + "[" + std::to_string(n) + "]" : stages.back()->name);
        }

        vector<vector<bool>> back(horizon, vector<bool>(horizon, true));
        for (size_t m = 0; m < horizon; ++m)
            for (size_t n = 0; n < m; ++n) {
                back[m][n] = hom_exists(*stages[m], *stages[n]);
                if (! hom_exists(*stages[n], *stages[m]))
                    throw PhlError{"stage " + std::to_string(n) + " of '" + c.name + "' has no map to stage " + std::to_string(m)};
            }

        for (size_t n = 0; n + 1 < horizon; ++n)
            if (! back[n + 1][n])
                r.witnesses.emplace_back(n + 1, n);
        for (size_t m = 0; m < horizon; ++m)
            for (size_t n = 0; n + 1 < m; ++n)
                if (! back[m][n])
                    r.witnesses.emplace_back(m, n);

        for (size_t start = 0; start + 2 <= horizon; ++start) {
            bool ok = true;
            for (size_t m = start; m < horizon && ok; ++m)
                for (size_t n = start; n < m && ok; ++n)
                    ok = back[m][n];
            if (ok) {
                r.stabilized = true;
                r.at = start;
                break;
            }
        }
        return r;
    }

    auto verify_fam_theorem(const HomQuiver & a, size_t m, size_t guard) -> FamReport
    {
        FamReport report;
        auto sigma = condense_sigma(a);
        const auto n = a.size();

        vector<vector<size_t>> families;
        vector<size_t> current;
        std::function<void(size_t)> grow = [&](size_t from) {
            if (families.size() >= guard)
                throw PhlError{"more than " + std::to_string(guard) + " formal families"};
            families.push_back(current);
            if (current.size() == m)
                return;
            for (size_t v = from; v < n; ++v) {
                current.push_back(v);
                grow(v);
                current.pop_back();
            }
        };
        grow(0);
        report.families = families.size();

        auto maps_to = [&](size_t x, size_t y) { return sigma.poset.leq[sigma.component_of[x]][sigma.component_of[y]]; };
        HomQuiver fam;
        for (const auto & f : families) {
            string name = "{";
            for (size_t i = 0; i < f.size(); ++i)
                name += (i ? "," : "") + a.names[f[i]];
            fam.names.push_back(name + "}");
        }
        fam.edges.assign(families.size(), vector<bool>(families.size(), false));
        for (size_t i = 0; i < families.size(); ++i)
            for (size_t j = 0; j < families.size(); ++j)
                fam.edges[i][j] = std::all_of(families[i].begin(), families[i].end(), [&](size_t x) {
                    return std::any_of(families[j].begin(), families[j].end(), [&](size_t y) { return maps_to(x, y); });
                });
        auto fam_sigma = condense_sigma(fam);
        report.family_sigma = fam_sigma.poset;

        auto lattice = lower_set_lattice(sigma.poset);
        LowerSetLattice limited{lattice.base, {}};
        for (const auto & s : lattice.sets)
            if (s.generators.size() <= m)
                limited.sets.push_back(s);
        report.lower_sets = limited.as_poset();

        std::map<vector<bool>, size_t> position;
        for (size_t i = 0; i < limited.sets.size(); ++i)
            position.emplace(limited.sets[i].members, i);

        vector<bool> hit(limited.sets.size(), false);
        for (size_t c = 0; c < fam_sigma.size(); ++c) {
            const auto & f = families[fam_sigma.components[c].front()];
            vector<size_t> comps;
            for (auto x : f)
                comps.push_back(sigma.component_of[x]);
            auto it = position.find(down_closure(sigma.poset, comps));
            if (it == position.end()) {
                report.counterexample = "family " + fam.names[fam_sigma.components[c].front()] + " generates a lower set with more than " + std::to_string(m) + " generators";
                return report;
            }
            if (hit[it->second]) {
                report.counterexample = "two components of families generate the lower set " + report.lower_sets.elements[it->second];
                return report;
            }
            hit[it->second] = true;
            report.iso.push_back(it->second);
        }
        for (size_t i = 0; i < hit.size(); ++i)
            if (! hit[i]) {
                report.counterexample = "lower set " + report.lower_sets.elements[i] + " is generated by no family";
                return report;
            }
        for (size_t x = 0; x < fam_sigma.size(); ++x)
            for (size_t y = 0; y < fam_sigma.size(); ++y)
                if (fam_sigma.poset.leq[x][y] != report.lower_sets.leq[report.iso[x]][report.iso[y]]) {
                    report.counterexample = "order differs between " + fam_sigma.poset.elements[x] + " and " + fam_sigma.poset.elements[y];
                    return report;
                }
        report.ok = true;
        return report;
    }
}
