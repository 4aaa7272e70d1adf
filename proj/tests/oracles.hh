// Brute-force reference implementations used only by the tests. None of them
// calls into the evaluator, canonical forms, hom search or closure code.
#ifndef PHL_TESTS_ORACLES_HH
#define PHL_TESTS_ORACLES_HH 1

#include <phl/structure.hh>
#include <phl/syntax.hh>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

namespace oracle
{
    using namespace phl;

    inline auto eval(const PartialStructure & m, const Context & ctx, const Term & t, const std::vector<Element> & env) -> std::optional<Element>
    {
        if (t.kind == Term::Kind::variable) {
            for (std::size_t i = 0; i < ctx.size(); ++i)
                if (ctx[i].name == t.var.name)
                    return env[i];
            return std::nullopt;
        }
        std::vector<Element> args;
        for (const auto & a : t.args) {
            auto v = eval(m, ctx, a, env);
            if (! v)
                return std::nullopt;
            args.push_back(*v);
        }
        auto v = m.value(t.function, args);
        if (v == undefined)
            return std::nullopt;
        return v;
    }

    inline auto holds(const PartialStructure & m, const Context & ctx, const Formula & f, const std::vector<Element> & env) -> bool
    {
        switch (f.kind) {
        case Formula::Kind::truth: return true;
        case Formula::Kind::conjunction: return holds(m, ctx, f.parts[0], env) && holds(m, ctx, f.parts[1], env);
        case Formula::Kind::equation: {
            auto a = eval(m, ctx, f.terms[0], env), b = eval(m, ctx, f.terms[1], env);
            return a && b && *a == *b;
        }
        case Formula::Kind::relation: {
            std::vector<Element> args;
            for (const auto & t : f.terms) {
                auto v = eval(m, ctx, t, env);
                if (! v)
                    return false;
                args.push_back(*v);
            }
            return m.holds(f.relation, args);
        }
        }
        return false;
    }

    inline auto satisfies(const PartialStructure & m, const Sequent & s) -> bool
    {
        std::vector<Element> env(s.context.size(), 0);
        std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
            if (i == env.size())
                return ! holds(m, s.context, s.premise, env) || holds(m, s.context, s.conclusion, env);
            for (std::size_t e = 0; e < m.carrier_size(s.context[i].sort); ++e) {
                env[i] = static_cast<Element>(e);
                if (! go(i + 1))
                    return false;
            }
            return true;
        };
        return go(0);
    }

    inline auto is_model(const PartialStructure & m, const Theory & t) -> bool
    {
        return std::all_of(t.axioms.begin(), t.axioms.end(), [&](const auto & s) { return oracle::satisfies(m, s); });
    }

    /// Applies per-sort permutations and compares every table.
    inline auto iso_under(const PartialStructure & a, const PartialStructure & b, const SortMap & perm) -> bool
    {
        const auto & sig = a.signature();
        auto img = [&](SortId s, Element e) { return e == undefined ? undefined : perm[s][e]; };
        for (FunctionId f = 0; f < sig.functions().size(); ++f) {
            const auto & fs = sig.functions()[f];
            for (std::size_t i = 0; i < a.table_size(f); ++i) {
                auto args = a.function_args(f, i);
                for (std::size_t k = 0; k < args.size(); ++k)
                    args[k] = perm[fs.args[k]][args[k]];
                if (b.value(f, args) != img(fs.result, a.function_table(f)[i]))
                    return false;
            }
        }
        for (RelationId r = 0; r < sig.relations().size(); ++r) {
            const auto & rs = sig.relations()[r];
            for (std::size_t i = 0; i < a.relation_size(r); ++i) {
                auto args = a.relation_args(r, i);
                for (std::size_t k = 0; k < args.size(); ++k)
                    args[k] = perm[rs.args[k]][args[k]];
                if (b.holds(r, args) != static_cast<bool>(a.relation_table(r)[i]))
                    return false;
            }
        }
        return true;
    }

    /// Tries every tuple of per-sort permutations.
    inline auto isomorphic(const PartialStructure & a, const PartialStructure & b) -> bool
    {
        if (a.carrier_sizes() != b.carrier_sizes())
            return false;
        const auto n = a.signature().sorts().size();
        SortMap perm(n);
        for (SortId s = 0; s < n; ++s) {
            perm[s].resize(a.carrier_size(s));
            std::iota(perm[s].begin(), perm[s].end(), 0);
        }
        std::function<bool(SortId)> go = [&](SortId s) -> bool {
            if (s == n)
                return iso_under(a, b, perm);
            std::sort(perm[s].begin(), perm[s].end());
            do {
                if (go(s + 1))
                    return true;
            } while (std::next_permutation(perm[s].begin(), perm[s].end()));
            return false;
        };
        return go(0);
    }

    /// Every table assignment for every size vector, filtered by the theory
    /// and deduplicated by explicit isomorphism search.
    inline auto enumerate_models(const TheoryPtr & t, std::size_t bound) -> std::vector<PartialStructure>
    {
        const auto & sig = *t->signature;
        const auto sorts = sig.sorts().size();
        std::vector<PartialStructure> reps;
        std::vector<std::size_t> sizes(sorts, 0);
        std::function<void(std::size_t)> over_sizes = [&](std::size_t s) {
            if (s < sorts) {
                for (std::size_t k = 0; k <= bound; ++k) {
                    sizes[s] = k;
                    over_sizes(s + 1);
                }
                return;
            }
            auto m = PartialStructure::with_sizes(t->signature, sizes);
            // cells: every function entry, then every relation entry
            std::vector<std::pair<bool, std::pair<std::size_t, std::size_t>>> cells;
            for (FunctionId f = 0; f < sig.functions().size(); ++f)
                for (std::size_t i = 0; i < m.table_size(f); ++i)
                    cells.push_back({true, {f, i}});
            for (RelationId r = 0; r < sig.relations().size(); ++r)
                for (std::size_t i = 0; i < m.relation_size(r); ++i)
                    cells.push_back({false, {r, i}});
            std::function<void(std::size_t)> fill = [&](std::size_t c) {
                if (c == cells.size()) {
                    if (! oracle::is_model(m, *t))
                        return;
                    for (const auto & r : reps)
                        if (oracle::isomorphic(r, m))
                            return;
                    reps.push_back(m);
                    return;
                }
                auto [is_fn, at] = cells[c];
                auto [sym, i] = at;
                if (is_fn) {
                    auto range = static_cast<Element>(m.carrier_size(sig.functions()[sym].result));
                    for (Element v = undefined; v < range; ++v) {
                        m.function_table(sym)[i] = v;
                        fill(c + 1);
                    }
                    m.function_table(sym)[i] = undefined;
                }
                else {
                    for (std::uint8_t v : {0, 1}) {
                        m.relation_table(sym)[i] = v;
                        fill(c + 1);
                    }
                    m.relation_table(sym)[i] = 0;
                }
            };
            fill(0);
        };
        over_sizes(0);
        return reps;
    }

    /// Is there a structure-preserving map a -> b? Tries every assignment.
    inline auto hom_exists(const PartialStructure & a, const PartialStructure & b) -> bool
    {
        const auto & sig = a.signature();
        const auto n = sig.sorts().size();
        SortMap map(n);
        for (SortId s = 0; s < n; ++s) {
            if (a.carrier_size(s) > 0 && b.carrier_size(s) == 0)
                return false;
            map[s].assign(a.carrier_size(s), 0);
        }
        auto preserves = [&] {
            for (FunctionId f = 0; f < sig.functions().size(); ++f) {
                const auto & fs = sig.functions()[f];
                for (std::size_t i = 0; i < a.table_size(f); ++i) {
                    auto v = a.function_table(f)[i];
                    if (v == undefined)
                        continue;
                    auto args = a.function_args(f, i);
                    for (std::size_t k = 0; k < args.size(); ++k)
                        args[k] = map[fs.args[k]][args[k]];
                    if (b.value(f, args) != map[fs.result][v])
                        return false;
                }
            }
            for (RelationId r = 0; r < sig.relations().size(); ++r) {
                const auto & rs = sig.relations()[r];
                for (std::size_t i = 0; i < a.relation_size(r); ++i) {
                    if (! a.relation_table(r)[i])
                        continue;
                    auto args = a.relation_args(r, i);
                    for (std::size_t k = 0; k < args.size(); ++k)
                        args[k] = map[rs.args[k]][args[k]];
                    if (! b.holds(r, args))
                        return false;
                }
            }
            return true;
        };
        std::function<bool(SortId, std::size_t)> go = [&](SortId s, std::size_t e) -> bool {
            if (s == n)
                return preserves();
            if (e == map[s].size())
                return go(s + 1, 0);
            for (std::size_t v = 0; v < b.carrier_size(s); ++v) {
                map[s][e] = static_cast<Element>(v);
                if (go(s, e + 1))
                    return true;
            }
            return false;
        };
        return go(0, 0);
    }

    /// Mutual-reachability classes of a relation given as a matrix, via
    /// Floyd-Warshall.
    inline auto count_components(std::vector<std::vector<bool>> reach) -> std::size_t
    {
        const auto n = reach.size();
        for (std::size_t i = 0; i < n; ++i)
            reach[i][i] = true;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[i][k] && reach[k][j])
                        reach[i][j] = true;
        std::vector<bool> seen(n);
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (seen[i])
                continue;
            ++count;
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][j] && reach[j][i])
                    seen[j] = true;
        }
        return count;
    }

    /// Subsets containing the identity and closed under the product.
    inline auto count_subgroups(const std::vector<std::vector<std::size_t>> & table, std::size_t identity) -> std::size_t
    {
        const auto n = table.size();
        std::size_t count = 0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            if (! (mask >> identity & 1))
                continue;
            bool closed = true;
            for (std::size_t a = 0; a < n && closed; ++a)
                for (std::size_t b = 0; b < n && closed; ++b)
                    if ((mask >> a & 1) && (mask >> b & 1) && ! (mask >> table[a][b] & 1))
                        closed = false;
            count += closed;
        }
        return count;
    }

    inline auto bell(std::size_t n) -> std::size_t
    {
        // Bell triangle
        std::vector<std::size_t> row{1};
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<std::size_t> next{row.back()};
            for (auto x : row)
                next.push_back(next.back() + x);
            row = next;
        }
        return row.back();
    }
}

#endif
