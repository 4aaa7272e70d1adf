#include <phl/closure.hh>

#include <algorithm>
#include <limits>
#include <random>
#include <set>
#include <tuple>

using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace phl
{
    auto ModelClass::empty(const UniversePtr & u) -> ModelClass
    {
        return ModelClass{u, vector<bool>(u->size(), false)};
    }

    auto ModelClass::all(const UniversePtr & u) -> ModelClass
    {
        return ModelClass{u, vector<bool>(u->size(), true)};
    }

    auto ModelClass::of(const UniversePtr & u, const vector<size_t> & indices) -> ModelClass
    {
        auto c = empty(u);
        for (auto i : indices) {
            if (i >= u->size())
                throw PhlError{"model index " + std::to_string(i) + " outside a universe of " + std::to_string(u->size())};
            c.members[i] = true;
        }
        return c;
    }

    auto ModelClass::count() const -> size_t
    {
        return static_cast<size_t>(std::count(members.begin(), members.end(), true));
    }

    auto ModelClass::indices() const -> vector<size_t>
    {
        vector<size_t> out;
        for (size_t i = 0; i < members.size(); ++i)
            if (members[i])
                out.push_back(i);
        return out;
    }

    auto ModelClass::subset_of(const ModelClass & other) const -> bool
    {
        for (size_t i = 0; i < members.size(); ++i)
            if (members[i] && ! other.members[i])
                return false;
        return true;
    }

    ClosureContext::ClosureContext(UniversePtr universe, optional<TheoryMorphism> rho, optional<vector<StructurePtr>> probes) :
        _universe(std::move(universe)),
        _rho(rho ? std::move(*rho) : identity_morphism(_universe->theory))
    {
        if (_rho.target->signature != _universe->theory->signature && ! (*_rho.target->signature == *_universe->theory->signature))
            throw PhlError{"morphism '" + _rho.name + "' does not target theory '" + _universe->theory->name + "'"};
        check_morphism_arities(_rho);

        if (probes)
            _probes = std::move(*probes);
        else if (! has_exact_local_retraction_rule(*_rho.source)) {
            if (_rho.source == _universe->theory)
                _probes = _universe->models;
            else
                _probes = enumerate_models(_rho.source, _universe->bound)->models;
        }

        auto n = _universe->size();
        _sc.assign(n, vector<std::int8_t>(n, -1));
        _h.assign(n, vector<std::int8_t>(n, -1));
        _r.assign(n, vector<std::int8_t>(n, -1));
        _homs.assign(n, vector<optional<vector<Homomorphism>>>(n));
    }

    auto ClosureContext::uses_exact_rule() const -> bool
    {
        return has_exact_local_retraction_rule(*_rho.source);
    }

    auto ClosureContext::homs(size_t from, size_t to) -> const vector<Homomorphism> &
    {
        auto & cell = _homs[from][to];
        if (! cell)
            cell = enumerate_homs(_universe->models[from], _universe->models[to], std::numeric_limits<size_t>::max());
        return *cell;
    }

    auto ClosureContext::sc_edge(size_t from, size_t to) -> bool
    {
        auto & e = _sc[from][to];
        if (e < 0) {
            e = 0;
            for (const auto & h : homs(from, to))
                if (is_injective(h) && is_closed_mono(h).ok) {
                    e = 1;
                    break;
                }
        }
        return e == 1;
    }

    auto ClosureContext::compute_h(size_t from, size_t to) -> bool
    {
        bool exact = uses_exact_rule();
        for (const auto & p : homs(from, to)) {
            auto q = reduct(_rho, p);
            auto result = exact ? local_retraction_exact(q, *_rho.source) : local_retraction_check(q, _probes);
            if (result.passed())
                return true;
        }
        return false;
    }

    auto ClosureContext::h_edge(size_t from, size_t to) -> bool
    {
        auto & e = _h[from][to];
        if (e < 0)
            e = compute_h(from, to) ? 1 : 0;
        return e == 1;
    }

    auto ClosureContext::iterate_edges(const ModelClass & e, bool retracts) -> ModelClass
    {
        auto out = e;
        auto n = _universe->size();
        vector<size_t> frontier = e.indices();
        while (! frontier.empty()) {
            vector<size_t> next;
            for (auto a : frontier)
                for (size_t b = 0; b < n; ++b) {
                    if (out.members[b])
                        continue;
                    bool edge;
                    if (retracts) {
                        auto & r = _r[a][b];
                        if (r < 0) {
                            r = 0;
                            for (const auto & p : homs(a, b))
                                if (find_section(p)) {
                                    r = 1;
                                    break;
                                }
                        }
                        edge = r == 1;
                    }
                    else
                        edge = h_edge(a, b);
                    if (edge) {
                        out.members[b] = true;
                        next.push_back(b);
                    }
                }
            frontier = std::move(next);
        }
        return out;
    }

    auto ClosureContext::H(const ModelClass & e) -> ModelClass
    {
        return iterate_edges(e, false);
    }

    auto ClosureContext::R(const ModelClass & e) -> ModelClass
    {
        return iterate_edges(e, true);
    }

    auto ClosureContext::Sc(const ModelClass & e) -> ModelClass
    {
        auto out = e;
        for (size_t b = 0; b < _universe->size(); ++b) {
            if (out.members[b])
                continue;
            for (auto a : e.indices())
                if (sc_edge(b, a)) {
                    out.members[b] = true;
                    break;
                }
        }
        return out;
    }

    auto ClosureContext::P(const ModelClass & e) -> ModelClass
    {
        const auto & sig = _universe->theory->signature;
        const auto n_sorts = sig->sorts().size();
        const auto k = _universe->bound;
        auto out = ModelClass::empty(_universe);

        // members with an empty carrier first, so that a carrier which will
        // end up empty is known to be safe while it is still oversized
        vector<size_t> order = e.indices();
        auto has_empty = [&](size_t i) {
            for (auto n : _universe->models[i]->carrier_sizes())
                if (n == 0)
                    return true;
            return false;
        };
        std::stable_partition(order.begin(), order.end(), has_empty);

        size_t log_k = 0;
        while ((size_t{2} << log_k) <= k)
            ++log_k;
        vector<size_t> caps;
        for (auto i : order) {
            bool small = true;
            for (auto n : _universe->models[i]->carrier_sizes())
                if (n > 1)
                    small = false;
            // a power of a structure with carriers of size at most one is
            // isomorphic to the structure itself
            caps.push_back(small ? 1 : std::max<size_t>(1, log_k));
        }

        // zero_later[j][s]: some member at position >= j has an empty carrier s
        vector<vector<bool>> zero_later(order.size() + 1, vector<bool>(n_sorts, false));
        for (size_t j = order.size(); j-- > 0;)
            for (SortId s = 0; s < n_sorts; ++s)
                zero_later[j][s] = zero_later[j + 1][s] || _universe->models[order[j]]->carrier_size(s) == 0;

        auto within = [&](const PartialStructure & m) {
            for (auto n : m.carrier_sizes())
                if (n > k)
                    return false;
            return true;
        };

        std::set<std::tuple<CanonicalKey, size_t, size_t>> visited;
        auto record = [&](const PartialStructure & m) {
            auto idx = _universe->index_of(m);
            if (! idx)
                throw PhlError{"a product of models fell outside the universe of '" + _universe->theory->name + "'"};
            out.members[*idx] = true;
        };

        auto terminal = std::make_shared<PartialStructure>(terminal_structure(sig));
        if (k >= 1)
            record(*terminal);

        auto extend = [&](auto & self, const StructurePtr & partial, size_t pos, size_t used) -> void {
            for (size_t j = pos; j < order.size(); ++j) {
                size_t c = j == pos ? used : 0;
                if (c >= caps[j])
                    continue;
                auto sizes = product_sizes(sig, {partial, _universe->models[order[j]]});
                bool prune = false;
                for (SortId s = 0; s < n_sorts; ++s)
                    if (sizes[s] > k && ! zero_later[j][s])
                        prune = true;
                if (prune)
                    continue;
                auto y = product(sig, {partial, _universe->models[order[j]]}).apex;
                if (within(*y)) {
                    if (! visited.emplace(canonical_form(*y).key, j, c + 1).second)
                        continue;
                    record(*y);
                }
                self(self, y, j, c + 1);
            }
        };
        extend(extend, terminal, 0, 0);
        return out;
    }

    auto ClosureContext::ScP(const ModelClass & e) -> ModelClass
    {
        const auto & sig = _universe->theory->signature;
        auto out = ModelClass::empty(_universe);
        auto targets = e.indices();

        for (size_t x = 0; x < _universe->size(); ++x) {
            const auto & m = *_universe->models[x];
            vector<const Homomorphism *> family;
            for (auto a : targets)
                for (const auto & h : homs(x, a))
                    family.push_back(&h);

            bool separated = true;
            for (SortId s = 0; s < sig->sorts().size() && separated; ++s) {
                auto n = static_cast<Element>(m.carrier_size(s));
                for (Element u = 0; u < n && separated; ++u)
                    for (Element v = u + 1; v < n && separated; ++v)
                        separated = std::any_of(family.begin(), family.end(), [&](const Homomorphism * h) { return h->maps[s][u] != h->maps[s][v]; });
            }

            auto image = [](const Homomorphism & h, const vector<SortId> & sorts, const Tuple & args) {
                Tuple out(args.size());
                for (size_t i = 0; i < args.size(); ++i)
                    out[i] = h.maps[sorts[i]][args[i]];
                return out;
            };

            for (FunctionId f = 0; f < sig->functions().size() && separated; ++f) {
                const auto & fs = sig->functions()[f];
                for (size_t i = 0; i < m.table_size(f) && separated; ++i) {
                    if (m.function_table(f)[i] != undefined)
                        continue;
                    auto args = m.function_args(f, i);
                    separated = std::any_of(family.begin(), family.end(), [&](const Homomorphism * h) {
                        return h->target->value(f, image(*h, fs.args, args)) == undefined;
                    });
                }
            }
            for (RelationId r = 0; r < sig->relations().size() && separated; ++r) {
                const auto & rs = sig->relations()[r];
                for (size_t i = 0; i < m.relation_size(r) && separated; ++i) {
                    if (m.relation_table(r)[i])
                        continue;
                    auto args = m.relation_args(r, i);
                    separated = std::any_of(family.begin(), family.end(), [&](const Homomorphism * h) {
                        return ! h->target->holds(r, image(*h, rs.args, args));
                    });
                }
            }
            out.members[x] = separated;
        }
        return out;
    }

    auto ClosureContext::hsp_closure(const ModelClass & e) -> HspResult
    {
        HspResult result{e};
        while (true) {
            ++result.rounds;
            auto next = H(ScP(result.closure));
            if (next == result.closure)
                break;
            result.closure = std::move(next);
        }
        result.fixpoint_P = P(result.closure) == result.closure;
        result.fixpoint_Sc = Sc(result.closure) == result.closure;
        result.fixpoint_H = H(result.closure) == result.closure;
        return result;
    }

    auto sample_classes(const UniversePtr & u, std::uint64_t seed, size_t random_classes, size_t exhaustive_up_to) -> vector<ModelClass>
    {
        vector<ModelClass> out;
        std::set<vector<bool>> seen;
        auto add = [&](ModelClass c) {
            if (seen.insert(c.members).second)
                out.push_back(std::move(c));
        };
        const auto n = u->size();

        if (n <= exhaustive_up_to && n < 63) {
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
                auto c = ModelClass::empty(u);
                for (size_t i = 0; i < n; ++i)
                    c.members[i] = (mask >> i) & 1;
                add(std::move(c));
            }
            return out;
        }

        add(ModelClass::empty(u));
        for (size_t i = 0; i < n; ++i)
            add(ModelClass::of(u, {i}));
        // raw engine bits keep the sample identical across standard libraries
        std::mt19937_64 engine{seed};
        for (size_t r = 0; r < random_classes; ++r) {
            auto c = ModelClass::empty(u);
            std::uint64_t bits = 0;
            for (size_t i = 0; i < n; ++i) {
                if (i % 64 == 0)
                    bits = engine();
                c.members[i] = (bits >> (i % 64)) & 1;
            }
            add(std::move(c));
        }
        return out;
    }

    auto operator_law_report(ClosureContext & ctx, const vector<ModelClass> & classes, std::uint64_t seed) -> LawReport
    {
        LawReport report;
        report.seed = seed;
        for (const auto & e : classes) {
            ++report.classes_checked;
            auto check = [&](const string & law, const ModelClass & lhs, const ModelClass & rhs, bool equal) {
                ++report.law_instances;
                bool ok = equal ? lhs == rhs : lhs.subset_of(rhs);
                if (! ok)
                    report.violations.push_back(LawViolation{law, e.indices(), lhs.indices(), rhs.indices()});
            };
            auto p = ctx.P(e);
            auto sc = ctx.Sc(e);
            auto h = ctx.H(e);
            check("PP = P", ctx.P(p), p, true);
            check("ScSc = Sc", ctx.Sc(sc), sc, true);
            check("HH = H", ctx.H(h), h, true);
            check("PH <= HP", ctx.P(h), ctx.H(p), false);
            check("PSc <= ScP", ctx.P(sc), ctx.ScP(e), false);
            check("ScH <= HSc", ctx.Sc(h), ctx.H(sc), false);
        }
        return report;
    }

    auto definable_class(const UniversePtr & u, const vector<Sequent> & extra) -> ModelClass
    {
        const auto & sig = *u->theory->signature;
        vector<CompiledSequent> compiled;
        for (const auto & s : extra) {
            auto report = validate_sequent(sig, s);
            if (! report.ok())
                throw PhlError{"ill-formed defining sequent: " + report.violations.front().message};
            compiled.emplace_back(sig, s);
        }
        auto out = ModelClass::empty(u);
        for (size_t i = 0; i < u->size(); ++i)
            out.members[i] = std::all_of(compiled.begin(), compiled.end(), [&](const CompiledSequent & c) { return c.valid(*u->models[i]); });
        return out;
    }

    auto check_theory_morphism_bounded(const TheoryMorphism & rho, size_t bound, const EnumerationOptions & options) -> MorphismCheck
    {
        check_morphism_arities(rho);
        MorphismCheck out;
        out.bound = bound;
        out.target_universe = enumerate_models(rho.target, bound, options);
        const auto & axioms = rho.source->axioms;
        for (size_t a = 0; a < axioms.size(); ++a) {
            auto translated = translate_along(rho, axioms[a]);
            for (size_t i = 0; i < out.target_universe->size(); ++i)
                if (auto cx = sequent_counterexample(*out.target_universe->models[i], translated)) {
                    out.countermodels.push_back(AxiomCountermodel{a, i, *cx});
                    break;
                }
        }
        return out;
    }
}
