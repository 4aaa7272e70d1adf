#include <phl/repro.hh>

#include <phl/closure.hh>
#include <phl/enumerate.hh>
#include <phl/group.hh>
#include <phl/homsearch.hh>
#include <phl/sigma.hh>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <sstream>
#include <thread>

using nlohmann::ordered_json;
using std::size_t;
using std::string;
using std::vector;

namespace phl
{
    namespace
    {
        auto literature(string note) -> Provenance
        {
            return {"literature", std::move(note)};
        }

        auto derived(string note) -> Provenance
        {
            return {"derived", std::move(note)};
        }

        auto outcome(ordered_json computed, ordered_json expected, string details = "", ordered_json evidence = nullptr) -> TargetOutcome
        {
            bool match = computed == expected;
            return {std::move(computed), std::move(expected), match, std::move(details), std::move(evidence)};
        }

        auto sigma_target(string name, string theory, size_t bound, size_t expected, Provenance p, string bound_note) -> ReproductionTarget
        {
            return {std::move(name), "strongly connected components among models of " + theory + " with carriers of size at most "
                    + std::to_string(bound),
                {"sigma"}, std::move(p), bound, std::move(bound_note), [theory, bound, expected](std::uint64_t) {
                    auto u = enumerate_models(corpus_theory(theory), bound);
                    auto s = sigma_of_family(u->models);
                    ordered_json reps = ordered_json::array();
                    for (const auto & c : s.components)
                        reps.push_back(describe(*u->models[c.front()]));
                    return outcome(s.size(), expected, std::to_string(u->size()) + " models", ordered_json{{"representatives", reps}});
                }};
        }

        // Pairs (n, m) with m < n whose stage n has no map to stage m.
        auto missing_maps(const std::function<StructurePtr(size_t)> & stage, size_t lo, size_t hi, size_t m_max) -> std::pair<ordered_json, ordered_json>
        {
            size_t pairs = 0, missing = 0;
            ordered_json witnesses = ordered_json::array();
            for (size_t n = lo; n <= hi; ++n)
                for (size_t m = lo; m < n && m <= m_max; ++m) {
                    ++pairs;
                    auto a = stage(n), b = stage(m);
                    if (! hom_exists(*a, *b)) {
                        ++missing;
                        witnesses.push_back({a->name, b->name});
                    }
                }
            return {ordered_json{{"pairs", pairs}, {"without_map", missing}}, ordered_json{{"no_map", witnesses}}};
        }

        auto nonacc_target(string name, string description, size_t bound, std::function<StructurePtr(size_t)> stage, size_t lo, size_t hi,
            size_t m_max, size_t expected_pairs) -> ReproductionTarget
        {
            return {std::move(name), std::move(description), {"acc"}, literature("no map from a later stage to an earlier one"), bound,
                "the stages are fixed finite structures", [=](std::uint64_t) {
                    auto [computed, evidence] = missing_maps(stage, lo, hi, m_max);
                    return outcome(computed, ordered_json{{"pairs", expected_pairs}, {"without_map", expected_pairs}}, "", evidence);
                }};
        }

        auto acc_target(string chain, size_t horizon, bool stabilizes) -> ReproductionTarget
        {
            return {"acc-" + chain + "-h" + std::to_string(horizon), "stabilization probe of the chain " + chain, {"acc"},
                stabilizes ? derived("stages are strongly connected") : literature("chain does not stabilize"), horizon,
                "stages 0 .. horizon-1 are inspected; a verdict only covers that window", [chain, horizon, stabilizes](std::uint64_t) {
                    auto r = acc_probe(corpus_chain(chain), horizon);
                    string computed = r.stabilized ? "Stabilized" : "NoStabilization";
                    ordered_json evidence = nullptr;
                    string details;
                    if (r.stabilized)
                        details = "from stage " + std::to_string(r.at);
                    else {
                        details = std::to_string(r.witnesses.size()) + " non-returning pairs";
                        auto [m, n] = r.witnesses.front();
                        evidence = {{"witness", {r.stage_names[m], r.stage_names[n]}}};
                    }
                    return outcome(computed, stabilizes ? "Stabilized" : "NoStabilization", details, evidence);
                }};
        }

        auto fam_target(string name, HomQuiver q, size_t m, size_t expected_sigma) -> ReproductionTarget
        {
            return {"fam-" + name + "-m" + std::to_string(m), "formal families against bounded lower sets, quiver " + name, {"fam"},
                literature("families of size at most m match lower sets with at most m generators"), m,
                "families and lower sets are both truncated at m members", [q = std::move(q), m, expected_sigma](std::uint64_t) {
                    auto r = verify_fam_theorem(q, m);
                    ordered_json computed{{"isomorphic", r.ok}, {"components", r.family_sigma.size()}};
                    ordered_json expected{{"isomorphic", true}, {"components", expected_sigma}};
                    return outcome(computed, expected, r.ok ? std::to_string(r.families) + " families" : r.counterexample);
                }};
        }

        auto gset_target(string name, std::function<FiniteGroup()> make, size_t bound, size_t subgroups_expected, size_t lattice_expected)
            -> ReproductionTarget
        {
            return {"gset-" + name + "-k" + std::to_string(bound), "G-set sigma against lower sets of subgroup sigma, G = " + name, {"gset"},
                literature("G-set sigma is the lower-set lattice of the subgroup sigma"), bound,
                "|G| times the number of subgroup components: every lower set is generated by a sum of one orbit per generator",
                [make = std::move(make), bound, subgroups_expected, lattice_expected](std::uint64_t) {
                    auto g = make();
                    auto r = gset_sigma_check(g, bound);
                    ordered_json computed{{"subgroups", subgroups(g).size()}, {"isomorphic", r.ok}, {"gset_sigma", r.gset_sigma.size()},
                        {"lattice", r.lattice.size()}};
                    ordered_json expected{
                        {"subgroups", subgroups_expected}, {"isomorphic", true}, {"gset_sigma", lattice_expected}, {"lattice", lattice_expected}};
                    return outcome(computed, expected, std::to_string(r.models) + " G-sets; " + r.message);
                }};
        }

        auto closure_target(string theory, size_t bound) -> ReproductionTarget
        {
            return {"closure-laws-" + theory + "-k" + std::to_string(bound), "operator laws and hsp fixpoints on sampled classes of " + theory,
                {"closure"}, derived("idempotence and interchange inclusions"), bound, "laws are checked inside the bounded universe",
                [theory, bound](std::uint64_t seed) {
                    auto u = enumerate_models(corpus_theory(theory), bound);
                    ClosureContext ctx(u);
                    auto classes = sample_classes(u, seed, 32);
                    auto report = operator_law_report(ctx, classes, seed);
                    size_t verified = 0;
                    for (const auto & c : classes)
                        if (ctx.hsp_closure(c).verified())
                            ++verified;
                    ordered_json computed{{"violations", report.violations.size()}, {"hsp_unverified", classes.size() - verified}};
                    ordered_json expected{{"violations", 0}, {"hsp_unverified", 0}};
                    string details = std::to_string(report.classes_checked) + " classes, " + std::to_string(report.law_instances) + " law instances";
                    if (! report.ok())
                        details += "; first violation: " + report.violations.front().law;
                    return outcome(computed, expected, details);
                }};
        }

        auto build_targets() -> vector<ReproductionTarget>
        {
            vector<ReproductionTarget> ts;
            auto lit = [](string note) { return literature(std::move(note)); };
            ts.push_back(sigma_target("set-components", "set", 2, 2, lit("empty and nonempty"), "0 and 1 represent both components"));
            ts.push_back(sigma_target("pos-components", "pos", 2, 2, lit("empty and nonempty"), "every nonempty poset maps to and from 1"));
            ts.push_back(sigma_target("arrow-components", "arrow", 1, 3, lit("three components"), "each component has a representative of size <= 1 per sort"));
            ts.push_back(sigma_target("cospan-components", "cospan", 2, 6, lit("six components"), "S_0 .. S_5 have carriers of size <= 2"));
            ts.push_back(sigma_target("urel-components", "urel", 1, 3, lit("three components"), "empty, a point outside P, a point in P"));
            ts.push_back(sigma_target("per-components", "per", 2, 3, lit("three components"), "empty, a point outside R, a point in R"));
            ts.push_back(sigma_target("idem-components", "idem", 2, 2, lit("empty and nonempty"), "every nonempty model has a fixed point"));
            ts.push_back(sigma_target("preord-components", "preord", 2, 2, lit("empty and nonempty"), "every nonempty preorder maps to and from 1"));
            ts.push_back(sigma_target("erel-components", "erel", 2, 2, lit("empty and nonempty"), "every nonempty model maps to and from 1"));
            const size_t bell[] = {1, 2, 5, 15};
            for (size_t n = 1; n <= 4; ++n)
                ts.push_back(sigma_target("nset-bell-" + std::to_string(n), "n-const(" + std::to_string(n) + ")", n, bell[n - 1],
                    lit("Bell number"), "each partition of the constants is realized on at most n elements"));

            for (size_t k : {2, 3})
                ts.push_back({"set-omega-chain-k" + std::to_string(k), "sigma of set-omega(" + std::to_string(k) + ") at bound 1", {"sigma"},
                    lit("total order U_0 > ... > U_k > U_omega"), 1, "each U_alpha has carriers of size <= 1", [k](std::uint64_t) {
                        auto u = enumerate_models(corpus_theory("set-omega(" + std::to_string(k) + ")"), 1);
                        auto s = sigma_of_family(u->models);
                        ordered_json computed{{"components", s.size()}, {"total", s.poset.is_total()}};
                        ordered_json expected{{"components", k + 2}, {"total", true}};
                        return outcome(computed, expected);
                    }});

            ts.push_back(nonacc_target("nonacc-lattice-M", "no map M_n -> M_m for 2 <= m < n <= 5", 5, [](size_t n) { return lattice_M(n); }, 2, 5, 5, 6));
            ts.push_back(nonacc_target("nonacc-end-A", "no map A_n -> A_m for 1 <= m < n <= 3", 3, [](size_t n) { return end_A(n); }, 1, 3, 3, 3));
            ts.push_back(nonacc_target("nonacc-presheaf-L", "no map L_n -> L_m for m < n <= 5, m <= 4, base 0 .. 4", 5,
                [](size_t n) { return presheaf_L(n, 4); }, 0, 5, 4, 15));
            for (const auto * chain : {"lattice-M", "end-A", "presheaf-L"})
                for (size_t h : {4, 5})
                    ts.push_back(acc_target(chain, h, false));
            ts.push_back(acc_target("set-growing", 5, true));
            ts.push_back(acc_target("pos-constant", 4, true));

            ts.push_back({"remark-locret-K2-k2", "class cut out by (u0(x) = e & u1(x) = e & u2(x) = e) |- x = e", {"remark"},
                lit("closed under P, Sc, R; the chain colimit escapes"), 2, "the colimit has two elements", [](std::uint64_t) {
                    auto u = enumerate_models(corpus_theory("remark-locret(2)"), 2);
                    auto seq = remark_locret_defining_sequent(2);
                    auto e = definable_class(u, {seq});
                    ClosureContext ctx(u);
                    auto colim = chain_colimit(corpus_chain("remark-A"), 6);
                    bool stages_in = true;
                    for (size_t n = 0; n <= 2; ++n)
                        stages_in = stages_in && sequent_valid(*remark_A(n, 2), seq);
                    ordered_json computed{{"closed_P", ctx.P(e) == e}, {"closed_Sc", ctx.Sc(e) == e}, {"closed_R", ctx.R(e) == e},
                        {"stages_in_E", stages_in}, {"colimit_in_E", sequent_valid(*colim.colimit, seq)}};
                    ordered_json expected{{"closed_P", true}, {"closed_Sc", true}, {"closed_R", true}, {"stages_in_E", true}, {"colimit_in_E", false}};
                    return outcome(computed, expected, std::to_string(e.count()) + " of " + std::to_string(u->size()) + " models in E",
                        ordered_json{{"colimit", describe(*colim.colimit)}});
                }});
            ts.push_back({"remark-constants-K3-k3", "the surjection merging c0 with the other constants", {"remark"},
                lit("a surjection that is not a local retraction"), 3, "the split model has two elements", [](std::uint64_t) {
                    auto h = find_hom(remark_constants_split(3), remark_constants_point(3));
                    if (! h)
                        throw PhlError{"no map to the point"};
                    auto t = corpus_theory("remark-constants(3)");
                    auto exact = local_retraction_exact(*h, *t);
                    auto probe = local_retraction_check(*h, enumerate_models(t, 3)->models);
                    ordered_json computed{{"verdict", to_string(exact.verdict)}, {"surjective", is_surjective(*h)}, {"probe", to_string(probe.verdict)}};
                    ordered_json expected{{"verdict", "ExactFalse"}, {"surjective", true}, {"probe", "FailedWithWitness"}};
                    return outcome(computed, expected);
                }});

            ts.push_back(fam_target("single", abstract_quiver({"v"}, {}), 2, 2));
            ts.push_back(fam_target("antichain2", abstract_quiver({"a", "b"}, {}), 2, 4));
            ts.push_back(fam_target("sub-s3", subgroup_category(FiniteGroup::symmetric3()), 4, 6));

            ts.push_back(gset_target("trivial", [] { return FiniteGroup::cyclic(1); }, 2, 1, 2));
            ts.push_back(gset_target("c2", [] { return FiniteGroup::cyclic(2); }, 4, 2, 3));
            ts.push_back(gset_target("c4", [] { return FiniteGroup::cyclic(4); }, 12, 3, 4));
            ts.push_back(gset_target("s3", [] { return FiniteGroup::symmetric3(); }, 24, 6, 6));

            ts.push_back({"pos-models-k2", "posets with at most two elements", {"enumeration"}, lit("empty, 1, discrete 2, chain 2"), 2,
                "the listing is exhaustive at the bound", [](std::uint64_t) {
                    auto u = enumerate_models(corpus_theory("pos"), 2);
                    ordered_json computed = ordered_json::array();
                    for (const auto & m : u->models) {
                        size_t strict = 0;
                        for (Element a = 0; a < static_cast<Element>(m->carrier_size(0)); ++a)
                            for (Element b = 0; b < static_cast<Element>(m->carrier_size(0)); ++b)
                                strict += a != b && m->holds(0, {a, b});
                        computed.push_back(m->carrier_size(0) == 0 ? "empty"
                                : m->carrier_size(0) == 1       ? "1"
                                : strict == 0                   ? "discrete-2"
                                                                : "chain-2");
                    }
                    return outcome(computed, ordered_json{"empty", "1", "discrete-2", "chain-2"});
                }});

            ts.push_back({"morphism-pos-to-brel-k2", "translated pos axioms in bare binary relations", {"morphism"},
                derived("each axiom fails on at most two elements"), 2, "countermodels exist at size 2", [](std::uint64_t) {
                    auto r = check_theory_morphism_bounded(corpus_morphism("pos_to_brel"), 2);
                    ordered_json failing = ordered_json::array();
                    for (const auto & c : r.countermodels)
                        failing.push_back(c.axiom);
                    return outcome(ordered_json{{"ok", r.ok()}, {"failing_axioms", failing}},
                        ordered_json{{"ok", false}, {"failing_axioms", {0, 1, 2}}});
                }});
            ts.push_back({"morphism-pointed-to-group-k3", "the point axiom translated into groups", {"morphism"}, derived("e is always defined"), 3,
                "bounded check only; not a proof", [](std::uint64_t) {
                    auto r = check_theory_morphism_bounded(corpus_morphism("pointed_to_group"), 3);
                    return outcome(ordered_json{{"ok", r.ok()}, {"models", r.target_universe->size()}}, ordered_json{{"ok", true}, {"models", 3}});
                }});

            ts.push_back(closure_target("set", 3));
            ts.push_back(closure_target("pos", 3));
            ts.push_back(closure_target("urel", 2));

            std::sort(ts.begin(), ts.end(), [](const auto & a, const auto & b) { return a.name < b.name; });
            return ts;
        }
    }
    auto ReproductionResult::verdict() const -> string
    {
        if (error)
            return "error";
        return outcome.match ? "match" : "mismatch";
    }

    auto reproduction_targets() -> const vector<ReproductionTarget> &
    {
        static const vector<ReproductionTarget> targets = build_targets();
        return targets;
    }

    auto find_target(const string & name) -> const ReproductionTarget *
    {
        for (const auto & t : reproduction_targets())
            if (t.name == name)
                return &t;
        return nullptr;
    }

    auto run_reproduction(const ReproductionTarget & t, std::uint64_t seed) -> ReproductionResult
    {
        ReproductionResult r;
        r.target = &t;
        auto start = std::chrono::steady_clock::now();
        try {
            r.outcome = t.run(seed);
        }
        catch (const std::exception & e) {
            r.error = e.what();
        }
        r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return r;
    }

    auto run_reproductions(const vector<const ReproductionTarget *> & targets, std::uint64_t seed, size_t jobs) -> vector<ReproductionResult>
    {
        vector<ReproductionResult> results(targets.size());
        if (jobs == 0)
            jobs = std::max(1u, std::thread::hardware_concurrency());
        jobs = std::min(jobs, targets.size());
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (size_t i; (i = next++) < targets.size();)
                results[i] = run_reproduction(*targets[i], seed);
        };
        vector<std::jthread> pool;
        for (size_t j = 1; j < jobs; ++j)
            pool.emplace_back(worker);
        worker();
        return results;
    }

    auto emit_report(std::ostream & out, const vector<ReproductionResult> & results, ReportFormat format) -> void
    {
        size_t matched = 0;
        for (const auto & r : results)
            matched += r.verdict() == "match";
        auto summary = std::to_string(matched) + "/" + std::to_string(results.size()) + " reproductions match";

        if (format == ReportFormat::json) {
            ordered_json j;
            j["schema"] = "phl-repro/1";
            j["targets"] = ordered_json::array();
            for (const auto & r : results) {
                ordered_json t;
                t["target"] = r.target->name;
                t["computed"] = r.error ? ordered_json(nullptr) : r.outcome.computed;
                t["expected"] = r.error ? ordered_json(nullptr) : r.outcome.expected;
                t["provenance"] = {{"kind", r.target->provenance.kind}, {"note", r.target->provenance.note}};
                t["bound"] = r.target->bound;
                t["bound_note"] = r.target->bound_note;
                t["runtime_ms"] = std::round(r.runtime_ms * 1000) / 1000;
                t["verdict"] = r.verdict();
                if (r.error)
                    t["error"] = *r.error;
                else {
                    if (! r.outcome.details.empty())
                        t["details"] = r.outcome.details;
                    if (! r.outcome.evidence.is_null())
                        t["evidence"] = r.outcome.evidence;
                }
                j["targets"].push_back(std::move(t));
            }
            j["summary"] = summary;
            out << j.dump(2) << '\n';
            return;
        }

        for (const auto & r : results) {
            out << std::left << std::setw(32) << r.target->name << ' ' << std::setw(8) << r.verdict() << ' ' << std::right << std::fixed
                << std::setprecision(1) << std::setw(9) << r.runtime_ms << " ms\n";
            if (r.error)
                out << "    error: " << *r.error << '\n';
            else {
                out << "    computed: " << r.outcome.computed.dump() << '\n';
                if (! r.outcome.match)
                    out << "    expected: " << r.outcome.expected.dump() << '\n';
                if (! r.outcome.details.empty())
                    out << "    " << r.outcome.details << '\n';
                if (! r.outcome.evidence.is_null())
                    out << "    evidence: " << r.outcome.evidence.dump() << '\n';
            }
        }
        out << summary << '\n';
    }

    auto list_corpus(std::ostream & out, const string & tag, ReportFormat format) -> void
    {
        auto has_tag = [&](const vector<string> & tags) { return tag.empty() || std::find(tags.begin(), tags.end(), tag) != tags.end(); };
        ordered_json rows = ordered_json::array();
        for (const auto & e : corpus_entries())
            if (has_tag(e.tags))
                rows.push_back({{"name", e.name}, {"kind", e.kind}, {"description", e.description}, {"tags", e.tags},
                    {"provenance", e.provenance.kind}});
        for (const auto & t : reproduction_targets())
            if (has_tag(t.tags))
                rows.push_back({{"name", t.name}, {"kind", "target"}, {"description", t.description}, {"tags", t.tags},
                    {"provenance", t.provenance.kind}});
        if (format == ReportFormat::json) {
            out << rows.dump(2) << '\n';
            return;
        }
        for (const auto & r : rows) {
            out << std::left << std::setw(30) << r["name"].get<string>() << ' ' << std::setw(9) << r["kind"].get<string>() << ' '
                << r["description"].get<string>();
            if (! r["tags"].empty()) {
                out << "  [";
                for (size_t i = 0; i < r["tags"].size(); ++i)
                    out << (i ? ", " : "") << r["tags"][i].get<string>();
                out << ']';
            }
            out << '\n';
        }
    }
}
