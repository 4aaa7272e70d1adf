// One PASS/FAIL line per acceptance criterion. Expected values come from the
// oracles in this directory, not from the library.
#include "locret_properties.hh"
#include "oracles.hh"

#include <phl/closure.hh>
#include <phl/corpus.hh>
#include <phl/enumerate.hh>
#include <phl/group.hh>
#include <phl/parser.hh>
#include <phl/repro.hh>
#include <phl/sigma.hh>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>

using namespace phl;
using std::size_t;
using std::string;

namespace
{
    struct Verdict
    {
        bool ok = true;
        string note;

        auto require(bool cond, const string & what) -> void
        {
            if (! cond && ok) {
                ok = false;
                note = what;
            }
        }
    };

    using Clock = std::chrono::steady_clock;

    auto seconds_since(Clock::time_point t) -> double
    {
        return std::chrono::duration<double>(Clock::now() - t).count();
    }

    auto hom_matrix(const std::vector<StructurePtr> & ms) -> std::vector<std::vector<bool>>
    {
        std::vector<std::vector<bool>> r(ms.size(), std::vector<bool>(ms.size()));
        for (size_t i = 0; i < ms.size(); ++i)
            for (size_t j = 0; j < ms.size(); ++j)
                r[i][j] = oracle::hom_exists(*ms[i], *ms[j]);
        return r;
    }

    auto sigma_counts() -> Verdict
    {
        Verdict v;
        struct Case
        {
            string theory;
            size_t bound, expected;
        };
        std::vector<Case> cases{{"set", 2, 2}, {"pos", 2, 2}, {"arrow", 1, 3}, {"cospan", 2, 6}, {"urel", 1, 3}, {"per", 2, 3}, {"idem", 2, 2},
            {"preord", 2, 2}, {"erel", 2, 2}};
        for (size_t n = 1; n <= 4; ++n)
            cases.push_back({"n-const(" + std::to_string(n) + ")", n, oracle::bell(n)});
        for (const auto & c : cases) {
            auto start = Clock::now();
            auto u = enumerate_models(corpus_theory(c.theory), c.bound);
            auto got = sigma_of_family(u->models).size();
            v.require(seconds_since(start) < 10, c.theory + " took over 10 s");
            v.require(got == c.expected, c.theory + ": " + std::to_string(got) + " components, expected " + std::to_string(c.expected));
            v.require(oracle::count_components(hom_matrix(u->models)) == c.expected, c.theory + ": oracle disagrees");
        }
        return v;
    }

    auto non_acc() -> Verdict
    {
        Verdict v;
        auto timed = [&](const string & what, const std::function<bool()> & f) {
            auto start = Clock::now();
            v.require(f(), what);
            v.require(seconds_since(start) < 30, what + " took over 30 s");
        };
        timed("M_n -> M_m", [] {
            for (size_t n = 3; n <= 5; ++n)
                for (size_t m = 2; m < n; ++m)
                    if (oracle::hom_exists(*lattice_M(n), *lattice_M(m)))
                        return false;
            return true;
        });
        timed("A_n -> A_m", [] {
            for (size_t n = 2; n <= 3; ++n)
                for (size_t m = 1; m < n; ++m)
                    if (oracle::hom_exists(*end_A(n), *end_A(m)))
                        return false;
            return true;
        });
        timed("L_n -> L_m", [] {
            for (size_t n = 1; n <= 5; ++n)
                for (size_t m = 0; m < n && m <= 4; ++m)
                    if (oracle::hom_exists(*presheaf_L(n, 4), *presheaf_L(m, 4)))
                        return false;
            return true;
        });
        for (const auto * chain : {"lattice-M", "end-A", "presheaf-L"})
            for (size_t h : {4, 5})
                timed(string{chain} + " stabilizes at horizon " + std::to_string(h), [&] { return ! acc_probe(corpus_chain(chain), h).stabilized; });
        return v;
    }

    auto set_omega_chain() -> Verdict
    {
        Verdict v;
        for (size_t k : {2, 3}) {
            auto u = enumerate_models(corpus_theory("set-omega(" + std::to_string(k) + ")"), 1);
            auto s = sigma_of_family(u->models);
            v.require(s.size() == k + 2 && s.poset.is_total(), "set-omega(" + std::to_string(k) + ") is not a " + std::to_string(k + 2) + "-chain");
            // independent: U_alpha -> U_beta iff alpha >= beta
            for (size_t a = 0; a <= k + 1; ++a)
                for (size_t b = 0; b <= k + 1; ++b)
                    v.require(oracle::hom_exists(*set_omega_U(a, k), *set_omega_U(b, k)) == (a >= b), "U order");
        }
        return v;
    }

    auto locret_suite() -> Verdict
    {
        Verdict v;
        auto start = Clock::now();
        auto r = props::run(20260101, 240);
        v.require(r.instances >= 200, "too few instances");
        v.require(r.violations.empty(), r.violations.empty() ? "" : r.violations.front());
        v.require(r.checked.size() == 6, "some property never applied");
        v.require(seconds_since(start) < 60, "over 60 s");
        if (v.ok)
            v.note = std::to_string(r.instances) + " instances";
        return v;
    }

    auto closure_laws() -> Verdict
    {
        Verdict v;
        auto start = Clock::now();
        size_t classes = 0;
        for (auto [name, k] : {std::pair{"set", 3}, std::pair{"pos", 3}, std::pair{"urel", 2}}) {
            auto u = enumerate_models(corpus_theory(name), k);
            ClosureContext ctx(u);
            auto sample = sample_classes(u, 42, 48);
            auto report = operator_law_report(ctx, sample, 42);
            classes += sample.size();
            v.require(report.ok(), string{name} + ": " + (report.ok() ? "" : report.violations.front().law));
            for (const auto & c : sample)
                v.require(ctx.hsp_closure(c).verified(), string{name} + ": hsp output is not a fixpoint");
        }
        struct Definable
        {
            const char * theory;
            size_t bound;
            const char * text;
        };
        size_t definable = 0;
        for (auto d : {Definable{"set", 3, "[x:X, y:X] top |- x = y"}, Definable{"pos", 3, "[x:X, y:X] leq(x, y) |- x = y"},
                 Definable{"pos", 3, "[x:X, y:X] top |- leq(x, y)"}, Definable{"urel", 2, "[x:X] top |- P(x)"},
                 Definable{"urel", 2, "[x:X, y:X] P(x) & P(y) |- x = y"}, Definable{"urel", 2, "[x:X] P(x) |- x = x"}}) {
            auto t = corpus_theory(d.theory);
            auto u = enumerate_models(t, d.bound);
            auto e = definable_class(u, parse_sequents(*t->signature, d.text));
            ClosureContext ctx(u);
            auto r = ctx.hsp_closure(e);
            v.require(r.closure == e && r.verified(), string{d.theory} + ": " + d.text + " is not hsp closed");
            ++definable;
        }
        v.require(seconds_since(start) < 120, "over 120 s");
        if (v.ok)
            v.note = std::to_string(classes) + " classes, " + std::to_string(definable) + " definable classes";
        return v;
    }

    auto counterexamples() -> Verdict
    {
        Verdict v;
        auto t = corpus_theory("remark-locret(2)");
        auto u = enumerate_models(t, 2);
        auto seq = remark_locret_defining_sequent(2);
        auto e = definable_class(u, {seq});
        for (auto i : e.indices())
            v.require(oracle::satisfies(*u->models[i], seq), "definable_class disagrees with the oracle");
        ClosureContext ctx(u);
        v.require(ctx.P(e) == e, "E not closed under P");
        v.require(ctx.Sc(e) == e, "E not closed under Sc");
        v.require(ctx.R(e) == e, "E not closed under R");
        auto colim = chain_colimit(corpus_chain("remark-A"), 6);
        v.require(colim.stable, "remark chain did not stabilize");
        v.require(colim.stable && ! oracle::satisfies(*colim.colimit, seq), "colimit lies in E");
        for (size_t n = 0; n <= 2; ++n)
            v.require(oracle::satisfies(*remark_A(n, 2), seq), "a stage lies outside E");

        auto h = find_hom(remark_constants_split(3), remark_constants_point(3));
        v.require(h.has_value(), "no merging map");
        if (h) {
            v.require(is_surjective(*h), "merging map not surjective");
            v.require(local_retraction_exact(*h, *corpus_theory("remark-constants(3)")).verdict == LocalRetractionVerdict::exact_false,
                "merging map not ExactFalse");
        }
        return v;
    }

    auto fam_and_gsets() -> Verdict
    {
        Verdict v;
        auto s3 = FiniteGroup::symmetric3();
        v.require(verify_fam_theorem(abstract_quiver({"v"}, {}), 2).ok, "single vertex");
        v.require(verify_fam_theorem(abstract_quiver({"a", "b"}, {}), 2).ok, "2-antichain");
        v.require(verify_fam_theorem(subgroup_category(s3), 4).ok, "Sub(S3)");

        auto table_of = [](const FiniteGroup & g) {
            std::vector<std::vector<size_t>> t(g.order(), std::vector<size_t>(g.order()));
            for (size_t a = 0; a < g.order(); ++a)
                for (size_t b = 0; b < g.order(); ++b)
                    t[a][b] = g.mul(a, b);
            return t;
        };
        struct Case
        {
            FiniteGroup g;
            size_t bound, subgroups;
        };
        for (auto & c : {Case{FiniteGroup::cyclic(1), 2, 1}, Case{FiniteGroup::cyclic(2), 4, 2}, Case{FiniteGroup::cyclic(4), 12, 3}, Case{s3, 24, 6}}) {
            v.require(subgroups(c.g).size() == c.subgroups, "subgroup count of order " + std::to_string(c.g.order()));
            v.require(oracle::count_subgroups(table_of(c.g), c.g.identity()) == c.subgroups, "subgroup oracle");
            auto r = gset_sigma_check(c.g, c.bound);
            v.require(r.ok, "G-set check for order " + std::to_string(c.g.order()) + ": " + r.message);
        }
        auto r = gset_sigma_check(s3, 24);
        v.require(r.gset_sigma.size() == 6 && r.lattice.size() == 6, "S3 sides are not 6-element lattices");
        return v;
    }

    auto enumeration_oracle() -> Verdict
    {
        Verdict v;
        std::vector<string> names;
        for (const auto & t : corpus_document().theories)
            names.push_back(t->name);
        for (const auto * g : {"n-const(2)", "remark-locret(2)", "remark-constants(2)", "set-omega(2)", "presheaf-omega-op(2)"})
            names.emplace_back(g);
        for (const auto & name : names)
            for (size_t k : {0, 1, 2}) {
                auto t = corpus_theory(name);
                auto u = enumerate_models(t, k);
                auto reps = oracle::enumerate_models(t, k);
                bool same = u->size() == reps.size();
                for (const auto & r : reps) {
                    size_t hits = 0;
                    for (const auto & m : u->models)
                        hits += oracle::isomorphic(*m, r);
                    same = same && hits == 1;
                }
                v.require(same, name + " at k" + std::to_string(k));
            }
        auto pos = enumerate_models(corpus_theory("pos"), 2);
        v.require(pos->size() == 4, "pos k2 count");
        if (pos->size() == 4) {
            v.require(pos->models[0]->carrier_size(0) == 0 && pos->models[1]->carrier_size(0) == 1, "pos k2 small models");
            v.require(oracle::isomorphic(*pos->models[2], *discrete_poset_structure(2)), "discrete 2");
            v.require(oracle::isomorphic(*pos->models[3], *chain_poset_structure(2)), "chain 2");
        }
        if (v.ok)
            v.note = std::to_string(names.size()) + " theories";
        return v;
    }

    auto capture(const string & command) -> std::optional<string>
    {
        std::unique_ptr<FILE, int (*)(FILE *)> pipe{popen(command.c_str(), "r"), pclose};
        if (! pipe)
            return std::nullopt;
        string out;
        std::array<char, 4096> buf{};
        for (size_t n; (n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0;)
            out.append(buf.data(), n);
        return out;
    }

    auto determinism(const string & phl) -> Verdict
    {
        Verdict v;
        const std::regex runtime{R"("runtime_ms": [0-9.eE+-]+)"};
        if (phl.empty()) {
            std::vector<const ReproductionTarget *> all;
            for (const auto & t : reproduction_targets())
                all.push_back(&t);
            std::ostringstream a, b;
            emit_report(a, run_reproductions(all, 1), ReportFormat::json);
            emit_report(b, run_reproductions(all, 1), ReportFormat::json);
            v.require(std::regex_replace(a.str(), runtime, "") == std::regex_replace(b.str(), runtime, ""), "in-process reports differ");
            v.note = "in-process";
            return v;
        }
        auto first = capture(phl + " repro --all --format json");
        auto second = capture(phl + " repro --all --format json");
        v.require(first && second && ! first->empty(), "could not run " + phl);
        if (first && second)
            v.require(std::regex_replace(*first, runtime, "") == std::regex_replace(*second, runtime, ""), "outputs differ");
        return v;
    }
}

int main(int argc, char ** argv)
{
    string phl = argc > 1 ? argv[1] : "";
    std::vector<std::pair<string, std::function<Verdict()>>> criteria{
        {"sigma counts", sigma_counts},
        {"non-ACC witnesses", non_acc},
        {"set-omega chain", set_omega_chain},
        {"local-retraction property suite", locret_suite},
        {"closure laws", closure_laws},
        {"counterexamples", counterexamples},
        {"Fam and G-sets", fam_and_gsets},
        {"enumeration oracle", enumeration_oracle},
        {"determinism", [&] { return determinism(phl); }},
    };
    bool all = true;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto start = Clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        }
        catch (const std::exception & e) {
            v = {false, string{"exception: "} + e.what()};
        }
        all = all && v.ok;
        std::printf("%s %zu %-34s %9.1f ms%s%s\n", v.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), seconds_since(start) * 1000,
            v.note.empty() ? "" : "  ", v.note.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
