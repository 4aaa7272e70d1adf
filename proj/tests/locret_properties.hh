// Random instances of the local-retraction properties, shared by the unit
// tests and the acceptance binary.
#ifndef PHL_TESTS_LOCRET_PROPERTIES_HH
#define PHL_TESTS_LOCRET_PROPERTIES_HH 1

#include <phl/corpus.hh>
#include <phl/enumerate.hh>
#include <phl/homsearch.hh>

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace props
{
    using namespace phl;

    struct Report
    {
        std::size_t instances = 0;
        /// Property name to the number of instances where it applied.
        std::map<std::string, std::size_t> checked;
        std::vector<std::string> violations;
    };

    struct Setting
    {
        const char * theory;
        std::size_t bound;
        /// One sort and only relation symbols: passing maps must be onto.
        bool set_like;
    };

    inline const std::vector<Setting> settings{{"set", 3, true}, {"pos", 3, true}, {"urel", 2, true}, {"brel", 2, true}, {"per", 2, true},
        {"idem", 2, false}, {"end", 2, false}, {"arrow", 2, false}, {"n-const(2)", 3, false}, {"remark-locret(1)", 2, false}};

    inline auto run(std::uint64_t seed, std::size_t instances) -> Report
    {
        std::mt19937_64 rng{seed};
        Report report;
        std::vector<UniversePtr> universes;
        for (const auto & s : settings)
            universes.push_back(enumerate_models(corpus_theory(s.theory), s.bound));

        auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
        auto random_hom = [&](const StructurePtr & a, const StructurePtr & b) -> std::optional<Homomorphism> {
            auto hs = enumerate_homs(a, b, 32);
            if (hs.empty())
                return std::nullopt;
            return hs[pick(hs.size())];
        };
        auto fail = [&](const std::string & property, std::size_t setting, const std::string & detail) {
            report.violations.push_back(property + " in " + settings[setting].theory + ": " + detail);
        };

        while (report.instances < instances) {
            auto si = pick(settings.size());
            const auto & u = universes[si];
            const auto & probes = u->models;
            auto ai = pick(u->size()), bi = pick(u->size());
            auto p = random_hom(u->models[ai], u->models[bi]);
            if (! p)
                continue;
            ++report.instances;
            auto where = "p: [" + std::to_string(ai) + "] -> [" + std::to_string(bi) + "]";
            bool p_passes = local_retraction_check(*p, probes).passed();

            if (find_section(*p)) {
                ++report.checked["retraction implies probe-pass"];
                if (! p_passes)
                    fail("retraction implies probe-pass", si, where);
            }

            if (p_passes) {
                ++report.checked["probe-pass with codomain among probes gives a section"];
                if (! find_section(*p))
                    fail("probe-pass with codomain among probes gives a section", si, where);
                if (settings[si].set_like) {
                    ++report.checked["probe-pass implies surjective"];
                    if (! is_surjective(*p))
                        fail("probe-pass implies surjective", si, where);
                }
            }

            auto ci = pick(u->size());
            if (auto q = random_hom(u->models[bi], u->models[ci])) {
                bool q_passes = local_retraction_check(*q, probes).passed();
                bool qp_passes = local_retraction_check(compose(*q, *p), probes).passed();
                if (p_passes && q_passes) {
                    ++report.checked["composition"];
                    if (! qp_passes)
                        fail("composition", si, where + ", q to [" + std::to_string(ci) + "]");
                }
                if (qp_passes) {
                    ++report.checked["right cancellation"];
                    if (! q_passes)
                        fail("right cancellation", si, where + ", q to [" + std::to_string(ci) + "]");
                }
            }

            auto di = pick(u->size());
            if (auto f = random_hom(u->models[di], u->models[bi]); f && p_passes) {
                auto pb = pullback(*p, *f);
                ++report.checked["pullback stability"];
                // legs[1] is the projection to the domain of f
                if (! local_retraction_check(pb.legs[1], probes).passed())
                    fail("pullback stability", si, where + ", f from [" + std::to_string(di) + "]");
            }
        }
        return report;
    }
}

#endif
