#include "locret_properties.hh"

#include <doctest.h>

TEST_CASE("local-retraction properties on random instances")
{
    for (std::uint64_t seed : {1, 2}) {
        auto r = props::run(seed, 150);
        CHECK(r.instances == 150);
        for (const auto & v : r.violations)
            FAIL_CHECK(v);
        for (const auto * name : {"retraction implies probe-pass", "composition", "right cancellation", "pullback stability",
                 "probe-pass with codomain among probes gives a section", "probe-pass implies surjective"})
            CHECK_MESSAGE(r.checked[name] > 0, name);
    }
}
