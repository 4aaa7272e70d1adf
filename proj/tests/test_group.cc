#include "oracles.hh"

#include <phl/group.hh>

#include <doctest.h>

using namespace phl;

namespace
{
    auto table_of(const FiniteGroup & g) -> std::vector<std::vector<std::size_t>>
    {
        std::vector<std::vector<std::size_t>> t(g.order(), std::vector<std::size_t>(g.order()));
        for (std::size_t a = 0; a < g.order(); ++a)
            for (std::size_t b = 0; b < g.order(); ++b)
                t[a][b] = g.mul(a, b);
        return t;
    }
}

TEST_CASE("subgroup counts match brute force")
{
    for (std::size_t n = 1; n <= 12; ++n) {
        auto g = FiniteGroup::cyclic(n);
        CHECK(subgroups(g).size() == oracle::count_subgroups(table_of(g), g.identity()));
    }
    auto s3 = FiniteGroup::symmetric3();
    CHECK(subgroups(s3).size() == 6);
    CHECK(oracle::count_subgroups(table_of(s3), s3.identity()) == 6);
    CHECK(subgroups(FiniteGroup::cyclic(1)).size() == 1);
    CHECK(subgroups(FiniteGroup::cyclic(2)).size() == 2);
    CHECK(subgroups(FiniteGroup::cyclic(4)).size() == 3);
}

TEST_CASE("bad tables are rejected")
{
    CHECK_THROWS_AS((FiniteGroup{{"e", "a"}, {{0, 1}, {1, 1}}}), PhlError);
    CHECK_THROWS_AS((FiniteGroup{{"e", "a"}, {{0, 1}, {1}}}), PhlError);
    CHECK_THROWS_AS(FiniteGroup::from_json(nlohmann::json::parse(R"({"elements": ["e"], "table": [["x"]]})")), PhlError);
    auto g = FiniteGroup::from_json(nlohmann::json::parse(R"({"elements": ["e", "a"], "table": [["e", "a"], ["a", "e"]]})"));
    CHECK(g.order() == 2);
    CHECK(g.inverse(1) == 1);
}

TEST_CASE("subgroup sigma of S3")
{
    auto s = condense_sigma(subgroup_category(FiniteGroup::symmetric3()));
    // trivial, order 2 (three conjugates), order 3, whole group
    CHECK(s.size() == 4);
    CHECK_FALSE(s.poset.is_total());
    CHECK(lower_set_lattice(s.poset).sets.size() == 6);
}

TEST_CASE("coset G-sets are models")
{
    auto g = FiniteGroup::symmetric3();
    auto t = gset_theory(g);
    for (auto h : subgroups(g)) {
        auto m = coset_gset(g, t, h);
        CHECK(oracle::is_model(*m, *t));
        CHECK(m->carrier_size(0) * std::popcount(h) == g.order());
    }
}

TEST_CASE("G-set enumeration matches the brute-force oracle for small groups")
{
    for (std::size_t n : {1, 2, 3}) {
        auto g = FiniteGroup::cyclic(n);
        auto t = gset_theory(g);
        auto reps = oracle::enumerate_models(t, 3);
        auto ours = enumerate_gsets(g, t, 3);
        CHECK(ours.size() == reps.size());
        for (const auto & r : reps) {
            std::size_t hits = 0;
            for (const auto & m : ours)
                hits += oracle::isomorphic(*m, r);
            CHECK(hits == 1);
        }
    }
}

TEST_CASE("G-set sigma against lower sets")
{
    struct Case
    {
        FiniteGroup g;
        std::size_t bound, lattice;
    };
    for (auto & c : {Case{FiniteGroup::cyclic(1), 2, 2}, Case{FiniteGroup::cyclic(2), 4, 3}, Case{FiniteGroup::cyclic(4), 12, 4},
             Case{FiniteGroup::symmetric3(), 24, 6}}) {
        auto r = gset_sigma_check(c.g, c.bound);
        CHECK_MESSAGE(r.ok, r.message);
        CHECK(r.gset_sigma.size() == c.lattice);
        CHECK(r.lattice.size() == c.lattice);
    }
    auto low = gset_sigma_check(FiniteGroup::symmetric3(), 6);
    CHECK_FALSE(low.ok);
    CHECK(low.required_bound == 24);
}
