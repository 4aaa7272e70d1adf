#include "oracles.hh"

#include <phl/corpus.hh>
#include <phl/enumerate.hh>
#include <phl/homsearch.hh>

#include <doctest.h>

using namespace phl;

TEST_CASE("hom existence matches exhaustive search")
{
    for (const auto * name : {"pos", "idem", "cospan", "remark-locret(2)", "per", "bounded-lattice"}) {
        auto u = enumerate_models(corpus_theory(name), 2);
        for (const auto & a : u->models)
            for (const auto & b : u->models) {
                CHECK_MESSAGE(hom_exists(*a, *b) == oracle::hom_exists(*a, *b), name);
                if (auto h = find_hom(a, b))
                    CHECK(is_homomorphism(*h).ok);
            }
    }
}

TEST_CASE("enumerated homs are distinct homomorphisms")
{
    auto a = chain_poset_structure(2), b = chain_poset_structure(3);
    auto hs = enumerate_homs(a, b, 100);
    CHECK(hs.size() == 6);
    for (std::size_t i = 0; i < hs.size(); ++i) {
        CHECK(is_homomorphism(hs[i]).ok);
        for (std::size_t j = 0; j < i; ++j)
            CHECK(hs[i].maps != hs[j].maps);
    }
    CHECK(enumerate_homs(a, b, 2).size() == 2);
}

TEST_CASE("non-ACC witnesses")
{
    for (std::size_t n = 3; n <= 5; ++n)
        for (std::size_t m = 2; m < n; ++m) {
            CHECK_FALSE(hom_exists(*lattice_M(n), *lattice_M(m)));
            CHECK(hom_exists(*lattice_M(m), *lattice_M(n)));
        }
    for (std::size_t n = 2; n <= 3; ++n)
        for (std::size_t m = 1; m < n; ++m)
            CHECK_FALSE(oracle::hom_exists(*end_A(n), *end_A(m)));
    for (std::size_t n = 1; n <= 5; ++n)
        for (std::size_t m = 0; m < n; ++m)
            CHECK_FALSE(oracle::hom_exists(*presheaf_L(n, 4), *presheaf_L(m, 4)));
    CHECK(hom_exists(*end_cycle(6), *end_cycle(3)));
    CHECK_FALSE(hom_exists(*end_cycle(3), *end_cycle(6)));
}

TEST_CASE("sections and lifts")
{
    auto t = corpus_theory("set");
    auto three = set_of_size(3), two = set_of_size(2);
    Homomorphism p{three, two, {{0, 1, 1}}};
    auto s = find_section(p);
    REQUIRE(s);
    CHECK(compose(p, *s).maps == identity_hom(two).maps);
    Homomorphism f{two, two, {{1, 1}}};
    auto g = find_lift(p, f);
    REQUIRE(g);
    CHECK(compose(p, *g).maps == f.maps);
    Homomorphism not_onto{two, three, {{0, 1}}};
    CHECK_FALSE(find_section(not_onto));
}

TEST_CASE("exact rules agree with probes")
{
    for (const auto * name : {"set", "n-const(2)", "n-const(3)", "remark-constants(2)"}) {
        auto t = corpus_theory(name);
        REQUIRE(has_exact_local_retraction_rule(*t));
        auto u = enumerate_models(t, 3);
        for (const auto & a : u->models)
            for (const auto & b : u->models)
                for (const auto & h : enumerate_homs(a, b, 64))
                    CHECK_MESSAGE(local_retraction_exact(h, *t).passed() == local_retraction_check(h, u->models).passed(), name);
    }
    CHECK_FALSE(has_exact_local_retraction_rule(*corpus_theory("pos")));
    auto h = identity_hom(chain_poset_structure(2));
    CHECK_THROWS_AS(local_retraction_exact(h, *corpus_theory("pos")), PhlError);
}

TEST_CASE("merging constants is not a local retraction")
{
    auto h = find_hom(remark_constants_split(3), remark_constants_point(3));
    REQUIRE(h);
    CHECK(is_surjective(*h));
    auto r = local_retraction_exact(*h, *corpus_theory("remark-constants(3)"));
    CHECK(r.verdict == LocalRetractionVerdict::exact_false);
}
