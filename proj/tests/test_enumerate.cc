#include "oracles.hh"

#include <phl/canonical.hh>
#include <phl/corpus.hh>
#include <phl/enumerate.hh>

#include <doctest.h>

#include <filesystem>

using namespace phl;

namespace
{
    const char * const fixed_theories[] = {"set", "pos", "urel", "brel", "per", "preord", "erel", "idem", "end", "arrow", "cospan", "bowtie",
        "bounded-lattice", "semigroup", "pointed", "group"};
    const char * const generated[] = {"n-const(2)", "remark-locret(1)", "remark-constants(2)", "set-omega(2)", "presheaf-omega-op(2)"};

    auto agree(const TheoryPtr & t, std::size_t k) -> void
    {
        auto u = enumerate_models(t, k);
        auto reps = oracle::enumerate_models(t, k);
        REQUIRE_MESSAGE(u->size() == reps.size(), t->name << " k" << k);
        for (const auto & r : reps) {
            std::size_t hits = 0;
            for (const auto & m : u->models)
                hits += oracle::isomorphic(*m, r);
            CHECK_MESSAGE(hits == 1, t->name << " k" << k);
        }
    }
}

TEST_CASE("enumeration matches the brute-force oracle at bound 2")
{
    for (auto name : fixed_theories)
        for (std::size_t k : {1, 2})
            agree(corpus_theory(name), k);
    for (auto name : generated)
        agree(corpus_theory(name), 2);
}

TEST_CASE("posets with at most two elements")
{
    auto u = enumerate_models(corpus_theory("pos"), 2);
    REQUIRE(u->size() == 4);
    CHECK(u->models[0]->carrier_size(0) == 0);
    CHECK(u->models[1]->carrier_size(0) == 1);
    CHECK(oracle::isomorphic(*u->models[2], *discrete_poset_structure(2)));
    CHECK(oracle::isomorphic(*u->models[3], *chain_poset_structure(2)));
}

TEST_CASE("known counts")
{
    CHECK(enumerate_models(corpus_theory("pos"), 3)->size() == 9);
    CHECK(enumerate_models(corpus_theory("pos"), 4)->size() == 25);
    CHECK(enumerate_models(corpus_theory("erel"), 4)->size() == 12);
    CHECK(enumerate_models(corpus_theory("set"), 5)->size() == 6);
}

TEST_CASE("universe is ordered and indexed")
{
    auto u = enumerate_models(corpus_theory("per"), 3);
    for (std::size_t i = 0; i < u->size(); ++i) {
        CHECK(u->index_of(*u->models[i]) == i);
        CHECK(u->find_key(u->keys[i]) == i);
        if (i > 0)
            CHECK(u->models[i - 1]->total_size() <= u->models[i]->total_size());
    }
    auto shuffled = permute(*u->models.back(), {{2, 0, 1}});
    CHECK(u->index_of(shuffled) == u->size() - 1);
}

TEST_CASE("canonical keys decide isomorphism")
{
    auto reps = oracle::enumerate_models(corpus_theory("idem"), 3);
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = 0; j < reps.size(); ++j)
            CHECK((canonical_form(reps[i]).key == canonical_form(reps[j]).key) == (i == j));
    for (const auto & r : reps)
        CHECK(oracle::isomorphic(canonical_structure(r), r));
}

TEST_CASE("budget and cache")
{
    EnumerationOptions tight;
    tight.budget = 10;
    CHECK_THROWS_AS(enumerate_models(corpus_theory("bounded-lattice"), 3, tight), BudgetExceeded);

    auto dir = std::filesystem::temp_directory_path() / "phl-cache-test";
    std::filesystem::remove_all(dir);
    EnumerationOptions cached;
    cached.cache_dir = dir.string();
    auto a = enumerate_models(corpus_theory("preord"), 3, cached);
    CHECK(std::filesystem::exists(dir / (theory_hash(*corpus_theory("preord")) + "_k3.jsonl")));
    auto b = enumerate_models(corpus_theory("preord"), 3, cached);
    CHECK(a->keys == b->keys);
    std::filesystem::remove_all(dir);
}
