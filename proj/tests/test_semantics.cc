#include "oracles.hh"

#include <phl/corpus.hh>
#include <phl/enumerate.hh>
#include <phl/parser.hh>
#include <phl/semantics.hh>

#include <doctest.h>

#include <random>

using namespace phl;

namespace
{
    auto random_structure(const TheoryPtr & t, std::mt19937_64 & rng, std::size_t bound) -> PartialStructure
    {
        const auto & sig = *t->signature;
        std::vector<std::size_t> sizes;
        for (std::size_t s = 0; s < sig.sorts().size(); ++s)
            sizes.push_back(rng() % (bound + 1));
        auto m = PartialStructure::with_sizes(t->signature, sizes);
        for (FunctionId f = 0; f < sig.functions().size(); ++f) {
            auto range = m.carrier_size(sig.functions()[f].result);
            for (auto & v : m.function_table(f))
                v = static_cast<Element>(rng() % (range + 1)) - 1;
        }
        for (RelationId r = 0; r < sig.relations().size(); ++r)
            for (auto & v : m.relation_table(r))
                v = rng() % 2;
        return m;
    }
}

TEST_CASE("evaluator agrees with the reference on random structures")
{
    std::mt19937_64 rng{11};
    for (const auto * name : {"pos", "per", "idem", "group", "bounded-lattice", "cospan", "remark-locret(2)", "semigroup"}) {
        auto t = corpus_theory(name);
        CompiledTheory compiled{*t};
        for (int i = 0; i < 200; ++i) {
            auto m = random_structure(t, rng, 3);
            bool expected = oracle::is_model(m, *t);
            CHECK_MESSAGE(is_model(m, *t) == expected, name);
            CHECK_MESSAGE(compiled.is_model(m) == expected, name);
            for (const auto & s : t->axioms)
                CHECK(sequent_counterexample(m, s).has_value() != oracle::satisfies(m, s));
        }
    }
}

TEST_CASE("definedness is an equation with itself")
{
    auto t = corpus_theory("pointed");
    auto empty = PartialStructure::with_sizes(t->signature, {1});
    CHECK_FALSE(is_model(empty, *t));
    empty.set_value(0, {}, 0);
    CHECK(is_model(empty, *t));
}

TEST_CASE("products, pullbacks and reducts")
{
    auto t = corpus_theory("pos");
    auto two = chain_poset_structure(2);
    auto three = chain_poset_structure(3);
    auto prod = product(t->signature, {two, three});
    CHECK(prod.apex->carrier_size(0) == 6);
    CHECK(is_model(*prod.apex, *t));
    for (const auto & leg : prod.legs)
        CHECK(is_homomorphism(leg).ok);
    CHECK(product_sizes(t->signature, {two, three, two}) == std::vector<std::size_t>{12});

    auto terminal = product(t->signature, {});
    CHECK(terminal.apex->carrier_size(0) == 1);
    CHECK(terminal.apex->holds(0, {0, 0}));

    auto f = identity_hom(two);
    auto pb = pullback(f, f);
    CHECK(pb.apex->carrier_size(0) == 2);
    CHECK(is_closed_mono(pb.legs[0]).ok);

    auto rho = corpus_morphism("pos_to_brel");
    auto loop = PartialStructure::with_sizes(rho.target->signature, {1});
    CHECK_FALSE(is_model(reduct(rho, loop), *t));
    loop.set_holds(0, {0, 0}, true);
    CHECK(is_model(reduct(rho, loop), *t));
}

TEST_CASE("disjoint union needs the flag")
{
    auto u = disjoint_union(*corpus_theory("end"), end_cycle(2), end_cycle(3));
    CHECK(u.apex->carrier_size(0) == 5);
    CHECK(is_homomorphism(u.legs[1]).ok);
    auto lat = corpus_theory("bounded-lattice");
    CHECK_THROWS_AS(disjoint_union(*lat, lattice_M(2), lattice_M(2)), PhlError);
}

TEST_CASE("structure JSON round-trips")
{
    auto m = lattice_M(3);
    auto j = structure_to_json(*m, "bounded_lattice");
    auto back = structure_from_json(j, m->signature_ptr());
    CHECK(back == *m);
    nlohmann::json bad = {{"carriers", {{"L", {"0"}}}}, {"functions", {{"meet", {{"0", "0", "1"}}}}}};
    CHECK_THROWS_AS(structure_from_json(bad, m->signature_ptr()), PhlError);
}
