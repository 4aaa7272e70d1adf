#include <phl/corpus.hh>
#include <phl/parser.hh>

#include <doctest.h>

using namespace phl;

TEST_CASE("corpus document parses and validates")
{
    const auto & doc = corpus_document();
    CHECK(doc.theories.size() == 16);
    CHECK(doc.morphisms.size() == 3);
    CHECK(doc.relatives.size() == 1);
    for (const auto & t : doc.theories)
        CHECK_MESSAGE(validate_theory(*t).ok(), t->name);
}

TEST_CASE("printing round-trips through the parser")
{
    const auto & doc = corpus_document();
    auto again = parse_document(print_document(doc), "<printed>");
    REQUIRE(again.theories.size() == doc.theories.size());
    for (std::size_t i = 0; i < doc.theories.size(); ++i) {
        const auto & a = *doc.theories[i];
        const auto & b = *again.theories[i];
        CHECK(a.name == b.name);
        CHECK(*a.signature == *b.signature);
        CHECK(a.axioms == b.axioms);
        CHECK(a.flags == b.flags);
    }
    CHECK(print_document(again) == print_document(doc));
}

TEST_CASE("generated theories parse")
{
    for (std::size_t k = 0; k <= 4; ++k) {
        CHECK(corpus_theory("n-const(" + std::to_string(k) + ")")->signature->functions().size() == k);
        CHECK(corpus_theory("remark-locret(" + std::to_string(k) + ")")->signature->functions().size() == k + 2);
        CHECK(corpus_theory("remark-constants(" + std::to_string(k) + ")")->has_flag(flags::exact_constants));
        CHECK(corpus_theory("set-omega(" + std::to_string(k) + ")")->signature->sorts().size() == k + 1);
        CHECK(corpus_theory("presheaf-omega-op(" + std::to_string(k) + ")")->axioms.size() == k);
    }
    CHECK(corpus_theory("bounded-lattice") == corpus_theory("bounded_lattice"));
    CHECK_THROWS_AS(corpus_theory("no-such-theory"), PhlError);
}

TEST_CASE("parse errors carry positions")
{
    try {
        parse_document("theory t {\n    sorts X;\n    relations R : X * Y;\n}\n", "bad.phl");
        FAIL("expected a parse error");
    }
    catch (const ParseError & e) {
        CHECK(e.file() == "bad.phl");
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_document("theory t { sorts X, X; }"), ParseError);
    CHECK_THROWS_AS(parse_document("theory t { sorts X; } theory t { sorts Y; }"), ParseError);
    CHECK_THROWS_AS(parse_document("theory t { sorts X; axioms [x:X] top |- y = x; }"), PhlError);
    CHECK_THROWS_AS(parse_document("theory t { sorts X; } @"), ParseError);
}

TEST_CASE("morphisms map unnamed symbols by name")
{
    auto rho = corpus_morphism("pos_to_brel");
    CHECK(rho.source->name == "pos");
    CHECK(rho.target->name == "brel");
    CHECK(rho.sort_map == std::vector<SortId>{0});
    CHECK(rho.relation_map == std::vector<RelationId>{0});
    check_morphism_arities(rho);

    auto pg = corpus_morphism("pointed-to-group");
    CHECK(pg.function_map[0] == pg.target->signature->function_id("e"));
}

TEST_CASE("bisequents give two sequents")
{
    auto t = corpus_theory("idem");
    auto s = parse_sequents(*t->signature, "[x:X] f(x) = x -||- f(f(x)) = x");
    CHECK(s.size() == 2);
    CHECK(s[0].premise == s[1].conclusion);
}

TEST_CASE("relative theory combines base and operations")
{
    const auto * rt = corpus_document().find_relative("ordered_magma");
    REQUIRE(rt);
    CHECK(rt->base->name == "pos");
    CHECK(rt->combined->find_function("mul"));
    CHECK(rt->judgments.size() == 2);
}
