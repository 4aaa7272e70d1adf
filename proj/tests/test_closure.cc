#include <phl/closure.hh>
#include <phl/corpus.hh>
#include <phl/parser.hh>

#include <doctest.h>

using namespace phl;

namespace
{
    auto sequents(const char * theory, const char * text) -> std::vector<Sequent>
    {
        return parse_sequents(*corpus_theory(theory)->signature, text);
    }
}

TEST_CASE("operator laws on sampled classes")
{
    for (auto [name, k] : {std::pair{"set", 3}, std::pair{"pos", 3}, std::pair{"urel", 2}, std::pair{"idem", 2}}) {
        auto u = enumerate_models(corpus_theory(name), k);
        ClosureContext ctx(u);
        auto classes = sample_classes(u, 3, 24);
        auto report = operator_law_report(ctx, classes, 3);
        CHECK_MESSAGE(report.ok(), name << ": " << (report.ok() ? "" : report.violations.front().law));
        CHECK(report.law_instances == 6 * classes.size());
        for (const auto & c : classes) {
            auto r = ctx.hsp_closure(c);
            CHECK(r.verified());
            CHECK(c.subset_of(r.closure));
        }
    }
}

TEST_CASE("P, Sc and H by hand on sets")
{
    auto u = enumerate_models(corpus_theory("set"), 3);
    ClosureContext ctx(u);
    REQUIRE(ctx.uses_exact_rule());
    auto two = ModelClass::of(u, {2});
    // products of 2 within the bound: 1 (empty product) and 2
    CHECK(ctx.P(two).indices() == std::vector<std::size_t>{1, 2});
    // closed subobjects: 0, 1, 2
    CHECK(ctx.Sc(two).indices() == std::vector<std::size_t>{0, 1, 2});
    // surjective images
    CHECK(ctx.H(two).indices() == std::vector<std::size_t>{1, 2});
    CHECK(ctx.R(two).indices() == std::vector<std::size_t>{1, 2});
    CHECK(ctx.hsp_closure(two).closure == ModelClass::all(u));
    // the empty product is 1, and 0 is a closed subobject of it
    CHECK(ctx.hsp_closure(ModelClass::empty(u)).closure.indices() == std::vector<std::size_t>{0, 1});
}

TEST_CASE("ScP separates")
{
    auto u = enumerate_models(corpus_theory("pos"), 3);
    ClosureContext ctx(u);
    // the 2-chain embeds every finite poset into a power of itself
    auto chain2 = ModelClass::of(u, {*u->index_of(*chain_poset_structure(2))});
    CHECK(ctx.ScP(chain2) == ModelClass::all(u));
    auto discrete = ModelClass::of(u, {*u->index_of(*discrete_poset_structure(2))});
    for (auto i : ctx.ScP(discrete).indices())
        for (Element a = 0; a < static_cast<Element>(u->models[i]->carrier_size(0)); ++a)
            for (Element b = 0; b < static_cast<Element>(u->models[i]->carrier_size(0)); ++b)
                CHECK(u->models[i]->holds(0, {a, b}) == (a == b));
}

TEST_CASE("definable classes are hsp closed")
{
    struct Case
    {
        const char * theory;
        std::size_t bound;
        const char * text;
    };
    for (auto c : {Case{"set", 3, "[x:X, y:X] top |- x = y"}, Case{"pos", 3, "[x:X, y:X] leq(x, y) |- x = y"},
             Case{"pos", 3, "[x:X, y:X] top |- leq(x, y)"}, Case{"urel", 2, "[x:X] top |- P(x)"},
             Case{"urel", 2, "[x:X, y:X] P(x) & P(y) |- x = y"}, Case{"idem", 2, "[x:X] top |- f(x) = x"}}) {
        auto u = enumerate_models(corpus_theory(c.theory), c.bound);
        auto e = definable_class(u, sequents(c.theory, c.text));
        ClosureContext ctx(u);
        auto r = ctx.hsp_closure(e);
        CHECK_MESSAGE(r.closure == e, c.theory << ": " << c.text);
        CHECK(r.verified());
    }
}

TEST_CASE("locally retractive class is not closed under filtered colimits")
{
    auto u = enumerate_models(corpus_theory("remark-locret(2)"), 2);
    auto seq = remark_locret_defining_sequent(2);
    auto e = definable_class(u, {seq});
    ClosureContext ctx(u);
    CHECK(ctx.P(e) == e);
    CHECK(ctx.Sc(e) == e);
    CHECK(ctx.R(e) == e);
    for (std::size_t n = 0; n <= 2; ++n)
        CHECK(sequent_valid(*remark_A(n, 2), seq));
    auto colim = chain_colimit(corpus_chain("remark-A"), 6);
    REQUIRE(colim.stable);
    CHECK_FALSE(sequent_valid(*colim.colimit, seq));
    CHECK(u->index_of(*colim.colimit));
}

TEST_CASE("bounded morphism checks")
{
    auto bad = check_theory_morphism_bounded(corpus_morphism("pos_to_brel"), 2);
    REQUIRE_FALSE(bad.ok());
    // reflexivity fails first on the one-point structure without a loop
    CHECK(bad.countermodels.front().axiom == 0);
    CHECK(bad.target_universe->models[bad.countermodels.front().model]->carrier_size(0) == 1);
    CHECK(check_theory_morphism_bounded(corpus_morphism("pointed_to_group"), 3).ok());
    auto preord = check_theory_morphism_bounded(corpus_morphism("pos_to_preord"), 2);
    REQUIRE(preord.countermodels.size() == 1);
    CHECK(preord.countermodels.front().axiom == 1);
}
