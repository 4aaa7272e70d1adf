#include <phl/repro.hh>

#include <doctest.h>

#include <regex>
#include <set>
#include <sstream>

using namespace phl;

TEST_CASE("targets are uniquely named and sorted")
{
    const auto & ts = reproduction_targets();
    REQUIRE(ts.size() >= 30);
    std::set<std::string> names;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        names.insert(ts[i].name);
        if (i > 0)
            CHECK(ts[i - 1].name < ts[i].name);
        CHECK(! ts[i].provenance.kind.empty());
    }
    CHECK(names.size() == ts.size());
    CHECK(find_target("cospan-components"));
    CHECK_FALSE(find_target("nope"));
}

TEST_CASE("every target reproduces and the JSON report is deterministic")
{
    std::vector<const ReproductionTarget *> all;
    for (const auto & t : reproduction_targets())
        all.push_back(&t);
    auto strip = [](std::string s) { return std::regex_replace(s, std::regex{"\"runtime_ms\": [0-9.e+-]+"}, ""); };
    std::ostringstream a, b;
    auto first = run_reproductions(all, 1, 4);
    emit_report(a, first, ReportFormat::json);
    emit_report(b, run_reproductions(all, 1, 1), ReportFormat::json);
    CHECK(strip(a.str()) == strip(b.str()));
    for (const auto & r : first)
        CHECK_MESSAGE(r.verdict() == "match", r.target->name);
    auto j = nlohmann::json::parse(a.str());
    CHECK(j["schema"] == "phl-repro/1");
    CHECK(j["summary"] == std::to_string(all.size()) + "/" + std::to_string(all.size()) + " reproductions match");
}

TEST_CASE("errors are reported, not thrown")
{
    ReproductionTarget broken{"broken", "", {}, {"trivial", ""}, 0, "", [](std::uint64_t) -> TargetOutcome { throw PhlError{"boom"}; }};
    auto r = run_reproduction(broken, 0);
    CHECK(r.verdict() == "error");
    CHECK(*r.error == "boom");
}

TEST_CASE("listing filters by tag")
{
    std::ostringstream out;
    list_corpus(out, "gset", ReportFormat::json);
    auto j = nlohmann::json::parse(out.str());
    CHECK(j.size() == 4);
    for (const auto & row : j)
        CHECK(row["kind"] == "target");
}

TEST_CASE("acc targets name their witness structures")
{
    const auto * t = find_target("acc-lattice-M-h4");
    REQUIRE(t);
    auto r = run_reproduction(*t, 1);
    REQUIRE(r.verdict() == "match");
    CHECK(r.outcome.evidence["witness"] == nlohmann::ordered_json{"M_3", "M_2"});
}

TEST_CASE("listing covers the corpus inventory")
{
    std::ostringstream out;
    list_corpus(out, "", ReportFormat::json);
    auto j = nlohmann::json::parse(out.str());
    std::set<std::string> names;
    for (const auto & row : j)
        names.insert(row["name"].get<std::string>());
    for (const auto * n : {"pos", "set", "urel", "per", "cospan", "bowtie", "end", "bounded-lattice", "n-const(1)", "n-const(4)",
             "remark-locret(K)", "remark-constants(K)"})
        CHECK_MESSAGE(names.count(n) == 1, n);
    std::ostringstream ce;
    list_corpus(ce, "counterexample", ReportFormat::json);
    CHECK(nlohmann::json::parse(ce.str()).size() == 2);
}
