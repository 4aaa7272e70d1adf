#include <phl/closure.hh>
#include <phl/corpus.hh>
#include <phl/enumerate.hh>
#include <phl/group.hh>
#include <phl/homsearch.hh>
#include <phl/parser.hh>
#include <phl/repro.hh>
#include <phl/sigma.hh>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using nlohmann::ordered_json;
using std::size_t;
using std::string;
using std::vector;

namespace
{
    using namespace phl;

    auto parse_format(const string & f) -> ReportFormat
    {
        return f == "json" ? ReportFormat::json : ReportFormat::text;
    }

    struct TheoryOption
    {
        string name;
        string file;

        auto resolve() const -> TheoryPtr
        {
            if (file.empty())
                return corpus_theory(name);
            auto doc = parse_document(read_file(file), file, &corpus_document());
            if (name.empty()) {
                if (doc.theories.size() != 1)
                    throw PhlError{file + " holds " + std::to_string(doc.theories.size()) + " theories; name one"};
                return doc.theories.front();
            }
            if (auto t = doc.find_theory(name))
                return t;
            return corpus_theory(name);
        }
    };

    auto load_structure(const TheoryPtr & t, const string & path) -> StructurePtr
    {
        std::ifstream in{path};
        if (! in)
            throw PhlError{"cannot open " + path};
        auto j = nlohmann::json::parse(in);
        auto m = std::make_shared<PartialStructure>(structure_from_json(j, t->signature));
        if (! is_model(*m, *t))
            throw PhlError{path + " is not a model of " + t->name};
        m->name = path;
        return m;
    }

    auto options_for(const string & cache_dir) -> EnumerationOptions
    {
        EnumerationOptions o;
        o.cache_dir = cache_dir;
        return o;
    }

    auto map_to_json(const Homomorphism & h) -> ordered_json
    {
        ordered_json j = ordered_json::object();
        const auto & sig = h.source->signature();
        for (SortId s = 0; s < sig.sorts().size(); ++s) {
            ordered_json m = ordered_json::object();
            for (size_t e = 0; e < h.maps[s].size(); ++e)
                m[h.source->label(s, static_cast<Element>(e))] = h.target->label(s, h.maps[s][e]);
            j[sig.sorts()[s]] = std::move(m);
        }
        return j;
    }

    auto parse_indices(const string & text, size_t limit) -> vector<size_t>
    {
        vector<size_t> out;
        std::stringstream in{text};
        for (string item; std::getline(in, item, ',');) {
            if (item.empty())
                continue;
            auto i = static_cast<size_t>(std::stoul(item));
            if (i >= limit)
                throw PhlError{"model index " + item + " out of range"};
            out.push_back(i);
        }
        return out;
    }
}

int main(int argc, char ** argv)
{
    CLI::App app{"phl: partial Horn logic workbench"};
    app.require_subcommand(1);

    TheoryOption theory;
    size_t bound = 2;
    string format = "text";
    string cache_dir;
    auto add_theory = [&](CLI::App * sub) {
        sub->add_option("theory", theory.name, "corpus theory, e.g. pos or n-const(3)");
        sub->add_option("--file", theory.file, "DSL file to load the theory from");
        sub->add_option("-k,--max-size,--bound", bound, "bound on every carrier")->check(CLI::NonNegativeNumber);
        sub->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--cache-dir", cache_dir, "universe cache directory");
    };

    auto * check = app.add_subcommand("check", "parse and validate a DSL file");
    string check_file;
    check->add_option("file", check_file)->required();

    auto * models = app.add_subcommand("models", "enumerate models up to isomorphism");
    add_theory(models);
    bool show_json = false;
    models->add_flag("--structures", show_json, "print every model as JSON");

    auto * hom = app.add_subcommand("hom", "search for homomorphisms between two JSON models");
    string hom_from, hom_to;
    size_t hom_limit = 0;
    hom->add_option("a", hom_from, "source model")->required();
    hom->add_option("b", hom_to, "target model")->required();
    hom->add_option("--theory", theory.name, "theory; defaults to the \"signature\" field of the source");
    hom->add_option("--file", theory.file, "DSL file to load the theory from");
    hom->add_option("--enumerate", hom_limit, "list up to N distinct homomorphisms");
    hom->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto * sigma = app.add_subcommand("sigma", "components of the bounded hom quiver");
    add_theory(sigma);

    auto * closure = app.add_subcommand("closure", "apply a closure operator to a class of models");
    add_theory(closure);
    string op = "hsp", members;
    closure->add_option("--op", op)->check(CLI::IsMember({"P", "Sc", "H", "R", "ScP", "hsp"}));
    closure->add_option("--class", members, "comma-separated model indices, as printed by models");
    string rho_name;
    closure->add_option("--rho", rho_name, "morphism into the theory; local retractions are checked on reducts along it");

    auto * acc = app.add_subcommand("acc", "stabilization probe of a corpus chain");
    string chain;
    size_t horizon = 5;
    acc->add_option("chain", chain)->required();
    acc->add_option("--horizon", horizon)->check(CLI::Range(2, 64));
    acc->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto * repro = app.add_subcommand("repro", "run reproduction targets");
    bool all = false;
    vector<string> names;
    std::uint64_t seed = 1;
    size_t jobs = 0;
    repro->add_flag("--all", all);
    repro->add_option("targets", names);
    repro->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    repro->add_option("--seed", seed);
    repro->add_option("-j,--jobs", jobs);

    auto * list = app.add_subcommand("list", "list corpus entries and targets");
    string tag;
    list->add_option("--tag", tag);
    list->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) {
            auto doc = parse_document(read_file(check_file), check_file, &corpus_document());
            bool ok = true;
            for (const auto & t : doc.theories) {
                auto r = validate_theory(*t);
                std::cout << "theory " << t->name << ": " << t->axioms.size() << " axioms" << (r.ok() ? "" : ", ill-formed") << '\n';
                for (const auto & v : r.violations)
                    std::cout << "    " << v.where << ": " << v.message << '\n';
                ok = ok && r.ok();
            }
            for (const auto & rho : doc.morphisms) {
                check_morphism_arities(rho);
                std::cout << "morphism " << rho.name << ": " << rho.source->name << " -> " << rho.target->name << '\n';
            }
            for (const auto & rt : doc.relatives)
                std::cout << "relative " << rt.name << " over " << rt.base->name << ": " << rt.operations.size() << " operations, "
                          << rt.judgments.size() << " judgments\n";
            return ok ? 0 : 1;
        }

        if (acc->parsed()) {
            auto r = acc_probe(corpus_chain(chain), horizon);
            if (format == "json") {
                ordered_json j{{"chain", chain}, {"horizon", r.horizon}, {"stabilized", r.stabilized}, {"stages", r.stage_names}};
                if (r.stabilized)
                    j["at"] = r.at;
                j["witnesses"] = r.witnesses;
                std::cout << j.dump(2) << '\n';
            }
            else {
                std::cout << chain << ": " << (r.stabilized ? "Stabilized from stage " + std::to_string(r.at) : string{"NoStabilization"})
                          << " within horizon " << r.horizon << '\n';
                for (auto [m, n] : r.witnesses)
                    std::cout << "    no map " << r.stage_names[m] << " -> " << r.stage_names[n] << '\n';
            }
            return 0;
        }

        if (repro->parsed()) {
            vector<const ReproductionTarget *> chosen;
            if (all)
                for (const auto & t : reproduction_targets())
                    chosen.push_back(&t);
            for (const auto & n : names) {
                const auto * t = find_target(n);
                if (! t)
                    throw PhlError{"unknown target '" + n + "'"};
                chosen.push_back(t);
            }
            if (chosen.empty())
                throw PhlError{"name targets or pass --all"};
            auto results = run_reproductions(chosen, seed, jobs);
            emit_report(std::cout, results, parse_format(format));
            return std::all_of(results.begin(), results.end(), [](const auto & r) { return r.verdict() == "match"; }) ? 0 : 1;
        }

        if (list->parsed()) {
            list_corpus(std::cout, tag, parse_format(format));
            return 0;
        }

        if (hom->parsed()) {
            if (theory.name.empty() && theory.file.empty()) {
                std::ifstream in{hom_from};
                if (! in)
                    throw PhlError{"cannot open " + hom_from};
                auto j = nlohmann::json::parse(in);
                if (! j.contains("signature"))
                    throw PhlError{hom_from + " names no signature; pass --theory"};
                theory.name = j.at("signature").get<string>();
            }
            auto t = theory.resolve();
            auto m = load_structure(t, hom_from), n = load_structure(t, hom_to);
            vector<Homomorphism> found;
            if (hom_limit > 0)
                found = enumerate_homs(m, n, hom_limit);
            else if (auto h = find_hom(m, n))
                found.push_back(*h);
            if (format == "json") {
                ordered_json maps = ordered_json::array();
                for (const auto & h : found)
                    maps.push_back(map_to_json(h));
                std::cout << ordered_json{{"exists", ! found.empty()}, {"maps", maps}}.dump(2) << '\n';
            }
            else if (found.empty())
                std::cout << "no homomorphism\n";
            else
                for (const auto & h : found)
                    std::cout << "homomorphism: " << map_to_json(h).dump() << '\n';
            return found.empty() ? 1 : 0;
        }

        std::optional<TheoryMorphism> rho;
        if (closure->parsed() && ! rho_name.empty()) {
            if (! theory.file.empty()) {
                auto doc = parse_document(read_file(theory.file), theory.file, &corpus_document());
                if (const auto * r = doc.find_morphism(rho_name))
                    rho = *r;
            }
            if (! rho)
                rho = corpus_morphism(rho_name);
            if (theory.name.empty())
                theory.name = rho->target->name;
        }
        if (theory.name.empty() && theory.file.empty())
            throw PhlError{"name a theory or pass --file"};
        auto t = theory.resolve();
        if (rho && rho->target->name != t->name)
            throw PhlError{"morphism " + rho->name + " targets " + rho->target->name + ", not " + t->name};

        auto u = enumerate_models(t, bound, options_for(cache_dir));

        if (models->parsed()) {
            if (format == "json") {
                ordered_json j{{"theory", t->name}, {"bound", bound}, {"count", u->size()}};
                j["models"] = ordered_json::array();
                for (const auto & m : u->models)
                    j["models"].push_back(structure_to_json(*m, t->name));
                std::cout << j.dump(2) << '\n';
            }
            else {
                std::cout << u->size() << " models of " << t->name << " with carriers of size at most " << bound << '\n';
                for (size_t i = 0; i < u->size(); ++i) {
                    std::cout << "  [" << i << "] " << describe(*u->models[i]) << '\n';
                    if (show_json)
                        std::cout << "      " << structure_to_json(*u->models[i], t->name).dump() << '\n';
                }
            }
            return 0;
        }

        if (sigma->parsed()) {
            auto s = sigma_of_family(u->models);
            const string caveat = "computed over models with carriers of size at most " + std::to_string(bound)
                + "; components may merge or appear at larger bounds";
            if (format == "json") {
                ordered_json comps = ordered_json::array();
                for (const auto & c : s.components) {
                    ordered_json members = ordered_json::array();
                    for (auto v : c)
                        members.push_back(describe(*u->models[v]));
                    comps.push_back(std::move(members));
                }
                std::cout << ordered_json{{"theory", t->name}, {"bound", bound}, {"models", u->size()}, {"components", comps},
                                 {"order", s.poset.to_json()}, {"caveat", caveat}}
                                 .dump(2)
                          << '\n';
            }
            else {
                std::cout << s.size() << " components among " << u->size() << " models (" << caveat << ")\n";
                for (size_t c = 0; c < s.size(); ++c) {
                    std::cout << "  C" << c << ": " << describe(*u->models[s.components[c][0]]);
                    if (s.components[c].size() > 1)
                        std::cout << " and " << s.components[c].size() - 1 << " more";
                    std::cout << '\n';
                }
                for (auto [a, b] : s.poset.covers())
                    std::cout << "  C" << a << " -> C" << b << '\n';
            }
            return 0;
        }

        if (closure->parsed()) {
            ClosureContext ctx(u, rho);
            auto e = ModelClass::of(u, parse_indices(members, u->size()));
            ModelClass out = e;
            bool verified = true;
            if (op == "P")
                out = ctx.P(e);
            else if (op == "Sc")
                out = ctx.Sc(e);
            else if (op == "H")
                out = ctx.H(e);
            else if (op == "R")
                out = ctx.R(e);
            else if (op == "ScP")
                out = ctx.ScP(e);
            else {
                auto r = ctx.hsp_closure(e);
                out = r.closure;
                verified = r.verified();
            }
            if (format == "json")
                std::cout << ordered_json{{"op", op}, {"input", e.indices()}, {"output", out.indices()}, {"verified", verified}}.dump(2) << '\n';
            else {
                std::cout << op << " of {" << members << "}: " << out.count() << " of " << u->size() << " models"
                          << (verified ? "" : " (fixpoint check failed)") << '\n';
                for (auto i : out.indices())
                    std::cout << "  [" << i << "] " << describe(*u->models[i]) << '\n';
            }
            return verified ? 0 : 1;
        }
    }
    catch (const std::exception & e) {
        std::cerr << "phl: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
