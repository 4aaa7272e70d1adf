#include <phl/enumerate.hh>
#include <phl/parser.hh>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace phl
{
    auto ModelUniverse::find_key(const CanonicalKey & key) const -> optional<size_t>
    {
        auto it = _index.find(key);
        if (it == _index.end())
            return std::nullopt;
        return it->second;
    }

    auto ModelUniverse::index_of(const PartialStructure & m) const -> optional<size_t>
    {
        for (auto n : m.carrier_sizes())
            if (n > bound)
                return std::nullopt;
        return find_key(canonical_form(m).key);
    }

    auto ModelUniverse::finish() -> void
    {
        _index.clear();
        for (size_t i = 0; i < keys.size(); ++i)
            _index.emplace(keys[i], i);
    }

    auto theory_hash(const Theory & t) -> string
    {
        auto text = print_theory(t);
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : text) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    auto make_universe(const TheoryPtr & t, size_t bound, const vector<StructurePtr> & models) -> UniversePtr
    {
        struct Entry
        {
            size_t total;
            CanonicalKey key;
            StructurePtr model;
        };
        std::map<CanonicalKey, Entry> unique;
        for (const auto & m : models) {
            auto form = canonical_form(*m);
            if (unique.count(form.key))
                continue;
            auto canon = std::make_shared<PartialStructure>(canonical_structure(*m));
            unique.emplace(form.key, Entry{m->total_size(), form.key, canon});
        }

        vector<Entry> entries;
        for (auto & [k, e] : unique)
            entries.push_back(std::move(e));
        std::stable_sort(entries.begin(), entries.end(), [](const Entry & a, const Entry & b) {
            if (a.total != b.total)
                return a.total < b.total;
            return a.key < b.key;
        });

        auto u = std::make_shared<ModelUniverse>();
        u->theory = t;
        u->bound = bound;
        for (auto & e : entries) {
            u->models.push_back(e.model);
            u->keys.push_back(std::move(e.key));
        }
        u->finish();
        return u;
    }

    namespace
    {
        class Enumerator
        {
        public:
            Enumerator(const TheoryPtr & t, size_t budget) :
                _theory(t),
                _compiled(*t),
                _budget(budget)
            {
                const auto & sig = *t->signature;
                _function_axioms.resize(sig.functions().size());
                _relation_axioms.resize(sig.relations().size());
                for (size_t a = 0; a < _compiled.axioms().size(); ++a) {
                    for (FunctionId f = 0; f < sig.functions().size(); ++f)
                        if (_compiled.axioms()[a].mentions_function(f))
                            _function_axioms[f].push_back(a);
                    for (RelationId r = 0; r < sig.relations().size(); ++r)
                        if (_compiled.axioms()[a].mentions_relation(r))
                            _relation_axioms[r].push_back(a);
                }
            }

            auto run(size_t bound) -> vector<StructurePtr>
            {
                const auto & sig = _theory->signature;
                vector<size_t> sizes(sig->sorts().size(), 0);
                while (true) {
                    sizes_case(sizes);
                    size_t i = 0;
                    for (; i < sizes.size(); ++i) {
                        if (++sizes[i] <= bound)
                            break;
                        sizes[i] = 0;
                    }
                    if (i == sizes.size())
                        break;
                }
                return std::move(_found);
            }

        private:
            struct Cell
            {
                bool is_function;
                size_t symbol;
                size_t index;
                Element options; // values 0..options-1, plus undefined for functions
            };

            TheoryPtr _theory;
            CompiledTheory _compiled;
            size_t _budget;
            size_t _nodes = 0;
            vector<vector<size_t>> _function_axioms, _relation_axioms;
            vector<StructurePtr> _found;
            std::set<CanonicalKey> _seen;

            auto sizes_case(const vector<size_t> & sizes) -> void
            {
                const auto & sig = _theory->signature;
                auto m = PartialStructure::with_sizes(sig, sizes);
                vector<Cell> cells;
                for (FunctionId f = 0; f < sig->functions().size(); ++f) {
                    auto & table = m.function_table(f);
                    std::fill(table.begin(), table.end(), unassigned);
                    for (size_t i = 0; i < table.size(); ++i)
                        cells.push_back(Cell{true, f, i, static_cast<Element>(sizes[sig->functions()[f].result])});
                }
                for (RelationId r = 0; r < sig->relations().size(); ++r) {
                    auto & table = m.relation_table(r);
                    std::fill(table.begin(), table.end(), 2);
                    for (size_t i = 0; i < table.size(); ++i)
                        cells.push_back(Cell{false, r, i, 2});
                }

                for (const auto & a : _compiled.axioms())
                    if (! a.possibly_valid(m))
                        return;
                assign(m, cells, 0);
            }

            auto assign(PartialStructure & m, const vector<Cell> & cells, size_t ci) -> void
            {
                if (ci == cells.size()) {
                    if (_compiled.is_model(m) && _seen.insert(canonical_form(m).key).second)
                        _found.push_back(std::make_shared<PartialStructure>(m));
                    return;
                }
                const auto & c = cells[ci];
                const auto & axioms = c.is_function ? _function_axioms[c.symbol] : _relation_axioms[c.symbol];
                Element first = c.is_function ? undefined : 0;
                for (Element v = first; v < c.options; ++v) {
                    if (++_nodes > _budget)
                        throw BudgetExceeded{"model enumeration for '" + _theory->name + "' exceeded its budget of " + std::to_string(_budget) + " nodes"};
                    if (c.is_function)
                        m.function_table(c.symbol)[c.index] = v;
                    else
                        m.relation_table(c.symbol)[c.index] = static_cast<std::uint8_t>(v);
                    bool ok = true;
                    for (auto a : axioms)
                        if (! _compiled.axioms()[a].possibly_valid(m)) {
                            ok = false;
                            break;
                        }
                    if (ok)
                        assign(m, cells, ci + 1);
                }
                if (c.is_function)
                    m.function_table(c.symbol)[c.index] = unassigned;
                else
                    m.relation_table(c.symbol)[c.index] = 2;
            }
        };

        auto cache_path(const EnumerationOptions & options, const Theory & t, size_t bound) -> std::filesystem::path
        {
            return std::filesystem::path{options.cache_dir} / (theory_hash(t) + "_k" + std::to_string(bound) + ".jsonl");
        }
    }

    auto enumerate_models(const TheoryPtr & t, size_t bound, const EnumerationOptions & options) -> UniversePtr
    {
        auto report = validate_theory(*t);
        if (! report.ok())
            throw PhlError{"theory '" + t->name + "' is ill-formed: " + report.violations.front().message};

        if (! options.cache_dir.empty()) {
            auto path = cache_path(options, *t, bound);
            std::ifstream in{path};
            if (in) {
                CompiledTheory compiled{*t};
                vector<StructurePtr> models;
                string line;
                while (std::getline(in, line)) {
                    if (line.empty())
                        continue;
                    auto m = std::make_shared<PartialStructure>(structure_from_json(nlohmann::json::parse(line), t->signature));
                    if (! compiled.is_model(*m))
                        throw PhlError{"cache file " + path.string() + " holds a non-model"};
                    models.push_back(m);
                }
                return make_universe(t, bound, models);
            }
        }

        Enumerator e{t, options.budget};
        auto u = make_universe(t, bound, e.run(bound));

        if (! options.cache_dir.empty()) {
            std::filesystem::create_directories(options.cache_dir);
            auto path = cache_path(options, *t, bound);
            auto tmp = path;
            tmp += ".tmp";
            {
                std::ofstream out{tmp};
                for (const auto & m : u->models)
                    out << structure_to_json(*m, t->name).dump() << "\n";
            }
            std::filesystem::rename(tmp, path);
        }
        return u;
    }
}
