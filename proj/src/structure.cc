#include <phl/structure.hh>

#include <set>
#include <sstream>

using nlohmann::json;
using nlohmann::ordered_json;
using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace phl
{
    namespace
    {
        auto product_size(const vector<vector<string>> & carriers, const vector<SortId> & sorts) -> size_t
        {
            size_t n = 1;
            for (auto s : sorts)
                n *= carriers[s].size();
            return n;
        }
    }

    PartialStructure::PartialStructure(SignaturePtr sig, vector<vector<string>> carriers) :
        _sig(std::move(sig)),
        _carriers(std::move(carriers))
    {
        if (_carriers.size() != _sig->sorts().size())
            throw PhlError{"structure has " + std::to_string(_carriers.size()) + " carriers for " + std::to_string(_sig->sorts().size()) + " sorts"};
        for (const auto & f : _sig->functions())
            _function_tables.emplace_back(product_size(_carriers, f.args), undefined);
        for (const auto & r : _sig->relations())
            _relation_tables.emplace_back(product_size(_carriers, r.args), 0);
    }

    auto PartialStructure::with_sizes(SignaturePtr sig, const vector<size_t> & sizes) -> PartialStructure
    {
        vector<vector<string>> carriers;
        for (auto n : sizes) {
            carriers.emplace_back();
            for (size_t i = 0; i < n; ++i)
                carriers.back().push_back(std::to_string(i));
        }
        return PartialStructure{std::move(sig), std::move(carriers)};
    }

    auto PartialStructure::carrier_sizes() const -> vector<size_t>
    {
        vector<size_t> out;
        for (const auto & c : _carriers)
            out.push_back(c.size());
        return out;
    }

    auto PartialStructure::find_element(SortId s, const string & label) const -> optional<Element>
    {
        for (size_t i = 0; i < _carriers[s].size(); ++i)
            if (_carriers[s][i] == label)
                return static_cast<Element>(i);
        return std::nullopt;
    }

    auto PartialStructure::total_size() const -> size_t
    {
        size_t n = 0;
        for (const auto & c : _carriers)
            n += c.size();
        return n;
    }

    namespace
    {
        auto mixed_index(const vector<vector<string>> & carriers, const vector<SortId> & sorts, const vector<Element> & args) -> size_t
        {
            if (args.size() != sorts.size())
                throw PhlError{"wrong number of arguments"};
            size_t index = 0;
            for (size_t i = 0; i < sorts.size(); ++i) {
                auto n = carriers[sorts[i]].size();
                if (args[i] < 0 || static_cast<size_t>(args[i]) >= n)
                    throw PhlError{"argument outside its carrier"};
                index = index * n + static_cast<size_t>(args[i]);
            }
            return index;
        }

        auto mixed_args(const vector<vector<string>> & carriers, const vector<SortId> & sorts, size_t index) -> vector<Element>
        {
            vector<Element> out(sorts.size());
            for (size_t i = sorts.size(); i-- > 0;) {
                auto n = carriers[sorts[i]].size();
                out[i] = static_cast<Element>(index % n);
                index /= n;
            }
            return out;
        }
    }

    auto PartialStructure::function_index(FunctionId f, const vector<Element> & args) const -> size_t
    {
        return mixed_index(_carriers, _sig->functions()[f].args, args);
    }

    auto PartialStructure::relation_index(RelationId r, const vector<Element> & args) const -> size_t
    {
        return mixed_index(_carriers, _sig->relations()[r].args, args);
    }

    auto PartialStructure::function_args(FunctionId f, size_t index) const -> vector<Element>
    {
        return mixed_args(_carriers, _sig->functions()[f].args, index);
    }

    auto PartialStructure::relation_args(RelationId r, size_t index) const -> vector<Element>
    {
        return mixed_args(_carriers, _sig->relations()[r].args, index);
    }

    auto PartialStructure::value(FunctionId f, const vector<Element> & args) const -> Element
    {
        return _function_tables[f][function_index(f, args)];
    }

    auto PartialStructure::holds(RelationId r, const vector<Element> & args) const -> bool
    {
        return _relation_tables[r][relation_index(r, args)] == 1;
    }

    auto PartialStructure::set_value(FunctionId f, const vector<Element> & args, Element v) -> void
    {
        auto result = _sig->functions()[f].result;
        if (v != undefined && (v < 0 || static_cast<size_t>(v) >= _carriers[result].size()))
            throw PhlError{"value outside the result carrier of '" + _sig->functions()[f].name + "'"};
        _function_tables[f][function_index(f, args)] = v;
    }

    auto PartialStructure::set_holds(RelationId r, const vector<Element> & args, bool v) -> void
    {
        _relation_tables[r][relation_index(r, args)] = v ? 1 : 0;
    }

    auto PartialStructure::operator==(const PartialStructure & other) const -> bool
    {
        return (_sig == other._sig || *_sig == *other._sig) && _carriers == other._carriers && _function_tables == other._function_tables
            && _relation_tables == other._relation_tables;
    }

    auto check_structure(const PartialStructure & m) -> void
    {
        const auto & sig = m.signature();
        for (SortId s = 0; s < sig.sorts().size(); ++s) {
            std::set<string> seen;
            for (const auto & l : m.labels(s))
                if (! seen.insert(l).second)
                    throw PhlError{"duplicate label '" + l + "' in sort '" + sig.sorts()[s] + "'"};
        }
        for (FunctionId f = 0; f < sig.functions().size(); ++f) {
            auto n = static_cast<Element>(m.carrier_size(sig.functions()[f].result));
            for (auto v : m.function_table(f))
                if (v != undefined && (v < 0 || v >= n))
                    throw PhlError{"table of '" + sig.functions()[f].name + "' has a value outside its carrier"};
        }
        for (RelationId r = 0; r < sig.relations().size(); ++r)
            for (auto v : m.relation_table(r))
                if (v > 1)
                    throw PhlError{"table of '" + sig.relations()[r].name + "' is not boolean"};
    }

    auto structure_to_json(const PartialStructure & m, const string & signature_name) -> ordered_json
    {
        const auto & sig = m.signature();
        ordered_json j;
        j["signature"] = signature_name;
        j["carriers"] = ordered_json::object();
        for (SortId s = 0; s < sig.sorts().size(); ++s)
            j["carriers"][sig.sorts()[s]] = m.labels(s);

        j["functions"] = ordered_json::object();
        for (FunctionId f = 0; f < sig.functions().size(); ++f) {
            const auto & fs = sig.functions()[f];
            auto entries = ordered_json::array();
            for (size_t i = 0; i < m.table_size(f); ++i) {
                auto v = m.function_table(f)[i];
                if (v == undefined)
                    continue;
                auto args = m.function_args(f, i);
                auto row = ordered_json::array();
                for (size_t a = 0; a < args.size(); ++a)
                    row.push_back(m.label(fs.args[a], args[a]));
                row.push_back(m.label(fs.result, v));
                entries.push_back(std::move(row));
            }
            j["functions"][fs.name] = std::move(entries);
        }

        j["relations"] = ordered_json::object();
        for (RelationId r = 0; r < sig.relations().size(); ++r) {
            const auto & rs = sig.relations()[r];
            auto entries = ordered_json::array();
            for (size_t i = 0; i < m.relation_size(r); ++i) {
                if (! m.relation_table(r)[i])
                    continue;
                auto args = m.relation_args(r, i);
                auto row = ordered_json::array();
                for (size_t a = 0; a < args.size(); ++a)
                    row.push_back(m.label(rs.args[a], args[a]));
                entries.push_back(std::move(row));
            }
            j["relations"][rs.name] = std::move(entries);
        }
        return j;
    }

    namespace
    {
        auto label_of(const json & v) -> string
        {
            if (v.is_string())
                return v.get<string>();
            if (v.is_number_integer())
                return std::to_string(v.get<long long>());
            throw PhlError{"element labels must be strings or integers"};
        }

        auto element_of(const PartialStructure & m, SortId s, const json & v) -> Element
        {
            auto l = label_of(v);
            if (auto e = m.find_element(s, l))
                return *e;
            throw PhlError{"unknown element '" + l + "' of sort '" + m.signature().sorts()[s] + "'"};
        }
    }

    auto structure_from_json(const json & j, SignaturePtr sig) -> PartialStructure
    {
        vector<vector<string>> carriers(sig->sorts().size());
        if (j.contains("carriers")) {
            for (const auto & [name, labels] : j.at("carriers").items()) {
                auto s = sig->find_sort(name);
                if (! s)
                    throw PhlError{"unknown sort '" + name + "' in carriers"};
                for (const auto & l : labels)
                    carriers[*s].push_back(label_of(l));
            }
        }
        PartialStructure m{sig, std::move(carriers)};
        check_structure(m);

        if (j.contains("functions")) {
            for (const auto & [name, rows] : j.at("functions").items()) {
                auto f = sig->find_function(name);
                if (! f)
                    throw PhlError{"unknown function symbol '" + name + "'"};
                const auto & fs = sig->functions()[*f];
                for (const auto & row : rows) {
                    if (! row.is_array() || row.size() != fs.args.size() + 1)
                        throw PhlError{"entry of '" + name + "' must list " + std::to_string(fs.args.size()) + " arguments and a value"};
                    vector<Element> args;
                    for (size_t a = 0; a < fs.args.size(); ++a)
                        args.push_back(element_of(m, fs.args[a], row[a]));
                    auto v = element_of(m, fs.result, row[fs.args.size()]);
                    auto old = m.value(*f, args);
                    if (old != undefined && old != v)
                        throw PhlError{"table of '" + name + "' is not single-valued"};
                    m.set_value(*f, args, v);
                }
            }
        }

        if (j.contains("relations")) {
            for (const auto & [name, rows] : j.at("relations").items()) {
                auto r = sig->find_relation(name);
                if (! r)
                    throw PhlError{"unknown relation symbol '" + name + "'"};
                const auto & rs = sig->relations()[*r];
                for (const auto & row : rows) {
                    if (! row.is_array() || row.size() != rs.args.size())
                        throw PhlError{"tuple of '" + name + "' has the wrong length"};
                    vector<Element> args;
                    for (size_t a = 0; a < rs.args.size(); ++a)
                        args.push_back(element_of(m, rs.args[a], row[a]));
                    m.set_holds(*r, args, true);
                }
            }
        }
        return m;
    }

    auto describe(const PartialStructure & m) -> string
    {
        const auto & sig = m.signature();
        std::ostringstream out;
        out << "{";
        for (SortId s = 0; s < sig.sorts().size(); ++s)
            out << (s ? ", " : "") << sig.sorts()[s] << ":" << m.carrier_size(s);
        out << "}";
        for (FunctionId f = 0; f < sig.functions().size(); ++f) {
            size_t defined = 0;
            for (auto v : m.function_table(f))
                defined += v != undefined;
            out << " " << sig.functions()[f].name << ":" << defined << "/" << m.table_size(f);
        }
        for (RelationId r = 0; r < sig.relations().size(); ++r) {
            size_t n = 0;
            for (auto v : m.relation_table(r))
                n += v;
            out << " " << sig.relations()[r].name << ":" << n;
        }
        return out.str();
    }
}
