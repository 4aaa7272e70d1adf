#ifndef PHL_STRUCTURE_HH
#define PHL_STRUCTURE_HH 1

#include <phl/syntax.hh>

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace phl
{
    using Element = std::int32_t;

    inline constexpr Element undefined = -1;
    /// Only used by the enumerator for cells it has not decided yet.
    inline constexpr Element unassigned = -2;

    /// A finite partial structure. Function tables are dense, indexed by the
    /// argument tuple in mixed radix (first argument most significant), with
    /// `undefined` for absent entries. Relation tables hold 0 or 1.
    class PartialStructure
    {
    public:
        PartialStructure(SignaturePtr sig, std::vector<std::vector<std::string>> carriers);

        /// Carriers labelled "0", "1", ...
        static auto with_sizes(SignaturePtr sig, const std::vector<std::size_t> & sizes) -> PartialStructure;

        [[nodiscard]] auto signature() const -> const Signature & { return *_sig; }
        [[nodiscard]] auto signature_ptr() const -> const SignaturePtr & { return _sig; }

        [[nodiscard]] auto carrier_size(SortId s) const -> std::size_t { return _carriers[s].size(); }
        [[nodiscard]] auto carrier_sizes() const -> std::vector<std::size_t>;
        [[nodiscard]] auto labels(SortId s) const -> const std::vector<std::string> & { return _carriers[s]; }
        [[nodiscard]] auto label(SortId s, Element e) const -> const std::string & { return _carriers[s][e]; }
        [[nodiscard]] auto find_element(SortId s, const std::string & label) const -> std::optional<Element>;
        [[nodiscard]] auto total_size() const -> std::size_t;

        [[nodiscard]] auto table_size(FunctionId f) const -> std::size_t { return _function_tables[f].size(); }
        [[nodiscard]] auto relation_size(RelationId r) const -> std::size_t { return _relation_tables[r].size(); }

        [[nodiscard]] auto function_index(FunctionId f, const std::vector<Element> & args) const -> std::size_t;
        [[nodiscard]] auto relation_index(RelationId r, const std::vector<Element> & args) const -> std::size_t;
        [[nodiscard]] auto function_args(FunctionId f, std::size_t index) const -> std::vector<Element>;
        [[nodiscard]] auto relation_args(RelationId r, std::size_t index) const -> std::vector<Element>;

        [[nodiscard]] auto value(FunctionId f, const std::vector<Element> & args) const -> Element;
        [[nodiscard]] auto holds(RelationId r, const std::vector<Element> & args) const -> bool;
        auto set_value(FunctionId f, const std::vector<Element> & args, Element v) -> void;
        auto set_holds(RelationId r, const std::vector<Element> & args, bool v) -> void;

        [[nodiscard]] auto function_table(FunctionId f) const -> const std::vector<Element> & { return _function_tables[f]; }
        [[nodiscard]] auto relation_table(RelationId r) const -> const std::vector<std::uint8_t> & { return _relation_tables[r]; }
        auto function_table(FunctionId f) -> std::vector<Element> & { return _function_tables[f]; }
        auto relation_table(RelationId r) -> std::vector<std::uint8_t> & { return _relation_tables[r]; }

        /// Optional display name used in reports.
        std::string name;

        /// Label- and table-wise equality; the display name is ignored.
        auto operator==(const PartialStructure & other) const -> bool;

    private:
        SignaturePtr _sig;
        std::vector<std::vector<std::string>> _carriers;
        std::vector<std::vector<Element>> _function_tables;
        std::vector<std::vector<std::uint8_t>> _relation_tables;
    };

    using StructurePtr = std::shared_ptr<const PartialStructure>;

    /// Per sort, the image of each element.
    using SortMap = std::vector<std::vector<Element>>;

    struct Homomorphism
    {
        StructurePtr source;
        StructurePtr target;
        SortMap maps;
    };

    /// Checks carriers and tables against the signature; throws PhlError.
    auto check_structure(const PartialStructure & m) -> void;

    auto structure_to_json(const PartialStructure & m, const std::string & signature_name) -> nlohmann::ordered_json;
    auto structure_from_json(const nlohmann::json & j, SignaturePtr sig) -> PartialStructure;

    /// One-line human summary, e.g. "{a:2, b:1} f:3/4 R:2".
    auto describe(const PartialStructure & m) -> std::string;
}

#endif
