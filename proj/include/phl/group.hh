#ifndef PHL_GROUP_HH
#define PHL_GROUP_HH 1

#include <phl/enumerate.hh>
#include <phl/sigma.hh>

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace phl
{
    inline constexpr std::size_t default_group_bound = 24;

    /// A finite group by its multiplication table: table[a][b] = ab.
    class FiniteGroup
    {
    public:
        /// Checks closure, associativity, identity and inverses. Throws
        /// PhlError on a bad table or an order above `max_order` (at most 64).
        FiniteGroup(std::vector<std::string> elements, std::vector<std::vector<std::size_t>> table, std::size_t max_order = default_group_bound);

        /// {"elements": [...], "table": [[...]]}, entries as labels or indices.
        static auto from_json(const nlohmann::json & j, std::size_t max_order = default_group_bound) -> FiniteGroup;
        static auto cyclic(std::size_t n) -> FiniteGroup;
        static auto symmetric3() -> FiniteGroup;

        [[nodiscard]] auto order() const -> std::size_t { return _elements.size(); }
        [[nodiscard]] auto elements() const -> const std::vector<std::string> & { return _elements; }
        [[nodiscard]] auto mul(std::size_t a, std::size_t b) const -> std::size_t { return _table[a][b]; }
        [[nodiscard]] auto identity() const -> std::size_t { return _identity; }
        [[nodiscard]] auto inverse(std::size_t a) const -> std::size_t { return _inverse[a]; }

    private:
        std::vector<std::string> _elements;
        std::vector<std::vector<std::size_t>> _table;
        std::size_t _identity = 0;
        std::vector<std::size_t> _inverse;
    };

    /// Bit i set iff element i belongs.
    using Subgroup = std::uint64_t;

    /// All subgroups, ordered by size, then mask.
    auto subgroups(const FiniteGroup & g) -> std::vector<Subgroup>;

    auto subgroup_name(const FiniteGroup & g, Subgroup h) -> std::string;

    /// Vertices are subgroups; H -> K iff g H g^-1 is contained in K for some g.
    auto subgroup_category(const FiniteGroup & g) -> HomQuiver;

    /// One sort, one total unary function per element, unit and
    /// compatibility axioms for a left action.
    auto gset_theory(const FiniteGroup & g) -> TheoryPtr;

    /// The coset action on G/H.
    auto coset_gset(const FiniteGroup & g, const TheoryPtr & theory, Subgroup h) -> StructurePtr;

    /// All G-sets with at most `bound` elements, one per isomorphism class,
    /// built as disjoint unions of coset actions over conjugacy classes of
    /// subgroups.
    auto enumerate_gsets(const FiniteGroup & g, const TheoryPtr & theory, std::size_t bound) -> std::vector<StructurePtr>;

    struct GsetReport
    {
        bool ok = false;
        std::size_t required_bound = 0;
        std::size_t models = 0;
        FinitePoset gset_sigma;
        FinitePoset lattice;
        std::string message;
    };

    /// Sigma of the bounded G-sets against the lower sets of the subgroup
    /// sigma. A bound below |G| times the number of subgroup components is
    /// reported as a failure.
    auto gset_sigma_check(const FiniteGroup & g, std::size_t bound) -> GsetReport;
}

#endif
