#ifndef PHL_SIGMA_HH
#define PHL_SIGMA_HH 1

#include <phl/chain.hh>
#include <phl/homsearch.hh>

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace phl
{
    /// A finite poset as a full order matrix.
    struct FinitePoset
    {
        std::vector<std::string> elements;
        std::vector<std::vector<bool>> leq;

        [[nodiscard]] auto size() const -> std::size_t { return elements.size(); }
        [[nodiscard]] auto less(std::size_t a, std::size_t b) const -> bool { return a != b && leq[a][b]; }
        /// Reflexive, antisymmetric and transitive.
        [[nodiscard]] auto is_partial_order() const -> bool;
        [[nodiscard]] auto is_total() const -> bool;
        /// Pairs (a, b) with a < b and nothing strictly between.
        [[nodiscard]] auto covers() const -> std::vector<std::pair<std::size_t, std::size_t>>;
        /// {"elements": [...], "leq": [[i, j], ...]} over strict and reflexive pairs.
        [[nodiscard]] auto to_json() const -> nlohmann::ordered_json;
    };

    auto chain_poset(std::size_t n) -> FinitePoset;
    auto antichain_poset(std::size_t n) -> FinitePoset;
    auto product_poset(const FinitePoset & a, const FinitePoset & b) -> FinitePoset;

    /// An order isomorphism a -> b as an index map, if one exists.
    auto poset_isomorphism(const FinitePoset & a, const FinitePoset & b) -> std::optional<std::vector<std::size_t>>;

    /// Vertex i has an edge to j iff some morphism i -> j exists.
    struct HomQuiver
    {
        std::vector<std::string> names;
        /// Empty for abstract quivers.
        std::vector<StructurePtr> vertices;
        std::vector<std::vector<bool>> edges;

        [[nodiscard]] auto size() const -> std::size_t { return names.size(); }
    };

    /// Edges by hom existence. Throws PhlError on mixed signatures.
    auto build_hom_quiver(const std::vector<StructurePtr> & family) -> HomQuiver;

    /// Adds loops; the edge list need not be transitive.
    auto abstract_quiver(const std::vector<std::string> & names, const std::vector<std::pair<std::size_t, std::size_t>> & edges) -> HomQuiver;

    auto product_quiver(const HomQuiver & a, const HomQuiver & b) -> HomQuiver;

    struct SigmaPoset
    {
        /// Vertices of each component, ascending; components ordered by
        /// their least vertex.
        std::vector<std::vector<std::size_t>> components;
        std::vector<std::size_t> component_of;
        /// Elements named after the least vertex of each component.
        FinitePoset poset;

        [[nodiscard]] auto size() const -> std::size_t { return components.size(); }
    };

    /// Strongly connected components with the reachability order.
    auto condense_sigma(const HomQuiver & q) -> SigmaPoset;

    /// Same result as condense_sigma(build_hom_quiver(family)), comparing
    /// each structure only with one representative per component found so
    /// far.
    auto sigma_of_family(const std::vector<StructurePtr> & family) -> SigmaPoset;

    struct LowerSet
    {
        std::vector<bool> members;
        /// Maximal elements; the unique least generating set.
        std::vector<std::size_t> generators;
        [[nodiscard]] auto principal() const -> bool { return generators.size() == 1; }
    };

    struct LowerSetLattice
    {
        FinitePoset base;
        /// Ordered by size, then by member indices.
        std::vector<LowerSet> sets;

        /// Inclusion order on `sets`.
        [[nodiscard]] auto as_poset() const -> FinitePoset;
    };

    inline constexpr std::size_t default_lower_set_guard = std::size_t{1} << 20;

    /// Throws PhlError past `guard` down-sets.
    auto lower_set_lattice(const FinitePoset & p, std::size_t guard = default_lower_set_guard) -> LowerSetLattice;

    auto down_closure(const FinitePoset & p, const std::vector<std::size_t> & elements) -> std::vector<bool>;

    /// Throws PhlError when the set is not down-closed.
    auto generators_of_lower_set(const FinitePoset & p, const std::vector<bool> & set) -> std::vector<std::size_t>;

    struct StabilizationReport
    {
        bool stabilized = false;
        std::size_t at = 0;
        std::size_t horizon = 0;
        std::vector<std::string> stage_names;
        /// Pairs (m, n), m > n, with no map X_m -> X_n; adjacent pairs first.
        std::vector<std::pair<std::size_t, std::size_t>> witnesses;
    };

    /// Inspects stages 0 .. horizon-1 and looks for the least N <= horizon-2
    /// such that the stages from N on are pairwise strongly connected.
    auto acc_probe(const ChainRecipe & c, std::size_t horizon) -> StabilizationReport;

    struct FamReport
    {
        bool ok = false;
        std::size_t families = 0;
        FinitePoset family_sigma;
        FinitePoset lower_sets;
        /// family_sigma element i corresponds to lower_sets element iso[i].
        std::vector<std::size_t> iso;
        std::string counterexample;
    };

    /// Formal families of at most `m` vertices under the rule "each member
    /// maps into some member", against the down-sets of condense_sigma(a)
    /// with at most m generators. The comparison map sends a family to the
    /// down-set generated by its members.
    auto verify_fam_theorem(const HomQuiver & a, std::size_t m, std::size_t guard = 200'000) -> FamReport;
}

#endif
