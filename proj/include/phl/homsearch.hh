#ifndef PHL_HOMSEARCH_HH
#define PHL_HOMSEARCH_HH 1

#include <phl/semantics.hh>

#include <optional>
#include <string>
#include <vector>

namespace phl
{
    /// Per sort and source element, the allowed target elements.
    using Domains = std::vector<std::vector<std::vector<Element>>>;

    auto hom_exists(const PartialStructure & m, const PartialStructure & n) -> bool;

    /// The first homomorphism in search order: sorts in declaration order,
    /// elements in carrier order, targets in carrier order.
    auto find_hom(const StructurePtr & m, const StructurePtr & n) -> std::optional<Homomorphism>;

    /// As find_hom, with each element's image restricted to its domain.
    auto find_hom_within(const StructurePtr & m, const StructurePtr & n, const Domains & domains) -> std::optional<Homomorphism>;

    /// Pairwise distinct homomorphisms in search order, at most `limit`.
    auto enumerate_homs(const StructurePtr & m, const StructurePtr & n, std::size_t limit) -> std::vector<Homomorphism>;

    /// A section s of p with p(s(y)) = y for every y.
    auto find_section(const Homomorphism & p) -> std::optional<Homomorphism>;

    /// A lift g of f through p, i.e. p o g = f.
    auto find_lift(const Homomorphism & p, const Homomorphism & f) -> std::optional<Homomorphism>;

    enum class LocalRetractionVerdict
    {
        passed_up_to_probes,
        failed_with_witness,
        exact_true,
        exact_false
    };

    auto to_string(LocalRetractionVerdict v) -> std::string;

    struct LocalRetractionResult
    {
        LocalRetractionVerdict verdict = LocalRetractionVerdict::passed_up_to_probes;
        /// On failure: the probe and the map into the codomain with no lift.
        std::size_t probe_index = 0;
        std::optional<Homomorphism> witness;
        std::string note;

        [[nodiscard]] auto passed() const -> bool
        {
            return verdict == LocalRetractionVerdict::passed_up_to_probes || verdict == LocalRetractionVerdict::exact_true;
        }
    };

    /// Every map from a probe into the codomain of p must lift through p. A
    /// pass only means no probe refutes p.
    auto local_retraction_check(const Homomorphism & p, const std::vector<StructurePtr> & probes) -> LocalRetractionResult;

    /// The exact rule declared by the theory's flags. Throws PhlError when the
    /// theory declares none.
    auto local_retraction_exact(const Homomorphism & p, const Theory & t) -> LocalRetractionResult;

    auto has_exact_local_retraction_rule(const Theory & t) -> bool;
}

#endif
