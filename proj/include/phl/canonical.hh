#ifndef PHL_CANONICAL_HH
#define PHL_CANONICAL_HH 1

#include <phl/semantics.hh>

#include <cstdint>
#include <vector>

namespace phl
{
    using CanonicalKey = std::vector<std::int32_t>;

    /// Carrier sizes followed by every table, relabelled by the per-sort
    /// permutations; the key is the least such encoding.
    struct CanonicalForm
    {
        CanonicalKey key;
        /// perm[s][old] = new position, attaining the key.
        SortMap perm;
    };

    /// Exponential in the carrier sizes; meant for small structures.
    auto canonical_form(const PartialStructure & m) -> CanonicalForm;

    /// The permuted structure with carriers relabelled "0", "1", ...
    auto canonical_structure(const PartialStructure & m) -> PartialStructure;

    auto isomorphic(const PartialStructure & a, const PartialStructure & b) -> bool;
}

#endif
