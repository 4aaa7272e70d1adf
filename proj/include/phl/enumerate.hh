#ifndef PHL_ENUMERATE_HH
#define PHL_ENUMERATE_HH 1

#include <phl/canonical.hh>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace phl
{
    class BudgetExceeded : public PhlError
    {
    public:
        using PhlError::PhlError;
    };

    /// Representatives of all models with every carrier of size at most
    /// `bound`, one per isomorphism class, ordered by total size, then carrier
    /// sizes, then canonical key.
    struct ModelUniverse
    {
        TheoryPtr theory;
        std::size_t bound = 0;
        std::vector<StructurePtr> models;
        std::vector<CanonicalKey> keys;

        [[nodiscard]] auto size() const -> std::size_t { return models.size(); }
        [[nodiscard]] auto find_key(const CanonicalKey & key) const -> std::optional<std::size_t>;
        /// Index of the representative isomorphic to m, if m is in range.
        [[nodiscard]] auto index_of(const PartialStructure & m) const -> std::optional<std::size_t>;

        /// Builds the key index; called by the constructors below.
        auto finish() -> void;

    private:
        std::map<CanonicalKey, std::size_t> _index;
    };

    using UniversePtr = std::shared_ptr<const ModelUniverse>;

    struct EnumerationOptions
    {
        /// Cap on search nodes (partial assignments tried).
        std::size_t budget = 200'000'000;
        /// Directory for the JSON-lines universe cache; empty disables it.
        std::string cache_dir;
    };

    auto enumerate_models(const TheoryPtr & t, std::size_t bound, const EnumerationOptions & options = {}) -> UniversePtr;

    /// Sorts, deduplicates and indexes an arbitrary list of models.
    auto make_universe(const TheoryPtr & t, std::size_t bound, const std::vector<StructurePtr> & models) -> UniversePtr;

    /// FNV-1a 64 of the printed theory, as 16 hex digits.
    auto theory_hash(const Theory & t) -> std::string;
}

#endif
