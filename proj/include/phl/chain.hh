#ifndef PHL_CHAIN_HH
#define PHL_CHAIN_HH 1

#include <phl/semantics.hh>

#include <functional>
#include <optional>
#include <string>

namespace phl
{
    /// An omega-chain X_0 -> X_1 -> ... given by generators.
    struct ChainRecipe
    {
        std::string name;
        TheoryPtr theory;
        std::function<StructurePtr(std::size_t)> stage;
        /// The connecting map X_n -> X_{n+1}.
        std::function<Homomorphism(std::size_t)> connect;
        /// Index from which no further facts appear, when known.
        std::optional<std::size_t> fact_stabilization;
    };

    /// A chain that is constantly X, with identity connecting maps.
    auto constant_chain(const std::string & name, TheoryPtr theory, StructurePtr x) -> ChainRecipe;

    struct ColimitResult
    {
        bool stable = false;
        StructurePtr colimit;
        std::size_t carrier_stable_from = 0;
        std::string reason;
    };

    /// Stages 0 .. horizon-1 are inspected. Throws PhlError when a connecting
    /// map is not a homomorphism.
    auto chain_colimit(const ChainRecipe & c, std::size_t horizon) -> ColimitResult;
}

#endif
