#ifndef PHL_CLOSURE_HH
#define PHL_CLOSURE_HH 1

#include <phl/enumerate.hh>
#include <phl/homsearch.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace phl
{
    /// A class of models, as membership over the representatives of a
    /// universe. Iso-closed by construction.
    struct ModelClass
    {
        UniversePtr universe;
        std::vector<bool> members;

        static auto empty(const UniversePtr & u) -> ModelClass;
        static auto all(const UniversePtr & u) -> ModelClass;
        static auto of(const UniversePtr & u, const std::vector<std::size_t> & indices) -> ModelClass;

        [[nodiscard]] auto contains(std::size_t i) const -> bool { return members[i]; }
        [[nodiscard]] auto count() const -> std::size_t;
        [[nodiscard]] auto indices() const -> std::vector<std::size_t>;
        [[nodiscard]] auto subset_of(const ModelClass & other) const -> bool;

        auto operator==(const ModelClass & other) const -> bool { return members == other.members; }
    };

    /// Closure operators inside one bounded universe. Hom-level relations
    /// between representatives are computed once, lazily.
    class ClosureContext
    {
    public:
        /// rho must have the universe's theory as target; its source theory
        /// decides the local-retraction rule. Without rho the identity is
        /// used. Probes default to the universe of rho's source at the same
        /// bound.
        ClosureContext(UniversePtr universe, std::optional<TheoryMorphism> rho = std::nullopt, std::optional<std::vector<StructurePtr>> probes = std::nullopt);

        [[nodiscard]] auto universe() const -> const UniversePtr & { return _universe; }
        [[nodiscard]] auto rho() const -> const TheoryMorphism & { return _rho; }
        [[nodiscard]] auto probes() const -> const std::vector<StructurePtr> & { return _probes; }
        [[nodiscard]] auto uses_exact_rule() const -> bool;

        /// Products of members (any multiplicity, the empty product being the
        /// terminal structure) that land inside the universe.
        auto P(const ModelClass & e) -> ModelClass;
        /// Representatives with a closed mono into a member.
        auto Sc(const ModelClass & e) -> ModelClass;
        /// Representatives reached from a member by a map whose reduct passes
        /// the local-retraction check, iterated to a fixpoint.
        auto H(const ModelClass & e) -> ModelClass;
        /// Retracts of members (maps with a section), iterated.
        auto R(const ModelClass & e) -> ModelClass;

        /// Closed subobjects of arbitrary products of members: X is in it iff
        /// the homs from X into members jointly separate elements and reflect
        /// definedness and relations.
        auto ScP(const ModelClass & e) -> ModelClass;

        struct HspResult
        {
            ModelClass closure;
            bool fixpoint_P = false, fixpoint_Sc = false, fixpoint_H = false;
            std::size_t rounds = 0;

            [[nodiscard]] auto verified() const -> bool { return fixpoint_P && fixpoint_Sc && fixpoint_H; }
        };

        /// H o ScP iterated until stable, then re-checked against P, Sc, H.
        auto hsp_closure(const ModelClass & e) -> HspResult;

        [[nodiscard]] auto sc_edge(std::size_t from, std::size_t to) -> bool;
        [[nodiscard]] auto h_edge(std::size_t from, std::size_t to) -> bool;

    private:
        UniversePtr _universe;
        TheoryMorphism _rho;
        std::vector<StructurePtr> _probes;
        std::vector<std::vector<std::int8_t>> _sc, _h, _r;
        std::vector<std::vector<std::optional<std::vector<Homomorphism>>>> _homs;

        auto homs(std::size_t from, std::size_t to) -> const std::vector<Homomorphism> &;
        auto compute_h(std::size_t from, std::size_t to) -> bool;
        auto iterate_edges(const ModelClass & e, bool retracts) -> ModelClass;
    };

    struct LawViolation
    {
        std::string law;
        std::vector<std::size_t> sample;
        std::vector<std::size_t> lhs, rhs;
    };

    struct LawReport
    {
        std::uint64_t seed = 0;
        std::size_t classes_checked = 0;
        std::size_t law_instances = 0;
        std::vector<LawViolation> violations;

        [[nodiscard]] auto ok() const -> bool { return violations.empty(); }
    };

    /// The empty class, every singleton, and `random_classes` subsets drawn
    /// with the seed. Universes with at most `exhaustive_up_to` members are
    /// checked on every subset instead.
    auto sample_classes(const UniversePtr & u, std::uint64_t seed, std::size_t random_classes, std::size_t exhaustive_up_to = 6)
        -> std::vector<ModelClass>;

    /// Idempotence of P, Sc, H and the inclusions PH <= HP, PSc <= ScP,
    /// ScH <= HSc on each class.
    auto operator_law_report(ClosureContext & ctx, const std::vector<ModelClass> & classes, std::uint64_t seed) -> LawReport;

    /// Members satisfying every extra sequent.
    auto definable_class(const UniversePtr & u, const std::vector<Sequent> & extra) -> ModelClass;

    struct AxiomCountermodel
    {
        std::size_t axiom;
        std::size_t model; // index into the target universe
        Tuple assignment;
    };

    struct MorphismCheck
    {
        std::size_t bound = 0;
        /// Smallest countermodel per failing source axiom, in axiom order.
        std::vector<AxiomCountermodel> countermodels;
        UniversePtr target_universe;

        [[nodiscard]] auto ok() const -> bool { return countermodels.empty(); }
    };

    /// Validity of every translated source axiom in every target model up to
    /// the bound. Throws PhlError on arity incompatibility.
    auto check_theory_morphism_bounded(const TheoryMorphism & rho, std::size_t bound, const EnumerationOptions & options = {}) -> MorphismCheck;
}

#endif
