#ifndef PHL_SEMANTICS_HH
#define PHL_SEMANTICS_HH 1

#include <phl/structure.hh>
#include <phl/syntax.hh>

#include <optional>
#include <string>
#include <vector>

namespace phl
{
    using Tuple = std::vector<Element>;

    /// Value of a term under an assignment to its context; nullopt when
    /// undefined. Throws PhlError when env does not fit the context.
    auto eval_term(const PartialStructure & m, const Context & ctx, const Term & t, const Tuple & env) -> std::optional<Element>;

    /// The satisfying tuples, in lexicographic order.
    auto eval_formula(const PartialStructure & m, const Context & ctx, const Formula & f) -> std::vector<Tuple>;

    auto sequent_valid(const PartialStructure & m, const Sequent & s) -> bool;

    /// A tuple in the premise set outside the conclusion set, if any.
    auto sequent_counterexample(const PartialStructure & m, const Sequent & s) -> std::optional<Tuple>;

    /// Throws PhlError on a signature mismatch.
    auto is_model(const PartialStructure & m, const Theory & t) -> bool;

    /// Sequents compiled to flat term nodes, for repeated evaluation. Also
    /// supports three-valued evaluation against tables containing
    /// `unassigned` cells.
    class CompiledSequent
    {
    public:
        CompiledSequent(const Signature & sig, const Sequent & s);

        [[nodiscard]] auto valid(const PartialStructure & m) const -> bool;

        /// False only when some assignment makes the premise true and the
        /// conclusion false whatever the unassigned cells become.
        [[nodiscard]] auto possibly_valid(const PartialStructure & m) const -> bool;

        [[nodiscard]] auto mentions_function(FunctionId f) const -> bool;
        [[nodiscard]] auto mentions_relation(RelationId r) const -> bool;

    private:
        struct Node
        {
            bool is_var;
            std::size_t index; // variable position or function id
            std::vector<std::size_t> children;
        };

        struct Atom
        {
            bool is_equation;
            RelationId relation;
            std::vector<std::size_t> nodes;
        };

        std::vector<SortId> _var_sorts;
        std::vector<Node> _nodes;
        std::vector<Atom> _premise, _conclusion;

        auto compile_term(const Context & ctx, const Term & t) -> std::size_t;
        auto compile_formula(const Context & ctx, const Formula & f, std::vector<Atom> & out) -> void;
        template <bool three_valued_>
        auto check(const PartialStructure & m) const -> bool;
    };

    class CompiledTheory
    {
    public:
        explicit CompiledTheory(const Theory & t);

        [[nodiscard]] auto is_model(const PartialStructure & m) const -> bool;
        [[nodiscard]] auto axioms() const -> const std::vector<CompiledSequent> & { return _axioms; }

    private:
        std::vector<CompiledSequent> _axioms;
    };

    struct MapCheck
    {
        bool ok = true;
        std::string symbol;
        Tuple witness;
        std::string message;
    };

    /// Both diagram conditions, or the first violating symbol and tuple.
    auto is_homomorphism(const SortMap & maps, const PartialStructure & m, const PartialStructure & n) -> MapCheck;
    auto is_homomorphism(const Homomorphism & h) -> MapCheck;

    /// Throws PhlError when h is not injective on some sort.
    auto is_closed_mono(const Homomorphism & h) -> MapCheck;

    auto is_injective(const Homomorphism & h) -> bool;
    auto is_surjective(const Homomorphism & h) -> bool;

    auto identity_hom(const StructurePtr & m) -> Homomorphism;
    /// g after f.
    auto compose(const Homomorphism & g, const Homomorphism & f) -> Homomorphism;

    struct Cone
    {
        StructurePtr apex;
        std::vector<Homomorphism> legs;
    };

    inline constexpr std::size_t default_product_bound = 4096;

    /// The empty family gives the terminal structure. Throws PhlError when
    /// some carrier would exceed `bound`.
    auto product(const SignaturePtr & sig, const std::vector<StructurePtr> & family, std::size_t bound = default_product_bound) -> Cone;

    /// Carrier sizes of the product without building it.
    auto product_sizes(const SignaturePtr & sig, const std::vector<StructurePtr> & family) -> std::vector<std::size_t>;

    auto terminal_structure(const SignaturePtr & sig) -> PartialStructure;

    /// The closed substructure of A x B on pairs with f(a) = g(b).
    auto pullback(const Homomorphism & f, const Homomorphism & g) -> Cone;

    /// Reduct along rho of a target-theory structure.
    auto reduct(const TheoryMorphism & rho, const PartialStructure & n) -> PartialStructure;
    auto reduct(const TheoryMorphism & rho, const Homomorphism & h) -> Homomorphism;

    /// Requires the disjoint_union flag on t. Legs are the coprojections.
    auto disjoint_union(const Theory & t, const StructurePtr & m, const StructurePtr & n) -> Cone;

    /// Relabels carriers by per-sort permutations: new index perm[s][e] holds
    /// old element e. Labels move with their elements.
    auto permute(const PartialStructure & m, const SortMap & perm) -> PartialStructure;
}

#endif
