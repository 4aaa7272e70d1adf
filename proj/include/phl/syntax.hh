#ifndef PHL_SYNTAX_HH
#define PHL_SYNTAX_HH 1

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace phl
{
    using SortId = std::size_t;
    using FunctionId = std::size_t;
    using RelationId = std::size_t;

    /// Raised for malformed input that cannot be turned into a value (bad
    /// symbols, arity clashes, structural misuse). Parse failures use
    /// ParseError, which carries a source position.
    class PhlError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    struct FunctionSymbol
    {
        std::string name;
        std::vector<SortId> args;
        SortId result = 0;

        auto operator==(const FunctionSymbol &) const -> bool = default;
    };

    struct RelationSymbol
    {
        std::string name;
        std::vector<SortId> args;

        auto operator==(const RelationSymbol &) const -> bool = default;
    };

    /// A multi-sorted signature. Sorts and symbols are addressed by position;
    /// the name lookups are maintained alongside.
    class Signature
    {
    public:
        auto add_sort(const std::string & name) -> SortId;
        auto add_function(const std::string & name, std::vector<SortId> args, SortId result) -> FunctionId;
        auto add_relation(const std::string & name, std::vector<SortId> args) -> RelationId;

        [[nodiscard]] auto sorts() const -> const std::vector<std::string> & { return _sorts; }
        [[nodiscard]] auto functions() const -> const std::vector<FunctionSymbol> & { return _functions; }
        [[nodiscard]] auto relations() const -> const std::vector<RelationSymbol> & { return _relations; }

        [[nodiscard]] auto find_sort(const std::string & name) const -> std::optional<SortId>;
        [[nodiscard]] auto find_function(const std::string & name) const -> std::optional<FunctionId>;
        [[nodiscard]] auto find_relation(const std::string & name) const -> std::optional<RelationId>;

        [[nodiscard]] auto sort_id(const std::string & name) const -> SortId;
        [[nodiscard]] auto function_id(const std::string & name) const -> FunctionId;
        [[nodiscard]] auto relation_id(const std::string & name) const -> RelationId;

        auto operator==(const Signature & other) const -> bool
        {
            return _sorts == other._sorts && _functions == other._functions && _relations == other._relations;
        }

    private:
        std::vector<std::string> _sorts;
        std::vector<FunctionSymbol> _functions;
        std::vector<RelationSymbol> _relations;
    };

    using SignaturePtr = std::shared_ptr<const Signature>;

    struct Variable
    {
        std::string name;
        SortId sort = 0;

        auto operator==(const Variable &) const -> bool = default;
    };

    using Context = std::vector<Variable>;

    struct Term
    {
        enum class Kind
        {
            variable,
            apply
        };

        Kind kind = Kind::variable;
        Variable var;            // when kind == variable
        FunctionId function = 0; // when kind == apply
        std::vector<Term> args;

        static auto make_var(std::string name, SortId sort) -> Term;
        static auto make_apply(FunctionId f, std::vector<Term> args) -> Term;

        auto operator==(const Term &) const -> bool = default;
    };

    struct Formula
    {
        enum class Kind
        {
            relation,
            equation,
            truth,
            conjunction
        };

        Kind kind = Kind::truth;
        RelationId relation = 0;
        std::vector<Term> terms;     // relation arguments, or the two sides of an equation
        std::vector<Formula> parts;  // exactly two for a conjunction

        static auto make_relation(RelationId r, std::vector<Term> args) -> Formula;
        static auto make_equation(Term lhs, Term rhs) -> Formula;
        static auto make_truth() -> Formula;
        static auto make_conjunction(Formula lhs, Formula rhs) -> Formula;
        /// Left-nested conjunction of the given formulas; truth when empty.
        static auto conjoin(std::vector<Formula> fs) -> Formula;

        auto operator==(const Formula &) const -> bool = default;
    };

    struct Sequent
    {
        Context context;
        Formula premise;
        Formula conclusion;

        auto operator==(const Sequent &) const -> bool = default;
    };

    /// Opt-in capabilities used to gate constructions that are only sound for
    /// particular theories.
    namespace flags
    {
        inline constexpr const char * disjoint_union = "disjoint_union";
        inline constexpr const char * exact_surjection = "exact_surjection";
        inline constexpr const char * exact_constants = "exact_constants";
    }

    struct Theory
    {
        std::string name;
        SignaturePtr signature;
        std::vector<Sequent> axioms;
        std::set<std::string> flags;

        [[nodiscard]] auto has_flag(const std::string & f) const -> bool { return flags.count(f) != 0; }
    };

    using TheoryPtr = std::shared_ptr<const Theory>;

    /// Symbol-level theory morphism. Theoremhood of translated axioms is not
    /// decided here; see check_theory_morphism_bounded.
    struct TheoryMorphism
    {
        std::string name;
        TheoryPtr source;
        TheoryPtr target;
        std::vector<SortId> sort_map;
        std::vector<FunctionId> function_map;
        std::vector<RelationId> relation_map;
    };

    struct RelativeOperation
    {
        std::string name;
        Context arity_context;
        Formula arity;
        SortId result = 0;
    };

    struct RelativeTheory
    {
        std::string name;
        TheoryPtr base;
        std::vector<RelativeOperation> operations;
        /// Signature of base + operations; judgments are expressed over it.
        SignaturePtr combined;
        std::vector<Sequent> judgments;
    };

    // ---- construction helpers ----

    auto identity_morphism(const TheoryPtr & t) -> TheoryMorphism;

    /// Checks arity compatibility of the symbol maps; throws PhlError.
    auto check_morphism_arities(const TheoryMorphism & rho) -> void;

    // ---- typing and well-formedness ----

    /// Sort of a term; throws PhlError when the term is ill-typed.
    auto type_of(const Signature & sig, const Term & t) -> SortId;

    auto free_variables(const Term & t, std::vector<Variable> & out) -> void;
    auto free_variables(const Formula & f, std::vector<Variable> & out) -> void;

    auto formula_functions(const Formula & f, std::set<FunctionId> & out) -> void;
    auto formula_relations(const Formula & f, std::set<RelationId> & out) -> void;

    struct Violation
    {
        std::string where;
        std::string message;
    };

    struct WellFormednessReport
    {
        std::vector<Violation> violations;

        [[nodiscard]] auto ok() const -> bool { return violations.empty(); }
    };

    auto validate_sequent(const Signature & sig, const Sequent & s, const std::string & where = "sequent") -> WellFormednessReport;
    auto validate_theory(const Theory & t) -> WellFormednessReport;

    // ---- translation along a morphism ----

    auto translate_along(const TheoryMorphism & rho, const Term & t) -> Term;
    auto translate_along(const TheoryMorphism & rho, const Formula & f) -> Formula;
    auto translate_along(const TheoryMorphism & rho, const Sequent & s) -> Sequent;
    auto translate_context(const TheoryMorphism & rho, const Context & c) -> Context;

    // ---- relative theories ----

    enum class JudgmentKind
    {
        s_relative,
        rho_relative
    };

    struct JudgmentVerdict
    {
        bool relative = false;
        std::string reason;
        /// For rho-relative judgments: a source-signature context and
        /// premise whose translation is the given premise.
        std::optional<Context> preimage_context;
        std::optional<Formula> preimage_premise;
    };

    /// True iff the premise mentions no operation of the relative signature.
    auto check_relative_judgment(const RelativeTheory & rt, const Sequent & s) -> JudgmentVerdict;

    /// True iff the premise is literally a translation of some formula over
    /// the morphism's source signature.
    auto check_relative_judgment(const TheoryMorphism & rho, const Sequent & s) -> JudgmentVerdict;

    /// Builds the combined signature of base + operations; throws on clashes.
    auto make_combined_signature(const Signature & base, const std::vector<RelativeOperation> & ops) -> SignaturePtr;

    /// Base axioms, both halves of each definedness bisequent, then the
    /// judgments.
    auto compile_relative_theory(const RelativeTheory & rt) -> TheoryPtr;

    /// The inclusion of the base theory into a compiled relative theory.
    auto base_inclusion(const RelativeTheory & rt, const TheoryPtr & compiled) -> TheoryMorphism;
}

#endif
