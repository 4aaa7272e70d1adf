#ifndef PHL_CORPUS_HH
#define PHL_CORPUS_HH 1

#include <phl/chain.hh>
#include <phl/parser.hh>

#include <string>
#include <vector>

namespace phl
{
    /// Where an expected value comes from: "literature" (stated in the
    /// source example), "derived" (independent computation) or "trivial".
    struct Provenance
    {
        std::string kind;
        std::string note;
    };

    struct CorpusEntry
    {
        std::string name;
        std::string kind; // theory, morphism, chain or target
        std::string description;
        std::vector<std::string> tags;
        Provenance provenance;
    };

    /// The fixed theories, morphisms and relative theories, as DSL text.
    auto corpus_source() -> const std::string &;
    auto corpus_document() -> const Document &;

    inline constexpr std::size_t default_remark_truncation = 2;

    /// Fixed theories by name ("bounded-lattice" and "bounded_lattice" both
    /// work) and the generators n-const(N), remark-locret(K),
    /// remark-constants(K), set-omega(K), presheaf-omega-op(K). A bare
    /// remark-locret or remark-constants uses K = 2. Results are
    /// memoized, so structures built for one name share a signature.
    auto corpus_theory(const std::string & name) -> TheoryPtr;

    auto corpus_morphism(const std::string & name) -> TheoryMorphism;

    /// Theory text for the generators, for printing and tests.
    auto n_const_source(std::size_t n) -> std::string;
    auto remark_locret_source(std::size_t k) -> std::string;
    auto remark_constants_source(std::size_t k) -> std::string;
    auto set_omega_source(std::size_t k) -> std::string;
    auto presheaf_omega_op_source(std::size_t k) -> std::string;

    /// The sequent (u_0(x) = e & ... & u_K(x) = e) |- x = e.
    auto remark_locret_defining_sequent(std::size_t k) -> Sequent;

    // Named structures. Each is built over the memoized corpus theory.

    /// The bounded lattice with n atoms: elements 0, 1, a0 .. a(n-1).
    auto lattice_M(std::size_t n) -> StructurePtr;
    /// The n-cycle x -> x + 1.
    auto end_cycle(std::size_t n) -> StructurePtr;
    /// Disjoint union of the cycles of the first n primes.
    auto end_A(std::size_t n) -> StructurePtr;
    /// L_i over the base 0 <- 1 <- ... <- k: one point below i, empty above.
    auto presheaf_L(std::size_t i, std::size_t k) -> StructurePtr;
    /// U_alpha over the base 0 -> 1 -> ... -> k: empty below alpha; alpha = k+1
    /// stands for omega (everything empty).
    auto set_omega_U(std::size_t alpha, std::size_t k) -> StructurePtr;
    /// The six cospans S_0 .. S_5.
    auto cospan_S(std::size_t i) -> StructurePtr;
    /// {0, a} with e = 0 and u_j(a) = 0 for j < n, undefined otherwise.
    auto remark_A(std::size_t n, std::size_t k) -> StructurePtr;
    /// Two points with c_0 = 0 and every other constant at 1.
    auto remark_constants_split(std::size_t k) -> StructurePtr;
    /// The one-point model of remark-constants(K).
    auto remark_constants_point(std::size_t k) -> StructurePtr;
    auto set_of_size(std::size_t n) -> StructurePtr;
    auto chain_poset_structure(std::size_t n) -> StructurePtr;
    auto discrete_poset_structure(std::size_t n) -> StructurePtr;

    /// lattice-M, end-A, presheaf-L, set-growing, remark-A, pos-constant.
    auto corpus_chain(const std::string & name) -> ChainRecipe;
    auto corpus_chain_names() -> std::vector<std::string>;

    /// Theories, morphisms and chains; reproduction targets are listed by
    /// the repro module.
    auto corpus_entries() -> std::vector<CorpusEntry>;
}

#endif
