#ifndef PHL_PARSER_HH
#define PHL_PARSER_HH 1

#include <phl/syntax.hh>

#include <string>
#include <vector>

namespace phl
{
    /// A parse or resolution failure at a known source position. what() is
    /// already formatted as file:line:col: message.
    class ParseError : public PhlError
    {
    public:
        ParseError(const std::string & file, int line, int column, const std::string & message);

        [[nodiscard]] auto file() const -> const std::string & { return _file; }
        [[nodiscard]] auto line() const -> int { return _line; }
        [[nodiscard]] auto column() const -> int { return _column; }
        [[nodiscard]] auto message() const -> const std::string & { return _message; }

    private:
        std::string _file;
        int _line, _column;
        std::string _message;
    };

    struct Document
    {
        std::vector<TheoryPtr> theories;
        std::vector<TheoryMorphism> morphisms;
        std::vector<RelativeTheory> relatives;

        [[nodiscard]] auto find_theory(const std::string & name) const -> TheoryPtr;
        [[nodiscard]] auto find_morphism(const std::string & name) const -> const TheoryMorphism *;
        [[nodiscard]] auto find_relative(const std::string & name) const -> const RelativeTheory *;
    };

    /// Parses a whole file. Theories named by morphisms or relative blocks
    /// must appear earlier in the same file, or in `imports`.
    auto parse_document(const std::string & text, const std::string & file = "<input>", const Document * imports = nullptr) -> Document;

    /// Parses a file holding exactly one theory block.
    auto parse_theory(const std::string & text, const std::string & file = "<input>") -> TheoryPtr;

    /// Parses a single sequent "[ctx] phi |- psi" over a signature. A
    /// bisequent yields two sequents.
    auto parse_sequents(const Signature & sig, const std::string & text, const std::string & file = "<input>") -> std::vector<Sequent>;

    auto print_term(const Signature & sig, const Term & t) -> std::string;
    auto print_formula(const Signature & sig, const Formula & f) -> std::string;
    auto print_sequent(const Signature & sig, const Sequent & s) -> std::string;
    auto print_theory(const Theory & t) -> std::string;
    auto print_morphism(const TheoryMorphism & rho) -> std::string;
    auto print_relative(const RelativeTheory & rt) -> std::string;
    auto print_document(const Document & d) -> std::string;

    auto read_file(const std::string & path) -> std::string;
}

#endif
