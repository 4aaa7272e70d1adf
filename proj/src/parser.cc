#include <phl/parser.hh>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

using std::make_shared;
using std::set;
using std::string;
using std::to_string;
using std::vector;

namespace phl
{
    ParseError::ParseError(const string & file, int line, int column, const string & message) :
        PhlError(file + ":" + to_string(line) + ":" + to_string(column) + ": " + message),
        _file(file),
        _line(line),
        _column(column),
        _message(message)
    {
    }

    auto Document::find_theory(const string & name) const -> TheoryPtr
    {
        for (const auto & t : theories)
            if (t->name == name)
                return t;
        return nullptr;
    }

    auto Document::find_morphism(const string & name) const -> const TheoryMorphism *
    {
        for (const auto & m : morphisms)
            if (m.name == name)
                return &m;
        return nullptr;
    }

    auto Document::find_relative(const string & name) const -> const RelativeTheory *
    {
        for (const auto & r : relatives)
            if (r.name == name)
                return &r;
        return nullptr;
    }

    namespace
    {
        enum class TokenKind
        {
            identifier,
            punctuation,
            end
        };

        struct Token
        {
            TokenKind kind;
            string text;
            int line, column;
        };

        const set<string> keywords = {"theory", "morphism", "relative", "over", "flags", "sorts", "functions", "relations", "axioms",
            "operations", "judgments", "top", "def", "sort", "function", "relation"};

        auto is_ident_start(char c) -> bool { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
        auto is_ident_char(char c) -> bool { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

        auto lex(const string & text, const string & file) -> vector<Token>
        {
            vector<Token> out;
            int line = 1, column = 1;
            std::size_t i = 0;

            auto advance = [&](std::size_t n) {
                for (std::size_t k = 0; k < n; ++k) {
                    if (text[i] == '\n') {
                        ++line;
                        column = 1;
                    }
                    else
                        ++column;
                    ++i;
                }
            };

            while (i < text.size()) {
                char c = text[i];
                if (c == '#') {
                    while (i < text.size() && text[i] != '\n')
                        advance(1);
                    continue;
                }
                if (std::isspace(static_cast<unsigned char>(c))) {
                    advance(1);
                    continue;
                }
                if (is_ident_start(c)) {
                    std::size_t j = i;
                    while (j < text.size() && is_ident_char(text[j]))
                        ++j;
                    out.push_back(Token{TokenKind::identifier, text.substr(i, j - i), line, column});
                    advance(j - i);
                    continue;
                }

                string punct;
                for (const char * p : {"-||-", "->", "|-"})
                    if (text.compare(i, std::char_traits<char>::length(p), p) == 0) {
                        punct = p;
                        break;
                    }
                if (punct.empty() && string{"{}()[],;:*&="}.find(c) != string::npos)
                    punct = string(1, c);
                if (punct.empty())
                    throw ParseError{file, line, column, string{"unexpected character '"} + c + "'"};
                out.push_back(Token{TokenKind::punctuation, punct, line, column});
                advance(punct.size());
            }
            out.push_back(Token{TokenKind::end, "", line, column});
            return out;
        }

        class Parser
        {
        public:
            Parser(const string & text, string file, const Document * imports) :
                _tokens(lex(text, file)),
                _file(std::move(file)),
                _imports(imports)
            {
            }

            auto document() -> Document
            {
                while (peek().kind != TokenKind::end) {
                    if (at("theory"))
                        theory_block();
                    else if (at("morphism"))
                        morphism_block();
                    else if (at("relative"))
                        relative_block();
                    else
                        fail(peek(), "expected 'theory', 'morphism' or 'relative'");
                }
                return std::move(_doc);
            }

            auto sequents_only(const Signature & sig) -> vector<Sequent>
            {
                vector<Sequent> out;
                sequent_decl(sig, out);
                accept(";");
                if (peek().kind != TokenKind::end)
                    fail(peek(), "trailing input after sequent");
                return out;
            }

        private:
            vector<Token> _tokens;
            std::size_t _pos = 0;
            string _file;
            const Document * _imports;
            Document _doc;

            [[noreturn]] auto fail(const Token & t, const string & msg) const -> void { throw ParseError{_file, t.line, t.column, msg}; }

            auto peek(std::size_t ahead = 0) const -> const Token &
            {
                return _tokens[std::min(_pos + ahead, _tokens.size() - 1)];
            }

            auto next() -> const Token &
            {
                const auto & t = _tokens[_pos];
                if (_pos + 1 < _tokens.size())
                    ++_pos;
                return t;
            }

            auto at(const string & text) const -> bool { return peek().kind != TokenKind::end && peek().text == text; }

            auto accept(const string & text) -> bool
            {
                if (at(text)) {
                    next();
                    return true;
                }
                return false;
            }

            auto expect(const string & text) -> const Token &
            {
                if (! at(text))
                    fail(peek(), "expected '" + text + "'" + (peek().kind == TokenKind::end ? " at end of input" : ", found '" + peek().text + "'"));
                return next();
            }

            auto identifier(const string & what) -> const Token &
            {
                if (peek().kind != TokenKind::identifier || keywords.count(peek().text))
                    fail(peek(), "expected " + what);
                return next();
            }

            auto at_declaration() const -> bool
            {
                return peek().kind == TokenKind::identifier && ! keywords.count(peek().text);
            }

            auto lookup_theory(const Token & t) const -> TheoryPtr
            {
                if (auto th = _doc.find_theory(t.text))
                    return th;
                if (_imports)
                    if (auto th = _imports->find_theory(t.text))
                        return th;
                if (auto rel = _doc.find_relative(t.text))
                    return compile_relative_theory(*rel);
                fail(t, "unknown theory '" + t.text + "'");
            }

            auto sort_ref(const Signature & sig) -> SortId
            {
                const auto & t = identifier("a sort name");
                if (auto s = sig.find_sort(t.text))
                    return *s;
                fail(t, "unknown sort '" + t.text + "'");
            }

            auto sort_product(const Signature & sig) -> vector<SortId>
            {
                vector<SortId> out{sort_ref(sig)};
                while (accept("*"))
                    out.push_back(sort_ref(sig));
                return out;
            }

            auto theory_block() -> void
            {
                expect("theory");
                const auto & name = identifier("a theory name");
                if (_doc.find_theory(name.text))
                    fail(name, "duplicate theory '" + name.text + "'");
                auto sig = make_shared<Signature>();
                auto th = make_shared<Theory>();
                th->name = name.text;
                expect("{");

                while (! accept("}")) {
                    const auto & kw = next();
                    if (kw.text == "flags") {
                        do
                            th->flags.insert(identifier("a flag name").text);
                        while (accept(","));
                        expect(";");
                    }
                    else if (kw.text == "sorts") {
                        do {
                            const auto & s = identifier("a sort name");
                            if (sig->find_sort(s.text))
                                fail(s, "duplicate sort '" + s.text + "'");
                            sig->add_sort(s.text);
                        } while (accept(","));
                        expect(";");
                    }
                    else if (kw.text == "functions") {
                        while (at_declaration()) {
                            const auto & f = next();
                            expect(":");
                            vector<SortId> args;
                            if (! at("->"))
                                args = sort_product(*sig);
                            expect("->");
                            auto result = sort_ref(*sig);
                            declare(f, [&] { sig->add_function(f.text, args, result); });
                            expect(";");
                        }
                    }
                    else if (kw.text == "relations") {
                        while (at_declaration()) {
                            const auto & r = next();
                            expect(":");
                            vector<SortId> args;
                            if (accept("("))
                                expect(")");
                            else
                                args = sort_product(*sig);
                            declare(r, [&] { sig->add_relation(r.text, args); });
                            expect(";");
                        }
                    }
                    else if (kw.text == "axioms") {
                        while (at("[")) {
                            sequent_decl(*sig, th->axioms);
                            expect(";");
                        }
                    }
                    else
                        fail(kw, "expected a section keyword or '}'");
                }

                th->signature = sig;
                _doc.theories.push_back(th);
            }

            template <typename F>
            auto declare(const Token & at_token, F && f) -> void
            {
                try {
                    f();
                }
                catch (const ParseError &) {
                    throw;
                }
                catch (const PhlError & e) {
                    fail(at_token, e.what());
                }
            }

            auto morphism_block() -> void
            {
                expect("morphism");
                const auto & name = identifier("a morphism name");
                expect(":");
                auto source = lookup_theory(identifier("a theory name"));
                expect("->");
                auto target = lookup_theory(identifier("a theory name"));
                expect("{");

                const auto & src = *source->signature;
                const auto & tgt = *target->signature;
                vector<std::optional<std::size_t>> sorts(src.sorts().size()), funcs(src.functions().size()), rels(src.relations().size());

                while (! accept("}")) {
                    const auto & kw = next();
                    const auto & a = identifier("a symbol name");
                    expect("->");
                    const auto & b = identifier("a symbol name");
                    if (kw.text == "sort") {
                        auto x = src.find_sort(a.text);
                        auto y = tgt.find_sort(b.text);
                        if (! x)
                            fail(a, "unknown sort '" + a.text + "' in source");
                        if (! y)
                            fail(b, "unknown sort '" + b.text + "' in target");
                        sorts[*x] = *y;
                    }
                    else if (kw.text == "function") {
                        auto x = src.find_function(a.text);
                        auto y = tgt.find_function(b.text);
                        if (! x)
                            fail(a, "unknown function symbol '" + a.text + "' in source");
                        if (! y)
                            fail(b, "unknown function symbol '" + b.text + "' in target");
                        funcs[*x] = *y;
                    }
                    else if (kw.text == "relation") {
                        auto x = src.find_relation(a.text);
                        auto y = tgt.find_relation(b.text);
                        if (! x)
                            fail(a, "unknown relation symbol '" + a.text + "' in source");
                        if (! y)
                            fail(b, "unknown relation symbol '" + b.text + "' in target");
                        rels[*x] = *y;
                    }
                    else
                        fail(kw, "expected 'sort', 'function' or 'relation'");
                    expect(";");
                }

                // unmapped symbols go to the target symbol of the same name
                TheoryMorphism rho;
                rho.name = name.text;
                rho.source = source;
                rho.target = target;
                for (SortId s = 0; s < sorts.size(); ++s) {
                    auto y = sorts[s] ? sorts[s] : tgt.find_sort(src.sorts()[s]);
                    if (! y)
                        fail(name, "no image for sort '" + src.sorts()[s] + "'");
                    rho.sort_map.push_back(*y);
                }
                for (FunctionId f = 0; f < funcs.size(); ++f) {
                    auto y = funcs[f] ? funcs[f] : tgt.find_function(src.functions()[f].name);
                    if (! y)
                        fail(name, "no image for function symbol '" + src.functions()[f].name + "'");
                    rho.function_map.push_back(*y);
                }
                for (RelationId r = 0; r < rels.size(); ++r) {
                    auto y = rels[r] ? rels[r] : tgt.find_relation(src.relations()[r].name);
                    if (! y)
                        fail(name, "no image for relation symbol '" + src.relations()[r].name + "'");
                    rho.relation_map.push_back(*y);
                }
                declare(name, [&] { check_morphism_arities(rho); });
                _doc.morphisms.push_back(std::move(rho));
            }

            auto relative_block() -> void
            {
                expect("relative");
                const auto & name = identifier("a relative theory name");
                expect("over");
                RelativeTheory rt;
                rt.name = name.text;
                rt.base = lookup_theory(identifier("a theory name"));
                expect("{");

                const auto & base_sig = *rt.base->signature;
                bool seen_judgments = false;
                while (! accept("}")) {
                    const auto & kw = next();
                    if (kw.text == "operations") {
                        if (seen_judgments)
                            fail(kw, "operations must precede judgments");
                        while (at_declaration()) {
                            const auto & op = next();
                            expect(":");
                            RelativeOperation o;
                            o.name = op.text;
                            o.arity_context = context(base_sig);
                            o.arity = formula(base_sig, o.arity_context);
                            expect("->");
                            o.result = sort_ref(base_sig);
                            for (const auto & other : rt.operations)
                                if (other.name == o.name)
                                    fail(op, "duplicate operation '" + o.name + "'");
                            if (base_sig.find_function(o.name) || base_sig.find_relation(o.name))
                                fail(op, "operation '" + o.name + "' clashes with a base symbol");
                            rt.operations.push_back(std::move(o));
                            expect(";");
                        }
                    }
                    else if (kw.text == "judgments") {
                        if (! seen_judgments)
                            rt.combined = make_combined_signature(base_sig, rt.operations);
                        seen_judgments = true;
                        while (at("[")) {
                            auto start = peek();
                            auto before = rt.judgments.size();
                            sequent_decl(*rt.combined, rt.judgments);
                            for (auto i = before; i < rt.judgments.size(); ++i) {
                                auto v = check_relative_judgment(rt, rt.judgments[i]);
                                if (! v.relative)
                                    fail(start, "not a relative judgment: " + v.reason);
                            }
                            expect(";");
                        }
                    }
                    else
                        fail(kw, "expected 'operations', 'judgments' or '}'");
                }
                if (! rt.combined)
                    rt.combined = make_combined_signature(base_sig, rt.operations);
                _doc.relatives.push_back(std::move(rt));
            }

            auto context(const Signature & sig) -> Context
            {
                Context ctx;
                expect("[");
                if (! at("]")) {
                    do {
                        const auto & v = identifier("a variable name");
                        expect(":");
                        auto s = sort_ref(sig);
                        for (const auto & w : ctx)
                            if (w.name == v.text)
                                fail(v, "context variables must be distinct ('" + v.text + "' repeated)");
                        if (auto f = sig.find_function(v.text); f && sig.functions()[*f].args.empty())
                            fail(v, "variable '" + v.text + "' clashes with a constant symbol");
                        ctx.push_back(Variable{v.text, s});
                    } while (accept(","));
                }
                expect("]");
                return ctx;
            }

            auto sequent_decl(const Signature & sig, vector<Sequent> & out) -> void
            {
                auto ctx = context(sig);
                auto premise = formula(sig, ctx);
                if (accept("|-"))
                    out.push_back(Sequent{ctx, std::move(premise), formula(sig, ctx)});
                else if (accept("-||-")) {
                    auto conclusion = formula(sig, ctx);
                    out.push_back(Sequent{ctx, premise, conclusion});
                    out.push_back(Sequent{ctx, std::move(conclusion), std::move(premise)});
                }
                else
                    fail(peek(), "expected '|-' or '-||-'");
            }

            auto formula(const Signature & sig, const Context & ctx) -> Formula
            {
                auto f = atom(sig, ctx);
                while (accept("&"))
                    f = Formula::make_conjunction(std::move(f), atom(sig, ctx));
                return f;
            }

            auto atom(const Signature & sig, const Context & ctx) -> Formula
            {
                if (accept("top"))
                    return Formula::make_truth();
                if (accept("def")) {
                    expect("(");
                    auto t = term(sig, ctx);
                    expect(")");
                    return Formula::make_equation(t, t);
                }
                if (accept("(")) {
                    auto f = formula(sig, ctx);
                    expect(")");
                    return f;
                }

                if (peek().kind == TokenKind::identifier) {
                    if (auto r = sig.find_relation(peek().text)) {
                        const auto & rt = next();
                        const auto & rs = sig.relations()[*r];
                        vector<Term> args;
                        if (accept("(")) {
                            if (! at(")")) {
                                do
                                    args.push_back(term(sig, ctx));
                                while (accept(","));
                            }
                            expect(")");
                        }
                        if (args.size() != rs.args.size())
                            fail(rt, "arity mismatch: '" + rs.name + "' expects " + to_string(rs.args.size()) + " arguments, got " + to_string(args.size()));
                        for (std::size_t i = 0; i < args.size(); ++i)
                            if (type_of(sig, args[i]) != rs.args[i])
                                fail(rt, "arity mismatch: argument " + to_string(i + 1) + " of '" + rs.name + "' has sort '"
                                        + sig.sorts()[type_of(sig, args[i])] + "', expected '" + sig.sorts()[rs.args[i]] + "'");
                        return Formula::make_relation(*r, std::move(args));
                    }
                }

                auto lhs = term(sig, ctx);
                if (! at("="))
                    fail(peek(), "expected '=' after term");
                const auto & eq = next();
                auto rhs = term(sig, ctx);
                auto a = type_of(sig, lhs), b = type_of(sig, rhs);
                if (a != b)
                    fail(eq, "equation between terms of different sorts '" + sig.sorts()[a] + "' and '" + sig.sorts()[b] + "'");
                return Formula::make_equation(std::move(lhs), std::move(rhs));
            }

            auto term(const Signature & sig, const Context & ctx) -> Term
            {
                const auto & t = identifier("a term");
                if (accept("(")) {
                    auto f = sig.find_function(t.text);
                    if (! f) {
                        if (sig.find_relation(t.text))
                            fail(t, "relation '" + t.text + "' used as a term");
                        fail(t, "unknown function symbol '" + t.text + "'");
                    }
                    vector<Term> args;
                    if (! at(")")) {
                        do
                            args.push_back(term(sig, ctx));
                        while (accept(","));
                    }
                    expect(")");
                    const auto & fs = sig.functions()[*f];
                    if (args.size() != fs.args.size())
                        fail(t, "arity mismatch: '" + fs.name + "' expects " + to_string(fs.args.size()) + " arguments, got " + to_string(args.size()));
                    for (std::size_t i = 0; i < args.size(); ++i)
                        if (type_of(sig, args[i]) != fs.args[i])
                            fail(t, "arity mismatch: argument " + to_string(i + 1) + " of '" + fs.name + "' has sort '"
                                    + sig.sorts()[type_of(sig, args[i])] + "', expected '" + sig.sorts()[fs.args[i]] + "'");
                    return Term::make_apply(*f, std::move(args));
                }

                for (const auto & v : ctx)
                    if (v.name == t.text)
                        return Term::make_var(v.name, v.sort);
                if (auto f = sig.find_function(t.text)) {
                    if (! sig.functions()[*f].args.empty())
                        fail(t, "function '" + t.text + "' applied to no arguments");
                    return Term::make_apply(*f, {});
                }
                fail(t, "unbound variable '" + t.text + "'");
            }
        };

        auto join(const vector<string> & parts, const string & sep) -> string
        {
            string out;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                if (i)
                    out += sep;
                out += parts[i];
            }
            return out;
        }

        auto sort_product_text(const Signature & sig, const vector<SortId> & ss) -> string
        {
            vector<string> names;
            for (auto s : ss)
                names.push_back(sig.sorts()[s]);
            return join(names, " * ");
        }

        auto context_text(const Signature & sig, const Context & ctx) -> string
        {
            vector<string> parts;
            for (const auto & v : ctx)
                parts.push_back(v.name + ":" + sig.sorts()[v.sort]);
            return "[" + join(parts, ", ") + "]";
        }
    }

    auto parse_document(const string & text, const string & file, const Document * imports) -> Document
    {
        Parser p{text, file, imports};
        return p.document();
    }

    auto parse_theory(const string & text, const string & file) -> TheoryPtr
    {
        auto doc = parse_document(text, file);
        if (doc.theories.size() != 1 || ! doc.morphisms.empty() || ! doc.relatives.empty())
            throw ParseError{file, 1, 1, "expected exactly one theory block"};
        return doc.theories.front();
    }

    auto parse_sequents(const Signature & sig, const string & text, const string & file) -> vector<Sequent>
    {
        Parser p{text, file, nullptr};
        return p.sequents_only(sig);
    }

    auto print_term(const Signature & sig, const Term & t) -> string
    {
        if (t.kind == Term::Kind::variable)
            return t.var.name;
        const auto & f = sig.functions()[t.function];
        if (t.args.empty())
            return f.name;
        vector<string> parts;
        for (const auto & a : t.args)
            parts.push_back(print_term(sig, a));
        return f.name + "(" + join(parts, ", ") + ")";
    }

    auto print_formula(const Signature & sig, const Formula & f) -> string
    {
        switch (f.kind) {
        case Formula::Kind::truth: return "top";
        case Formula::Kind::equation:
            if (f.terms[0] == f.terms[1])
                return "def(" + print_term(sig, f.terms[0]) + ")";
            return print_term(sig, f.terms[0]) + " = " + print_term(sig, f.terms[1]);
        case Formula::Kind::relation: {
            vector<string> parts;
            for (const auto & a : f.terms)
                parts.push_back(print_term(sig, a));
            return sig.relations()[f.relation].name + "(" + join(parts, ", ") + ")";
        }
        case Formula::Kind::conjunction: {
            auto rhs = print_formula(sig, f.parts[1]);
            if (f.parts[1].kind == Formula::Kind::conjunction)
                rhs = "(" + rhs + ")";
            return print_formula(sig, f.parts[0]) + " & " + rhs;
        }
        }
        return {};
    }

    auto print_sequent(const Signature & sig, const Sequent & s) -> string
    {
        return context_text(sig, s.context) + " " + print_formula(sig, s.premise) + " |- " + print_formula(sig, s.conclusion);
    }

    auto print_theory(const Theory & t) -> string
    {
        const auto & sig = *t.signature;
        std::ostringstream out;
        out << "theory " << t.name << " {\n";
        if (! t.flags.empty())
            out << "  flags " << join(vector<string>(t.flags.begin(), t.flags.end()), ", ") << ";\n";
        if (! sig.sorts().empty())
            out << "  sorts " << join(sig.sorts(), ", ") << ";\n";
        if (! sig.functions().empty()) {
            out << "  functions\n";
            for (const auto & f : sig.functions())
                out << "    " << f.name << " : " << (f.args.empty() ? "" : sort_product_text(sig, f.args) + " ") << "-> " << sig.sorts()[f.result]
                    << ";\n";
        }
        if (! sig.relations().empty()) {
            out << "  relations\n";
            for (const auto & r : sig.relations())
                out << "    " << r.name << " : " << (r.args.empty() ? "()" : sort_product_text(sig, r.args)) << ";\n";
        }
        if (! t.axioms.empty()) {
            out << "  axioms\n";
            for (const auto & a : t.axioms)
                out << "    " << print_sequent(sig, a) << ";\n";
        }
        out << "}\n";
        return out.str();
    }

    auto print_morphism(const TheoryMorphism & rho) -> string
    {
        const auto & src = *rho.source->signature;
        const auto & tgt = *rho.target->signature;
        std::ostringstream out;
        out << "morphism " << rho.name << " : " << rho.source->name << " -> " << rho.target->name << " {\n";
        for (SortId s = 0; s < rho.sort_map.size(); ++s)
            out << "  sort " << src.sorts()[s] << " -> " << tgt.sorts()[rho.sort_map[s]] << ";\n";
        for (FunctionId f = 0; f < rho.function_map.size(); ++f)
            out << "  function " << src.functions()[f].name << " -> " << tgt.functions()[rho.function_map[f]].name << ";\n";
        for (RelationId r = 0; r < rho.relation_map.size(); ++r)
            out << "  relation " << src.relations()[r].name << " -> " << tgt.relations()[rho.relation_map[r]].name << ";\n";
        out << "}\n";
        return out.str();
    }

    auto print_relative(const RelativeTheory & rt) -> string
    {
        const auto & base = *rt.base->signature;
        std::ostringstream out;
        out << "relative " << rt.name << " over " << rt.base->name << " {\n";
        if (! rt.operations.empty()) {
            out << "  operations\n";
            for (const auto & op : rt.operations)
                out << "    " << op.name << " : " << context_text(base, op.arity_context) << " " << print_formula(base, op.arity) << " -> "
                    << base.sorts()[op.result] << ";\n";
        }
        if (! rt.judgments.empty()) {
            out << "  judgments\n";
            for (const auto & j : rt.judgments)
                out << "    " << print_sequent(*rt.combined, j) << ";\n";
        }
        out << "}\n";
        return out.str();
    }

    auto print_document(const Document & d) -> string
    {
        string out;
        for (const auto & t : d.theories)
            out += print_theory(*t) + "\n";
        for (const auto & r : d.relatives)
            out += print_relative(r) + "\n";
        for (const auto & m : d.morphisms)
            out += print_morphism(m) + "\n";
        if (! out.empty())
            out.pop_back();
        return out;
    }

    auto read_file(const string & path) -> string
    {
        std::ifstream in{path, std::ios::binary};
        if (! in)
            throw PhlError{"cannot open '" + path + "'"};
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
}
