#include <phl/corpus.hh>

#include <algorithm>
#include <map>
#include <mutex>
#include <regex>

using std::size_t;
using std::string;
using std::vector;

namespace phl
{
    namespace
    {
        const string source_text = R"(# Fixed corpus theories.

theory set {
    flags exact_surjection, disjoint_union;
    sorts X;
}

theory pos {
    flags disjoint_union;
    sorts X;
    relations leq : X * X;
    axioms
        [x:X] top |- leq(x, x);
        [x:X, y:X] leq(x, y) & leq(y, x) |- x = y;
        [x:X, y:X, z:X] leq(x, y) & leq(y, z) |- leq(x, z);
}

theory urel {
    flags disjoint_union;
    sorts X;
    relations P : X;
}

theory brel {
    flags disjoint_union;
    sorts X;
    relations R : X * X;
}

theory per {
    flags disjoint_union;
    sorts X;
    relations R : X * X;
    axioms
        [x:X, y:X] R(x, y) |- R(y, x);
        [x:X, y:X, z:X] R(x, y) & R(y, z) |- R(x, z);
}

theory preord {
    flags disjoint_union;
    sorts X;
    relations R : X * X;
    axioms
        [x:X] top |- R(x, x);
        [x:X, y:X, z:X] R(x, y) & R(y, z) |- R(x, z);
}

theory erel {
    flags disjoint_union;
    sorts X;
    relations R : X * X;
    axioms
        [x:X] top |- R(x, x);
        [x:X, y:X] R(x, y) |- R(y, x);
        [x:X, y:X, z:X] R(x, y) & R(y, z) |- R(x, z);
}

theory idem {
    flags disjoint_union;
    sorts X;
    functions f : X -> X;
    axioms
        [x:X] top |- def(f(x));
        [x:X] top |- f(f(x)) = f(x);
}

theory end {
    flags disjoint_union;
    sorts X;
    functions f : X -> X;
    axioms
        [x:X] top |- def(f(x));
}

theory arrow {
    flags disjoint_union;
    sorts A, B;
    functions f : A -> B;
    axioms
        [x:A] top |- def(f(x));
}

theory cospan {
    flags disjoint_union;
    sorts A, B, C;
    functions
        l : A -> C;
        r : B -> C;
    axioms
        [x:A] top |- def(l(x));
        [y:B] top |- def(r(y));
}

theory bowtie {
    flags disjoint_union;
    sorts B0, B1, T0, T1;
    functions
        f00 : B0 -> T0;
        f01 : B0 -> T1;
        f10 : B1 -> T0;
        f11 : B1 -> T1;
    axioms
        [x:B0] top |- def(f00(x)) & def(f01(x));
        [y:B1] top |- def(f10(y)) & def(f11(y));
}

theory bounded_lattice {
    sorts L;
    functions
        meet : L * L -> L;
        join : L * L -> L;
        zero : -> L;
        one : -> L;
    axioms
        [x:L, y:L] top |- def(meet(x, y)) & def(join(x, y));
        [] top |- def(zero) & def(one);
        [x:L] top |- meet(x, x) = x & join(x, x) = x;
        [x:L, y:L] top |- meet(x, y) = meet(y, x) & join(x, y) = join(y, x);
        [x:L, y:L, z:L] top |- meet(meet(x, y), z) = meet(x, meet(y, z));
        [x:L, y:L, z:L] top |- join(join(x, y), z) = join(x, join(y, z));
        [x:L, y:L] top |- meet(x, join(x, y)) = x & join(x, meet(x, y)) = x;
        [x:L] top |- join(x, zero) = x & meet(x, one) = x;
}

theory semigroup {
    sorts S;
    functions mul : S * S -> S;
    axioms
        [x:S, y:S] top |- def(mul(x, y));
        [x:S, y:S, z:S] top |- mul(mul(x, y), z) = mul(x, mul(y, z));
}

theory pointed {
    sorts X;
    functions p : -> X;
    axioms
        [] top |- def(p);
}

theory group {
    sorts G;
    functions
        e : -> G;
        mul : G * G -> G;
        inv : G -> G;
    axioms
        [] top |- def(e);
        [x:G, y:G] top |- def(mul(x, y));
        [x:G] top |- def(inv(x));
        [x:G, y:G, z:G] top |- mul(mul(x, y), z) = mul(x, mul(y, z));
        [x:G] top |- mul(e, x) = x & mul(x, e) = x;
        [x:G] top |- mul(inv(x), x) = e & mul(x, inv(x)) = e;
}

morphism pos_to_brel : pos -> brel {
    relation leq -> R;
}

morphism pos_to_preord : pos -> preord {
    relation leq -> R;
}

morphism pointed_to_group : pointed -> group {
    sort X -> G;
    function p -> e;
}

relative ordered_magma over pos {
    operations
        mul : [x:X, y:X] top -> X;
    judgments
        [x:X, y:X, z:X] leq(x, y) |- leq(mul(x, z), mul(y, z));
        [x:X, y:X, z:X] leq(x, y) |- leq(mul(z, x), mul(z, y));
}
)";

        std::mutex memo_mutex;

        auto canonical_name(string name) -> string
        {
            std::replace(name.begin(), name.end(), '-', '_');
            return name;
        }

        auto sorts_list(const string & prefix, size_t n) -> string
        {
            string out;
            for (size_t i = 0; i < n; ++i)
                out += (i ? ", " : "") + prefix + std::to_string(i);
            return out;
        }

        auto parse_generated(const string & text, const string & name) -> TheoryPtr
        {
            return parse_theory(text, "<" + name + ">");
        }
    }

    auto corpus_source() -> const string &
    {
        return source_text;
    }

    auto corpus_document() -> const Document &
    {
        static const Document doc = [] {
            auto d = parse_document(source_text, "<corpus>");
            for (const auto & t : d.theories) {
                auto report = validate_theory(*t);
                if (! report.ok())
                    throw PhlError{"corpus theory '" + t->name + "' is ill-formed: " + report.violations.front().message};
            }
            return d;
        }();
        return doc;
    }

    auto n_const_source(size_t n) -> string
    {
        string text = "theory n_const_" + std::to_string(n) + " {\n    flags exact_constants;\n    sorts X;\n";
        if (n > 0) {
            text += "    functions\n";
            for (size_t i = 0; i < n; ++i)
                text += "        c" + std::to_string(i) + " : -> X;\n";
            text += "    axioms\n";
            for (size_t i = 0; i < n; ++i)
                text += "        [] top |- def(c" + std::to_string(i) + ");\n";
        }
        return text + "}\n";
    }

    auto remark_locret_source(size_t k) -> string
    {
        string text = "theory remark_locret_" + std::to_string(k) + " {\n    sorts X;\n    functions\n        e : -> X;\n";
        for (size_t i = 0; i <= k; ++i)
            text += "        u" + std::to_string(i) + " : X -> X;\n";
        text += "    axioms\n";
        for (size_t i = 0; i <= k; ++i)
            text += "        [] top |- u" + std::to_string(i) + "(e) = e;\n";
        return text + "}\n";
    }

    auto remark_constants_source(size_t k) -> string
    {
        string text = "theory remark_constants_" + std::to_string(k) + " {\n    flags exact_constants;\n    sorts X;\n    functions\n";
        for (size_t i = 0; i <= k; ++i)
            text += "        c" + std::to_string(i) + " : -> X;\n";
        text += "    axioms\n";
        for (size_t i = 0; i <= k; ++i)
            text += "        [] top |- def(c" + std::to_string(i) + ");\n";
        return text + "}\n";
    }

    auto set_omega_source(size_t k) -> string
    {
        string text = "theory set_omega_" + std::to_string(k) + " {\n    flags disjoint_union;\n    sorts " + sorts_list("x", k + 1) + ";\n";
        if (k > 0) {
            text += "    functions\n";
            for (size_t i = 0; i < k; ++i)
                text += "        s" + std::to_string(i) + " : x" + std::to_string(i) + " -> x" + std::to_string(i + 1) + ";\n";
            text += "    axioms\n";
            for (size_t i = 0; i < k; ++i)
                text += "        [a:x" + std::to_string(i) + "] top |- def(s" + std::to_string(i) + "(a));\n";
        }
        return text + "}\n";
    }

    auto presheaf_omega_op_source(size_t k) -> string
    {
        string text = "theory presheaf_omega_op_" + std::to_string(k) + " {\n    flags disjoint_union;\n    sorts " + sorts_list("x", k + 1) + ";\n";
        if (k > 0) {
            text += "    functions\n";
            for (size_t i = 0; i < k; ++i)
                text += "        r" + std::to_string(i) + " : x" + std::to_string(i + 1) + " -> x" + std::to_string(i) + ";\n";
            text += "    axioms\n";
            for (size_t i = 0; i < k; ++i)
                text += "        [a:x" + std::to_string(i + 1) + "] top |- def(r" + std::to_string(i) + "(a));\n";
        }
        return text + "}\n";
    }

    auto corpus_theory(const string & name) -> TheoryPtr
    {
        static std::map<string, TheoryPtr> memo;
        auto key = canonical_name(name);
        if (key == "remark_locret" || key == "remark_constants")
            key += "(" + std::to_string(default_remark_truncation) + ")";
        std::lock_guard lock{memo_mutex};
        if (auto it = memo.find(key); it != memo.end())
            return it->second;

        TheoryPtr t;
        static const std::regex generated{R"(([a-z_]+)\((\d+)\))"};
        std::smatch m;
        if (std::regex_match(key, m, generated)) {
            auto base = m[1].str();
            auto n = static_cast<size_t>(std::stoul(m[2].str()));
            if (n > 64)
                throw PhlError{"generator parameter " + std::to_string(n) + " is too large"};
            if (base == "n_const")
                t = parse_generated(n_const_source(n), key);
            else if (base == "remark_locret")
                t = parse_generated(remark_locret_source(n), key);
            else if (base == "remark_constants")
                t = parse_generated(remark_constants_source(n), key);
            else if (base == "set_omega")
                t = parse_generated(set_omega_source(n), key);
            else if (base == "presheaf_omega_op")
                t = parse_generated(presheaf_omega_op_source(n), key);
        }
        else
            t = corpus_document().find_theory(key);
        if (! t)
            throw PhlError{"unknown corpus theory '" + name + "'"};
        memo.emplace(key, t);
        return t;
    }

    auto corpus_morphism(const string & name) -> TheoryMorphism
    {
        const auto * rho = corpus_document().find_morphism(canonical_name(name));
        if (! rho)
            throw PhlError{"unknown corpus morphism '" + name + "'"};
        // rebind to the memoized theories so reducts share signatures
        auto out = *rho;
        out.source = corpus_theory(rho->source->name);
        out.target = corpus_theory(rho->target->name);
        return out;
    }

    auto remark_locret_defining_sequent(size_t k) -> Sequent
    {
        auto t = corpus_theory("remark-locret(" + std::to_string(k) + ")");
        string premise;
        for (size_t i = 0; i <= k; ++i)
            premise += (i ? " & u" : "u") + std::to_string(i) + "(x) = e";
        return parse_sequents(*t->signature, "[x:X] " + premise + " |- x = e;", "<remark-locret sequent>").at(0);
    }

    namespace
    {
        auto labels(size_t n) -> vector<string>
        {
            vector<string> out;
            for (size_t i = 0; i < n; ++i)
                out.push_back(std::to_string(i));
            return out;
        }

        auto el(size_t i) -> Element
        {
            return static_cast<Element>(i);
        }

        auto primes(size_t n) -> vector<size_t>
        {
            vector<size_t> out;
            for (size_t c = 2; out.size() < n; ++c) {
                bool prime = true;
                for (auto p : out)
                    if (c % p == 0)
                        prime = false;
                if (prime)
                    out.push_back(c);
            }
            return out;
        }
    }

    auto lattice_M(size_t n) -> StructurePtr
    {
        auto t = corpus_theory("bounded-lattice");
        const auto & sig = *t->signature;
        vector<string> names{"0", "1"};
        for (size_t i = 0; i < n; ++i)
            names.push_back("a" + std::to_string(i));
        auto m = std::make_shared<PartialStructure>(t->signature, vector<vector<string>>{names});
        const auto size = names.size();
        auto meet = [](size_t x, size_t y) -> size_t {
            if (x == y)
                return x;
            if (x == 1)
                return y;
            if (y == 1)
                return x;
            return 0;
        };
        auto join = [](size_t x, size_t y) -> size_t {
            if (x == y)
                return x;
            if (x == 0)
                return y;
            if (y == 0)
                return x;
            return 1;
        };
        for (size_t x = 0; x < size; ++x)
            for (size_t y = 0; y < size; ++y) {
                m->set_value(sig.function_id("meet"), {el(x), el(y)}, el(meet(x, y)));
                m->set_value(sig.function_id("join"), {el(x), el(y)}, el(join(x, y)));
            }
        m->set_value(sig.function_id("zero"), {}, 0);
        m->set_value(sig.function_id("one"), {}, 1);
        m->name = "M_" + std::to_string(n);
        return m;
    }

    auto end_cycle(size_t n) -> StructurePtr
    {
        auto t = corpus_theory("end");
        auto m = std::make_shared<PartialStructure>(t->signature, vector<vector<string>>{labels(n)});
        for (size_t i = 0; i < n; ++i)
            m->set_value(0, {el(i)}, el((i + 1) % n));
        m->name = "C_" + std::to_string(n);
        return m;
    }

    auto end_A(size_t n) -> StructurePtr
    {
        auto t = corpus_theory("end");
        vector<string> names;
        vector<size_t> offsets;
        auto ps = primes(n);
        for (auto p : ps) {
            offsets.push_back(names.size());
            for (size_t i = 0; i < p; ++i)
                names.push_back(std::to_string(p) + "." + std::to_string(i));
        }
        auto m = std::make_shared<PartialStructure>(t->signature, vector<vector<string>>{names});
        for (size_t c = 0; c < ps.size(); ++c)
            for (size_t i = 0; i < ps[c]; ++i)
                m->set_value(0, {el(offsets[c] + i)}, el(offsets[c] + (i + 1) % ps[c]));
        m->name = "A_" + std::to_string(n);
        return m;
    }

    auto presheaf_L(size_t i, size_t k) -> StructurePtr
    {
        auto t = corpus_theory("presheaf-omega-op(" + std::to_string(k) + ")");
        vector<vector<string>> carriers;
        for (size_t n = 0; n <= k; ++n)
            carriers.push_back(n < i ? vector<string>{"*"} : vector<string>{});
        auto m = std::make_shared<PartialStructure>(t->signature, carriers);
        for (size_t n = 0; n < k; ++n)
            if (n + 1 < i)
                m->set_value(static_cast<FunctionId>(n), {0}, 0);
        m->name = "L_" + std::to_string(i);
        return m;
    }

    auto set_omega_U(size_t alpha, size_t k) -> StructurePtr
    {
        auto t = corpus_theory("set-omega(" + std::to_string(k) + ")");
        vector<vector<string>> carriers;
        for (size_t n = 0; n <= k; ++n)
            carriers.push_back(n >= alpha ? vector<string>{"*"} : vector<string>{});
        auto m = std::make_shared<PartialStructure>(t->signature, carriers);
        for (size_t n = 0; n < k; ++n)
            if (n >= alpha)
                m->set_value(static_cast<FunctionId>(n), {0}, 0);
        m->name = alpha > k ? "U_omega" : "U_" + std::to_string(alpha);
        return m;
    }

    auto cospan_S(size_t i) -> StructurePtr
    {
        if (i > 5)
            throw PhlError{"cospan S_" + std::to_string(i) + " does not exist"};
        auto t = corpus_theory("cospan");
        // sizes of A, B, C
        const size_t sizes[6][3] = {{0, 0, 0}, {0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 2}, {1, 1, 1}};
        auto m = std::make_shared<PartialStructure>(
            t->signature, vector<vector<string>>{labels(sizes[i][0]), labels(sizes[i][1]), labels(sizes[i][2])});
        if (sizes[i][0])
            m->set_value(0, {0}, 0);
        if (sizes[i][1])
            m->set_value(1, {0}, i == 4 ? 1 : 0);
        m->name = "S_" + std::to_string(i);
        return m;
    }

    auto remark_A(size_t n, size_t k) -> StructurePtr
    {
        auto t = corpus_theory("remark-locret(" + std::to_string(k) + ")");
        const auto & sig = *t->signature;
        auto m = std::make_shared<PartialStructure>(t->signature, vector<vector<string>>{{"0", "a"}});
        m->set_value(sig.function_id("e"), {}, 0);
        for (size_t j = 0; j <= k; ++j) {
            auto u = sig.function_id("u" + std::to_string(j));
            m->set_value(u, {0}, 0);
            if (j < n)
                m->set_value(u, {1}, 0);
        }
        m->name = n > k ? "A (all u defined)" : "A_" + std::to_string(n) + " (u-chain)";
        return m;
    }

    auto remark_constants_split(size_t k) -> StructurePtr
    {
        auto t = corpus_theory("remark-constants(" + std::to_string(k) + ")");
        auto m = std::make_shared<PartialStructure>(t->signature, vector<vector<string>>{labels(2)});
        for (size_t i = 0; i <= k; ++i)
            m->set_value(static_cast<FunctionId>(i), {}, i == 0 ? 0 : 1);
        m->name = "c0 apart";
        return m;
    }

    auto remark_constants_point(size_t k) -> StructurePtr
    {
        auto t = corpus_theory("remark-constants(" + std::to_string(k) + ")");
        auto m = std::make_shared<PartialStructure>(terminal_structure(t->signature));
        m->name = "1";
        return m;
    }

    auto set_of_size(size_t n) -> StructurePtr
    {
        auto m = std::make_shared<PartialStructure>(corpus_theory("set")->signature, vector<vector<string>>{labels(n)});
        m->name = std::to_string(n);
        return m;
    }

    auto chain_poset_structure(size_t n) -> StructurePtr
    {
        auto m = std::make_shared<PartialStructure>(corpus_theory("pos")->signature, vector<vector<string>>{labels(n)});
        for (size_t a = 0; a < n; ++a)
            for (size_t b = a; b < n; ++b)
                m->set_holds(0, {el(a), el(b)}, true);
        m->name = "chain " + std::to_string(n);
        return m;
    }

    auto discrete_poset_structure(size_t n) -> StructurePtr
    {
        auto m = std::make_shared<PartialStructure>(corpus_theory("pos")->signature, vector<vector<string>>{labels(n)});
        for (size_t a = 0; a < n; ++a)
            m->set_holds(0, {el(a), el(a)}, true);
        m->name = "discrete " + std::to_string(n);
        return m;
    }

    namespace
    {
        // Inclusion of carriers by index.
        auto index_inclusion(const StructurePtr & a, const StructurePtr & b) -> Homomorphism
        {
            Homomorphism h{a, b, {}};
            for (SortId s = 0; s < a->signature().sorts().size(); ++s) {
                h.maps.emplace_back();
                for (size_t i = 0; i < a->carrier_size(s); ++i)
                    h.maps.back().push_back(el(i));
            }
            return h;
        }

        auto inclusion_chain(string name, TheoryPtr theory, std::function<StructurePtr(size_t)> stage) -> ChainRecipe
        {
            ChainRecipe c;
            c.name = std::move(name);
            c.theory = std::move(theory);
            c.stage = stage;
            c.connect = [stage](size_t n) { return index_inclusion(stage(n), stage(n + 1)); };
            return c;
        }

        constexpr size_t presheaf_base = 4;
        constexpr size_t remark_k = 2;
    }

    auto corpus_chain(const string & name) -> ChainRecipe
    {
        if (name == "lattice-M")
            return inclusion_chain(name, corpus_theory("bounded-lattice"), [](size_t n) { return lattice_M(n + 2); });
        if (name == "end-A")
            return inclusion_chain(name, corpus_theory("end"), [](size_t n) { return end_A(n + 1); });
        if (name == "presheaf-L")
            return inclusion_chain(name, corpus_theory("presheaf-omega-op(" + std::to_string(presheaf_base) + ")"),
                [](size_t n) { return presheaf_L(std::min(n, presheaf_base + 1), presheaf_base); });
        if (name == "set-growing")
            return inclusion_chain(name, corpus_theory("set"), [](size_t n) { return set_of_size(n + 1); });
        if (name == "remark-A") {
            auto c = inclusion_chain(name, corpus_theory("remark-locret(" + std::to_string(remark_k) + ")"),
                [](size_t n) { return remark_A(std::min(n, remark_k + 1), remark_k); });
            c.fact_stabilization = remark_k + 1;
            return c;
        }
        if (name == "pos-constant")
            return constant_chain(name, corpus_theory("pos"), chain_poset_structure(2));
        throw PhlError{"unknown corpus chain '" + name + "'"};
    }

    auto corpus_chain_names() -> vector<string>
    {
        return {"end-A", "lattice-M", "pos-constant", "presheaf-L", "remark-A", "set-growing"};
    }

    auto corpus_entries() -> vector<CorpusEntry>
    {
        auto lit = [](string note) { return Provenance{"literature", std::move(note)}; };
        auto derived = [](string note) { return Provenance{"derived", std::move(note)}; };
        auto trivial = [](string note) { return Provenance{"trivial", std::move(note)}; };
        vector<CorpusEntry> out{
            {"set", "theory", "sets; local retractions are the surjections", {"acc-true"}, lit("2 components")},
            {"pos", "theory", "posets as a relational theory", {"acc-true"}, lit("2 components")},
            {"urel", "theory", "sets with a unary relation", {"acc-true"}, lit("3 components")},
            {"brel", "theory", "sets with a binary relation", {"acc-false"}, lit("infinitely many components")},
            {"per", "theory", "sets with a symmetric transitive relation", {"acc-true"}, lit("3 components")},
            {"preord", "theory", "preordered sets", {"acc-true"}, lit("2 components")},
            {"erel", "theory", "sets with an equivalence relation", {"acc-true"}, lit("2 components")},
            {"idem", "theory", "sets with an idempotent endomorphism", {"acc-true"}, lit("2 components")},
            {"end", "theory", "sets with an endomorphism; A_n are sums of prime cycles", {"acc-false"}, lit("no map A_n -> A_m for n > m")},
            {"arrow", "theory", "maps between two sets", {"acc-true"}, lit("3 components")},
            {"cospan", "theory", "cospans of sets", {"acc-true"}, lit("6 components")},
            {"bowtie", "theory", "presheaves on the two-by-two complete bipartite category", {"acc-false"}, lit("End embeds fully")},
            {"bounded-lattice", "theory", "bounded lattices; M_n has n atoms", {"acc-false"}, lit("no map M_n -> M_m for n > m")},
            {"semigroup", "theory", "semigroups; the separating chain is infinite and is not computed", {"acc-false"}, lit("infinitely many components")},
            {"pointed", "theory", "pointed sets", {"acc-true"}, lit("1 component")},
            {"group", "theory", "groups as total operations", {"acc-true"}, lit("1 component")},
            {"n-const(1)", "theory", "sets with 1 constant", {"acc-true"}, lit("Bell(1) = 1 component")},
            {"n-const(2)", "theory", "sets with 2 constants", {"acc-true"}, lit("Bell(2) = 2 components")},
            {"n-const(3)", "theory", "sets with 3 constants", {"acc-true"}, lit("Bell(3) = 5 components")},
            {"n-const(4)", "theory", "sets with 4 constants", {"acc-true"}, lit("Bell(4) = 15 components")},
            {"remark-locret(K)", "theory", "constant e and partial unary u_0 .. u_K fixing e", {"counterexample"},
                lit("closed under products, closed subobjects and retracts, not under filtered colimits")},
            {"remark-constants(K)", "theory", "constants c_0 .. c_K; local retractions are surjections merging no constants",
                {"counterexample"}, lit("merging surjections are not local retractions")},
            {"set-omega(K)", "theory", "functors from the chain 0 -> ... -> K to sets", {"acc-true"}, lit("components U_0 > ... > U_K > U_omega")},
            {"presheaf-omega-op(K)", "theory", "presheaves on the chain 0 -> ... -> K", {"acc-false"}, lit("no map L_n -> L_m for n > m")},
            {"pos_to_brel", "morphism", "leq to a bare binary relation", {}, derived("translated axioms fail in small models")},
            {"pos_to_preord", "morphism", "leq to a preorder", {}, derived("antisymmetry fails in small models")},
            {"pointed_to_group", "morphism", "point to the unit", {}, derived("translated axiom holds in every group")},
            {"ordered_magma", "relative", "a binary operation monotone in each argument, over pos", {}, trivial("compiles")},
            {"lattice-M", "chain", "M_2 -> M_3 -> ...", {"acc-false"}, lit("no map M_n -> M_m for n > m")},
            {"end-A", "chain", "A_1 -> A_2 -> ... by coprojections", {"acc-false"}, lit("no map A_n -> A_m for n > m")},
            {"presheaf-L", "chain", "L_0 -> L_1 -> ... on the base 0 .. 4", {"acc-false"}, lit("no map L_n -> L_m for n > m")},
            {"set-growing", "chain", "1 -> 2 -> 3 -> ...", {"acc-true"}, lit("nonempty sets are strongly connected")},
            {"remark-A", "chain", "A_0 -> A_1 -> ... on {0, a}, K = 2, facts stable from 3", {"remark"}, lit("colimit escapes the class")},
            {"pos-constant", "chain", "the 2-chain, constantly", {}, trivial("stable at 0")},
        };
        return out;
    }
}
