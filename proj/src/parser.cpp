#include <cctype>
#include <fstream>
#include <sstream>

#include "dgw/errors.hpp"
#include "dgw/presentation.hpp"

namespace dgw {

namespace {

enum class Tok { Ident, Int, Sym, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int col = 1;
};

std::vector<Token> tokenize(std::string_view src)
{
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        const char ch = src[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            advance(1);
            continue;
        }
        if (ch == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            t.kind = Tok::Ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            t.kind = Tok::Int;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (std::string_view("{}();,*+-^=@").find(ch) != std::string_view::npos) {
            t.kind = Tok::Sym;
            t.text = std::string(1, ch);
            advance(1);
        } else {
            throw ParseError(std::string("unexpected character '") + ch + "'", line, col);
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

/// A product term before name resolution: coefficient and named factors.
struct RawTerm {
    Fp coeff{1};
    std::vector<std::pair<std::string, int>> factors;
    Token where;
};

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

    Document run()
    {
        while (peek().kind != Tok::End) statement();
        return std::move(doc_);
    }

    /// Entry point for parse_ring_element.
    std::vector<RawTerm> lone_expression()
    {
        auto e = expression();
        if (peek().kind != Tok::End) fail("trailing input");
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }
    [[noreturn]] void fail(const std::string& msg, const Token* at = nullptr) const
    {
        const Token& t = at ? *at : peek();
        throw ParseError(msg + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"), t.line, t.col);
    }
    bool is_sym(const char* s) const { return peek().kind == Tok::Sym && peek().text == s; }
    bool is_word(const char* s) const { return peek().kind == Tok::Ident && peek().text == s; }
    void expect_sym(const char* s)
    {
        if (!is_sym(s)) fail(std::string("expected '") + s + "'");
        ++pos_;
    }
    bool accept_sym(const char* s)
    {
        if (!is_sym(s)) return false;
        ++pos_;
        return true;
    }
    std::string ident()
    {
        if (peek().kind != Tok::Ident) fail("expected identifier");
        return next().text;
    }
    long long integer()
    {
        bool neg = accept_sym("-");
        if (peek().kind != Tok::Int) fail("expected integer");
        long long v = std::stoll(next().text);
        return neg ? -v : v;
    }
    Bidegree bidegree()
    {
        expect_sym("(");
        Bidegree b;
        b.n = static_cast<int>(integer());
        expect_sym(",");
        b.d = static_cast<int>(integer());
        expect_sym(")");
        return b;
    }

    void statement()
    {
        const Token start = peek();
        const std::string kw = ident();
        if (kw == "ring" || kw == "dgring") {
            const std::string name = ident();
            check_fresh(name, start);
            if (accept_sym("=")) {
                ring_builtin(name, start);
            } else {
                RingPresentation r = ring_block(name, kw == "dgring");
                guarded(start, [&] { validate(r); });
                doc_.rings.push_back(std::move(r));
            }
        } else if (kw == "module") {
            const std::string name = ident();
            check_fresh(name, start);
            if (accept_sym("=")) {
                module_builtin(name, start);
            } else {
                if (!is_word("over")) fail("expected 'over'");
                ++pos_;
                const Token rt = peek();
                const RingPresentation* ring = doc_.ring(ident());
                if (!ring) fail("unknown ring", &rt);
                ModulePresentation m = module_block(name, *ring);
                guarded(start, [&] { validate(m); });
                doc_.modules.push_back(std::move(m));
            }
        } else {
            fail("expected 'ring', 'dgring' or 'module'", &start);
        }
        accept_sym(";");
    }

    template <class F>
    void guarded(const Token& at, F&& f)
    {
        try {
            f();
        } catch (const InputError& e) {
            throw ParseError(e.what(), at.line, at.col);
        }
    }

    void check_fresh(const std::string& name, const Token& at)
    {
        if (doc_.ring(name) || doc_.module(name)) throw ParseError("redefinition of '" + name + "'", at.line, at.col);
    }

    RingPresentation ring_block(const std::string& name, bool allow_diff)
    {
        RingPresentation r;
        r.name = name;
        expect_sym("{");
        if (is_word("component")) {
            while (accept_word("component")) {
                expect_sym("{");
                r.components.push_back(component_body(allow_diff));
                expect_sym("}");
                accept_sym(";");
            }
        } else {
            r.components.push_back(component_body(allow_diff));
        }
        expect_sym("}");
        return r;
    }

    bool accept_word(const char* w)
    {
        if (!is_word(w)) return false;
        ++pos_;
        return true;
    }

    ComponentPresentation component_body(bool allow_diff)
    {
        ComponentPresentation c;
        struct PendingDiff {
            std::size_t gen;
            std::vector<RawTerm> terms;
        };
        std::vector<std::vector<RawTerm>> rels;
        std::vector<PendingDiff> diffs;
        while (!is_sym("}")) {
            const Token t = peek();
            const std::string kw = ident();
            if (kw == "gen") {
                GenSpec g;
                g.name = ident();
                g.deg = bidegree();
                if (c.find(g.name)) fail("duplicate generator '" + g.name + "'", &t);
                c.gens.push_back(std::move(g));
            } else if (kw == "rel") {
                rels.push_back(expression());
            } else if (kw == "diff") {
                if (!allow_diff) fail("'diff' is only allowed in a dgring", &t);
                const Token gt = peek();
                auto g = c.find(ident());
                if (!g) fail("unknown generator", &gt);
                expect_sym("=");
                diffs.push_back({*g, expression()});
            } else {
                fail("expected 'gen', 'rel' or 'diff'", &t);
            }
            expect_sym(";");
        }
        c.diff.assign(c.gens.size(), {});
        for (auto& rel : rels) {
            Poly p = resolve_component(c, rel);
            if (p.size() != 1) fail("relation must be a single monomial", &rel.front().where);
            c.rels.push_back(p.begin()->first);
        }
        for (auto& d : diffs) c.diff[d.gen] = resolve_component(c, d.terms);
        return c;
    }

    std::vector<RawTerm> expression()
    {
        std::vector<RawTerm> terms;
        bool negate = false;
        if (accept_sym("-")) negate = true;
        for (;;) {
            RawTerm t = term();
            if (negate) t.coeff = -t.coeff;
            terms.push_back(std::move(t));
            if (accept_sym("+"))
                negate = false;
            else if (accept_sym("-"))
                negate = true;
            else
                break;
        }
        return terms;
    }

    RawTerm term()
    {
        RawTerm t;
        t.where = peek();
        for (;;) {
            if (peek().kind == Tok::Int) {
                t.coeff *= Fp(std::stoll(next().text));
            } else if (peek().kind == Tok::Ident) {
                std::string name = next().text;
                int e = 1;
                if (accept_sym("^")) e = static_cast<int>(integer());
                if (e < 0) fail("negative exponent");
                t.factors.emplace_back(std::move(name), e);
            } else {
                fail("expected factor");
            }
            if (!accept_sym("*")) break;
        }
        return t;
    }

    Poly resolve_component(const ComponentPresentation& c, const std::vector<RawTerm>& terms) const
    {
        Poly p;
        for (const auto& t : terms) {
            Exponents e(c.gens.size(), 0);
            for (const auto& [name, exp] : t.factors) {
                auto i = c.find(name);
                if (!i) fail("unknown generator '" + name + "'", &t.where);
                e[*i] += exp;
            }
            Fp coeff = t.coeff;
            // normalise products of odd generators written out of order
            Poly single{{c.unit(), coeff}};
            for (const auto& [name, exp] : t.factors) {
                Exponents g(c.gens.size(), 0);
                g[*c.find(name)] = 1;
                for (int k = 0; k < exp; ++k) single = c.multiply(single, Poly{{g, Fp(1)}});
            }
            for (const auto& [m, v] : single) {
                auto [it, ins] = p.emplace(m, v);
                if (!ins) {
                    it->second += v;
                    if (it->second.is_zero()) p.erase(it);
                }
            }
        }
        return p;
    }

public:
    RingElement resolve_ring_element(const RingPresentation& r, const std::vector<RawTerm>& terms) const
    {
        RingElement out(r.components.size());
        for (const auto& t : terms) {
            bool found = false;
            for (std::size_t c = 0; c < r.components.size(); ++c) {
                const auto& comp = r.components[c];
                bool all = true;
                for (const auto& f : t.factors) all = all && comp.find(f.first).has_value();
                if (!all) continue;
                found = true;
                for (const auto& [m, v] : resolve_component(comp, {t})) {
                    auto [it, ins] = out[c].emplace(m, v);
                    if (!ins) {
                        it->second += v;
                        if (it->second.is_zero()) out[c].erase(it);
                    }
                }
            }
            if (!found) fail("no component of '" + r.name + "' contains this monomial", &t.where);
        }
        for (std::size_t c = 0; c < out.size(); ++c) out[c] = r.components[c].reduce(std::move(out[c]));
        return out;
    }

private:
    std::vector<RingElement> element_list(const RingPresentation& r)
    {
        std::vector<RingElement> out;
        if (is_sym(")")) return out;
        do {
            const Token t = peek();
            if (t.kind == Tok::Int && t.text == "0" && (toks_[pos_ + 1].text == ")" || toks_[pos_ + 1].text == ",")) {
                fail("zero element", &t);
            }
            out.push_back(resolve_ring_element(r, expression()));
        } while (accept_sym(","));
        return out;
    }

    const RingPresentation& ring_ref()
    {
        const Token t = peek();
        const RingPresentation* r = doc_.ring(ident());
        if (!r) fail("unknown ring", &t);
        return *r;
    }

    const ModulePresentation& module_ref()
    {
        const Token t = peek();
        const ModulePresentation* m = doc_.module(ident());
        if (!m) fail("unknown module", &t);
        return *m;
    }

    void ring_builtin(const std::string& name, const Token& start)
    {
        const Token t = peek();
        const std::string fn = ident();
        expect_sym("(");
        RingPresentation out;
        if (fn == "koszul") {
            const RingPresentation& r = ring_ref();
            std::vector<RingElement> els;
            if (accept_sym(";")) els = element_list(r);
            guarded(start, [&] { out = koszul(r, els, name); });
        } else if (fn == "trivext") {
            const RingPresentation& r = ring_ref();
            expect_sym(",");
            const ModulePresentation& m = module_ref();
            guarded(start, [&] { out = trivial_extension(r, m, name); });
        } else if (fn == "h0") {
            const RingPresentation& r = ring_ref();
            auto h = h0_presentation(r, name);
            if (!h) fail("H0 of '" + r.name + "' is not a monomial quotient", &t);
            out = std::move(*h);
        } else {
            fail("unknown ring constructor '" + fn + "'", &t);
        }
        expect_sym(")");
        doc_.rings.push_back(std::move(out));
    }

    void module_builtin(const std::string& name, const Token& start)
    {
        const Token t = peek();
        const std::string fn = ident();
        expect_sym("(");
        ModulePresentation out;
        if (fn == "quotient") {
            const RingPresentation& r = ring_ref();
            std::vector<RingElement> els;
            if (accept_sym(";")) els = element_list(r);
            guarded(start, [&] { out = quotient_module(r, els, name); });
        } else if (fn == "free") {
            const RingPresentation& r = ring_ref();
            guarded(start, [&] { out = free_module(r, name); });
        } else if (fn == "shift") {
            const ModulePresentation& m = module_ref();
            expect_sym(";");
            const int k = static_cast<int>(integer());
            guarded(start, [&] { out = shift_presentation(m, k, name); });
        } else if (fn == "extend" || fn == "inflate") {
            const ModulePresentation& m = module_ref();
            expect_sym(";");
            const RingPresentation& r = ring_ref();
            guarded(start, [&] {
                out = fn == "extend" ? extend_scalars(m, r, name) : inflate_presentation(m, r, name);
            });
        } else {
            fail("unknown module constructor '" + fn + "'", &t);
        }
        expect_sym(")");
        doc_.modules.push_back(std::move(out));
    }

    ModulePresentation module_block(const std::string& name, const RingPresentation& ring)
    {
        ModulePresentation m;
        m.name = name;
        m.ring = ring;
        expect_sym("{");
        std::vector<std::vector<RawTerm>> rels;
        std::vector<std::pair<std::size_t, std::vector<RawTerm>>> diffs;
        while (!is_sym("}")) {
            const Token t = peek();
            const std::string kw = ident();
            if (kw == "gen") {
                ModuleGen g;
                g.name = ident();
                g.deg = bidegree();
                if (accept_sym("@")) {
                    const long long c = integer();
                    if (c < 1 || c > static_cast<long long>(ring.components.size())) fail("component index out of range", &t);
                    g.component = static_cast<std::size_t>(c - 1);
                }
                if (m.find(g.name)) fail("duplicate generator '" + g.name + "'", &t);
                if (ring.components[g.component].find(g.name)) fail("module generator shadows ring generator", &t);
                m.gens.push_back(std::move(g));
            } else if (kw == "rel") {
                rels.push_back(expression());
            } else if (kw == "diff") {
                const Token gt = peek();
                auto g = m.find(ident());
                if (!g) fail("unknown module generator", &gt);
                expect_sym("=");
                diffs.emplace_back(*g, expression());
            } else {
                fail("expected 'gen', 'rel' or 'diff'", &t);
            }
            expect_sym(";");
        }
        expect_sym("}");
        m.diff.assign(m.gens.size(), {});
        for (auto& rel : rels)
            if (auto el = module_element(m, rel); !el.empty()) m.rels.push_back(std::move(el));
        for (auto& [g, terms] : diffs) m.diff[g] = module_element(m, terms);
        return m;
    }

    ModuleElement module_element(const ModulePresentation& m, const std::vector<RawTerm>& terms) const
    {
        ModuleElement el;
        for (const auto& t : terms) {
            std::optional<std::size_t> gen;
            RawTerm ring_part = t;
            ring_part.factors.clear();
            for (const auto& f : t.factors) {
                if (auto g = m.find(f.first)) {
                    if (gen || f.second != 1) fail("each term needs exactly one module generator", &t.where);
                    gen = g;
                } else {
                    ring_part.factors.push_back(f);
                }
            }
            if (!gen) fail("term has no module generator", &t.where);
            const auto& comp = m.ring.components[m.gens[*gen].component];
            for (const auto& [mono, v] : comp.reduce(resolve_component(comp, {ring_part})))
                el.push_back({v, mono, *gen});
        }
        return el;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Document doc_;
};

std::string poly_text(const ComponentPresentation& c, const Poly& p)
{
    std::string s;
    for (const auto& [e, v] : p) {
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += c.gens[i].name;
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        const auto b = v.balanced();
        std::string coeff;
        if (b < 0) {
            s += s.empty() ? "-" : " - ";
            if (b != -1 || mono.empty()) coeff = std::to_string(-b);
        } else {
            if (!s.empty()) s += " + ";
            if (b != 1 || mono.empty()) coeff = std::to_string(b);
        }
        s += coeff;
        if (!coeff.empty() && !mono.empty()) s += "*";
        s += mono;
    }
    return s.empty() ? "0" : s;
}

std::string element_text(const ModulePresentation& m, const ModuleElement& el)
{
    std::string s;
    for (const auto& t : el) {
        const auto& comp = m.ring.components[m.gens[t.gen].component];
        std::string mono;
        for (std::size_t i = 0; i < t.mono.size(); ++i) {
            if (t.mono[i] == 0) continue;
            mono += comp.gens[i].name;
            if (t.mono[i] > 1) mono += "^" + std::to_string(t.mono[i]);
            mono += "*";
        }
        mono += m.gens[t.gen].name;
        const auto b = t.coeff.balanced();
        if (b < 0) {
            s += s.empty() ? "-" : " - ";
            if (b != -1) s += std::to_string(-b) + "*";
        } else {
            if (!s.empty()) s += " + ";
            if (b != 1) s += std::to_string(b) + "*";
        }
        s += mono;
    }
    return s.empty() ? "0" : s;
}

}  // namespace

RingElement parse_ring_element(const RingPresentation& r, std::string_view text)
{
    Parser p(text);
    auto terms = p.lone_expression();
    return p.resolve_ring_element(r, terms);
}

Document parse(std::string_view text) { return Parser(text).run(); }

Document parse_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string print(const RingPresentation& r)
{
    std::ostringstream os;
    os << (r.has_differential() ? "dgring " : "ring ") << r.name << " {\n";
    for (const auto& c : r.components) {
        os << "  component {\n";
        for (const auto& g : c.gens) os << "    gen " << g.name << " " << to_string(g.deg) << ";\n";
        for (const auto& rel : c.rels) os << "    rel " << poly_text(c, Poly{{rel, Fp(1)}}) << ";\n";
        for (std::size_t i = 0; i < c.gens.size(); ++i)
            if (!c.diff[i].empty()) os << "    diff " << c.gens[i].name << " = " << poly_text(c, c.diff[i]) << ";\n";
        os << "  }\n";
    }
    os << "}\n";
    return os.str();
}

std::string print(const ModulePresentation& m)
{
    std::ostringstream os;
    os << "module " << m.name << " over " << m.ring.name << " {\n";
    for (const auto& g : m.gens) {
        os << "  gen " << g.name << " " << to_string(g.deg);
        if (m.ring.components.size() > 1) os << " @" << g.component + 1;
        os << ";\n";
    }
    for (const auto& rel : m.rels)
        if (!rel.empty()) os << "  rel " << element_text(m, rel) << ";\n";
    for (std::size_t i = 0; i < m.gens.size(); ++i)
        if (!m.diff[i].empty()) os << "  diff " << m.gens[i].name << " = " << element_text(m, m.diff[i]) << ";\n";
    os << "}\n";
    return os.str();
}

std::string print(const Document& doc)
{
    std::string s;
    for (const auto& r : doc.rings) s += print(r);
    for (const auto& m : doc.modules) {
        if (!doc.ring(m.ring.name)) s += print(m.ring);
        s += print(m);
    }
    return s;
}

}  // namespace dgw
