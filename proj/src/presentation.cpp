#include "dgw/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "dgw/errors.hpp"

namespace dgw {

std::string to_string(Bidegree b) { return "(" + std::to_string(b.n) + "," + std::to_string(b.d) + ")"; }

namespace {

void add_term(Poly& p, const Exponents& e, Fp c)
{
    if (c.is_zero()) return;
    auto [it, inserted] = p.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

bool divides(const Exponents& r, const Exponents& e)
{
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] > e[i]) return false;
    return true;
}

std::string monomial_text(const ComponentPresentation& c, const Exponents& e)
{
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += c.gens[i].name;
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

}  // namespace

std::optional<std::size_t> ComponentPresentation::find(std::string_view name) const
{
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].name == name) return i;
    return std::nullopt;
}

Bidegree ComponentPresentation::degree_of(const Exponents& e) const
{
    Bidegree b;
    for (std::size_t i = 0; i < e.size(); ++i) {
        b.n += e[i] * gens[i].deg.n;
        b.d += e[i] * gens[i].deg.d;
    }
    return b;
}

std::optional<std::pair<Fp, Exponents>> ComponentPresentation::multiply(const Exponents& a, const Exponents& b) const
{
    Exponents out(gens.size());
    int swaps = 0;
    int odd_in_a_after = 0;  // odd generators of a with index > current
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (is_odd(i)) odd_in_a_after += a[i];
    for (std::size_t i = 0; i < gens.size(); ++i) {
        out[i] = a[i] + b[i];
        if (is_odd(i)) {
            if (out[i] > 1) return std::nullopt;
            odd_in_a_after -= a[i];
            if (b[i]) swaps += odd_in_a_after;
        }
    }
    return std::make_pair(sign_fp(swaps), std::move(out));
}

bool ComponentPresentation::is_normal(const Exponents& e) const
{
    return std::none_of(rels.begin(), rels.end(), [&](const Exponents& r) { return divides(r, e); });
}

Poly ComponentPresentation::multiply(const Poly& a, const Poly& b) const
{
    Poly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b)
            if (auto prod = multiply(ea, eb)) add_term(out, prod->second, prod->first * ca * cb);
    return out;
}

Poly ComponentPresentation::reduce(Poly p) const
{
    std::erase_if(p, [&](const auto& kv) { return !is_normal(kv.first); });
    return p;
}

Poly ComponentPresentation::differential(const Exponents& e, bool reduced) const
{
    // e = g * rest with g the first generator present; no sign since g is first.
    std::size_t g = 0;
    while (g < e.size() && e[g] == 0) ++g;
    if (g == e.size()) return {};
    Exponents rest = e;
    --rest[g];
    Exponents eg(gens.size(), 0);
    eg[g] = 1;
    Poly out;
    const Poly& dg = diff[g];
    if (!dg.empty()) {
        Poly r{{rest, Fp(1)}};
        for (const auto& [m, c] : multiply(dg, r)) add_term(out, m, c);
    }
    Poly drest = differential(rest, reduced);
    if (!drest.empty()) {
        Fp s = sign_fp(gens[g].deg.n);
        for (const auto& [m, c] : multiply(Poly{{eg, Fp(1)}}, drest)) add_term(out, m, s * c);
    }
    return reduced ? reduce(std::move(out)) : out;
}

Poly ComponentPresentation::differential(const Poly& p, bool reduced) const
{
    Poly out;
    for (const auto& [m, c] : p)
        for (const auto& [m2, c2] : differential(m, reduced)) add_term(out, m2, c * c2);
    return out;
}

bool RingPresentation::has_differential() const
{
    for (const auto& c : components)
        for (const auto& d : c.diff)
            if (!d.empty()) return true;
    return false;
}

int RingPresentation::max_generator_weight() const
{
    int w = 0;
    for (const auto& c : components)
        for (const auto& g : c.gens) w = std::max(w, g.deg.d);
    return w;
}

std::optional<std::size_t> ModulePresentation::find(std::string_view n) const
{
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].name == n) return i;
    return std::nullopt;
}

namespace {

bool valid_identifier(const std::string& s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
}

void validate_component(const ComponentPresentation& c, std::size_t index)
{
    const std::string where = "component " + std::to_string(index + 1) + ": ";
    std::set<std::string> names;
    for (const auto& g : c.gens) {
        if (!valid_identifier(g.name)) throw InputError(where + "bad generator name '" + g.name + "'");
        if (!names.insert(g.name).second) throw InputError(where + "duplicate generator '" + g.name + "'");
        if (g.deg.n > 0) throw InputError(where + "generator '" + g.name + "' has positive cohomological degree");
        if (g.deg.d < 1) throw InputError(where + "generator '" + g.name + "' needs internal degree >= 1");
    }
    if (c.diff.size() != c.gens.size()) throw InputError(where + "differential table size mismatch");
    for (const auto& r : c.rels) {
        if (r.size() != c.gens.size() || std::any_of(r.begin(), r.end(), [](int x) { return x < 0; }))
            throw InputError(where + "malformed relation");
        if (std::all_of(r.begin(), r.end(), [](int x) { return x == 0; }))
            throw InputError(where + "relation 1 kills the component");
    }
    for (std::size_t i = 0; i < c.gens.size(); ++i) {
        const Bidegree want = c.gens[i].deg + Bidegree{1, 0};
        for (const auto& [m, coef] : c.diff[i]) {
            if (m.size() != c.gens.size()) throw InputError(where + "malformed differential of '" + c.gens[i].name + "'");
            if (c.degree_of(m) != want)
                throw InputError(where + "differential of '" + c.gens[i].name + "' has bidegree " +
                                 to_string(c.degree_of(m)) + ", expected " + to_string(want));
        }
    }
    for (const auto& r : c.rels)
        if (!c.reduce(c.differential(r, false)).empty())
            throw InputError(where + "differential does not preserve relation " + monomial_text(c, r));
    for (std::size_t i = 0; i < c.gens.size(); ++i)
        if (!c.differential(c.reduce(c.diff[i]), true).empty())
            throw InputError(where + "d^2 != 0 on generator '" + c.gens[i].name + "'");
}

Bidegree term_degree(const ModulePresentation& m, const ModuleTerm& t)
{
    return m.ring.components[m.gens[t.gen].component].degree_of(t.mono) + m.gens[t.gen].deg;
}

}  // namespace

void validate(const RingPresentation& r)
{
    if (r.components.empty()) throw InputError("ring '" + r.name + "' has no components");
    for (std::size_t i = 0; i < r.components.size(); ++i) validate_component(r.components[i], i);
}

void validate(const ModulePresentation& m)
{
    validate(m.ring);
    std::set<std::string> names;
    for (const auto& g : m.gens) {
        if (!valid_identifier(g.name)) throw InputError("bad module generator name '" + g.name + "'");
        if (!names.insert(g.name).second) throw InputError("duplicate module generator '" + g.name + "'");
        if (g.component >= m.ring.components.size()) throw InputError("generator '" + g.name + "' in missing component");
    }
    auto check_term = [&](const ModuleTerm& t) {
        if (t.gen >= m.gens.size()) throw InputError("term refers to missing generator");
        if (t.mono.size() != m.ring.components[m.gens[t.gen].component].gens.size())
            throw InputError("malformed module term");
    };
    for (std::size_t k = 0; k < m.rels.size(); ++k) {
        const auto& rel = m.rels[k];
        if (rel.empty()) continue;
        for (const auto& t : rel) check_term(t);
        const Bidegree b = term_degree(m, rel.front());
        for (const auto& t : rel)
            if (term_degree(m, t) != b)
                throw InputError("relation " + std::to_string(k + 1) + " is not bihomogeneous");
    }
    if (m.diff.size() != m.gens.size()) throw InputError("module differential table size mismatch");
    for (std::size_t i = 0; i < m.gens.size(); ++i)
        for (const auto& t : m.diff[i]) {
            check_term(t);
            if (term_degree(m, t) != m.gens[i].deg + Bidegree{1, 0})
                throw InputError("differential of '" + m.gens[i].name + "' has wrong bidegree");
        }
}

namespace {

// Pads exponent vectors with zeros up to `width` (default: one more slot).
Poly widened(const Poly& p, std::size_t width = 0)
{
    Poly out;
    for (const auto& [m, c] : p) {
        Exponents e = m;
        e.resize(width ? width : e.size() + 1, 0);
        out.emplace(std::move(e), c);
    }
    return out;
}

std::string fresh_name(const ComponentPresentation& c, const std::string& base)
{
    std::string s = base;
    while (c.find(s)) s += "_";
    return s;
}

}  // namespace

RingPresentation koszul(const RingPresentation& r, const std::vector<RingElement>& elements, std::string name)
{
    RingPresentation out = r;
    out.name = name.empty() ? r.name + "_koszul" : std::move(name);
    for (std::size_t i = 0; i < elements.size(); ++i) {
        const RingElement& f = elements[i];
        if (f.size() != r.components.size()) throw InputError("koszul: element has wrong component count");
        std::optional<Bidegree> deg;
        for (std::size_t c = 0; c < f.size(); ++c)
            for (const auto& [m, coef] : f[c]) {
                Bidegree b = r.components[c].degree_of(m);
                if (deg && *deg != b) throw InputError("koszul: element " + std::to_string(i + 1) + " is not homogeneous");
                deg = b;
            }
        if (!deg) throw InputError("koszul: element " + std::to_string(i + 1) + " is zero");
        if (deg->n != 0) throw InputError("koszul: element " + std::to_string(i + 1) + " has nonzero cohomological degree");
        for (std::size_t c = 0; c < out.components.size(); ++c) {
            auto& comp = out.components[c];
            const std::string gname = fresh_name(comp, "e" + std::to_string(i + 1));
            for (auto& rel : comp.rels) rel.push_back(0);
            for (auto& d : comp.diff) d = widened(d);
            Poly fd = widened(f[c], comp.gens.size() + 1);
            comp.gens.push_back({gname, {-1, deg->d}});
            comp.diff.push_back(comp.reduce(std::move(fd)));
        }
    }
    validate(out);
    return out;
}

RingPresentation trivial_extension(const RingPresentation& r, const ModulePresentation& m, std::string name)
{
    if (!(m.ring.components == r.components)) throw InputError("trivext: module is not presented over this ring");
    for (const auto& d : m.diff)
        if (!d.empty()) throw InputError("trivext: module must have zero differential");
    int min_w = 1;
    for (const auto& g : m.gens) min_w = std::min(min_w, g.deg.d);
    const int shift = 1 - min_w;
    RingPresentation out = r;
    out.name = name.empty() ? r.name + "_trivext" : std::move(name);
    // new generator index per module generator, within its component
    std::vector<std::size_t> index(m.gens.size());
    for (std::size_t i = 0; i < m.gens.size(); ++i) {
        const auto& g = m.gens[i];
        auto& comp = out.components[g.component];
        if (comp.find(g.name)) throw InputError("trivext: module generator name '" + g.name + "' clashes with ring");
        if (g.deg.n > 1) throw InputError("trivext: generator '" + g.name + "' would land in positive degree");
        for (auto& rel : comp.rels) rel.push_back(0);
        for (auto& d : comp.diff) d = widened(d);
        index[i] = comp.gens.size();
        comp.gens.push_back({g.name, {g.deg.n - 1, g.deg.d + shift}});
        comp.diff.emplace_back();
    }
    for (const auto& rel : m.rels) {
        if (rel.empty()) continue;
        if (rel.size() != 1) throw InputError("trivext: module relations must be single monomial terms");
        const auto& t = rel.front();
        auto& comp = out.components[m.gens[t.gen].component];
        Exponents e = t.mono;
        e.resize(comp.gens.size(), 0);
        e[index[t.gen]] += 1;
        comp.rels.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < m.gens.size(); ++i)
        for (std::size_t j = i; j < m.gens.size(); ++j) {
            if (m.gens[i].component != m.gens[j].component) continue;
            auto& comp = out.components[m.gens[i].component];
            if (i == j && comp.is_odd(index[i])) continue;
            Exponents e(comp.gens.size(), 0);
            e[index[i]] += 1;
            e[index[j]] += 1;
            comp.rels.push_back(std::move(e));
        }
    validate(out);
    return out;
}

std::optional<RingPresentation> h0_presentation(const RingPresentation& r, std::string name)
{
    RingPresentation out;
    out.name = name.empty() ? "H0(" + r.name + ")" : std::move(name);
    for (const auto& c : r.components) {
        ComponentPresentation h;
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < c.gens.size(); ++i)
            if (c.gens[i].deg.n == 0) keep.push_back(i);
        for (auto i : keep) h.gens.push_back(c.gens[i]);
        h.diff.assign(h.gens.size(), {});
        auto project = [&](const Exponents& e) -> std::optional<Exponents> {
            Exponents p;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0 && c.gens[i].deg.n != 0) return std::nullopt;
            for (auto i : keep) p.push_back(e[i]);
            return p;
        };
        auto push_rel = [&](Exponents e) {
            if (std::find(h.rels.begin(), h.rels.end(), e) == h.rels.end()) h.rels.push_back(std::move(e));
        };
        for (const auto& rel : c.rels)
            if (auto p = project(rel)) push_rel(std::move(*p));
        for (std::size_t i = 0; i < c.gens.size(); ++i) {
            if (c.gens[i].deg.n != -1 || c.diff[i].empty()) continue;
            if (c.diff[i].size() != 1) return std::nullopt;
            auto p = project(c.diff[i].begin()->first);
            if (!p) return std::nullopt;
            if (std::all_of(p->begin(), p->end(), [](int x) { return x == 0; })) return std::nullopt;
            push_rel(std::move(*p));
        }
        out.components.push_back(std::move(h));
    }
    return out;
}

namespace {

std::string component_gen_name(const RingPresentation& r, std::size_t c)
{
    return r.components.size() == 1 ? std::string("m") : "m" + std::to_string(c + 1);
}

}  // namespace

ModulePresentation quotient_module(const RingPresentation& r, const std::vector<RingElement>& ideal, std::string name)
{
    ModulePresentation m;
    m.name = name.empty() ? r.name + "_quotient" : std::move(name);
    m.ring = r;
    for (std::size_t c = 0; c < r.components.size(); ++c)
        m.gens.push_back({component_gen_name(r, c), {0, 0}, c});
    m.diff.assign(m.gens.size(), {});
    for (const auto& f : ideal) {
        if (f.size() != r.components.size()) throw InputError("quotient: element has wrong component count");
        for (std::size_t c = 0; c < f.size(); ++c) {
            if (f[c].empty()) continue;
            ModuleElement rel;
            for (const auto& [mono, coef] : f[c]) rel.push_back({coef, mono, c});
            m.rels.push_back(std::move(rel));
        }
    }
    validate(m);
    return m;
}

ModulePresentation free_module(const RingPresentation& r, std::string name)
{
    return quotient_module(r, {}, name.empty() ? r.name + "_free" : std::move(name));
}

ModulePresentation shift_presentation(const ModulePresentation& m, int k, std::string name)
{
    ModulePresentation out = m;
    out.name = name.empty() ? m.name + "_shift" + std::to_string(k) : std::move(name);
    for (auto& g : out.gens) g.deg.n -= k;
    auto resign = [&](ModuleElement& el, int extra) {
        for (auto& t : el) {
            const int a = out.ring.components[out.gens[t.gen].component].degree_of(t.mono).n;
            t.coeff *= sign_fp(k * a + extra);
        }
    };
    for (auto& rel : out.rels) resign(rel, 0);
    for (auto& d : out.diff) resign(d, k);
    validate(out);
    return out;
}

ModulePresentation extend_scalars(const ModulePresentation& m, const RingPresentation& to, std::string name)
{
    if (to.components.size() != m.ring.components.size())
        throw InputError("extend: rings have different numbers of components");
    std::vector<std::vector<std::size_t>> map(to.components.size());
    for (std::size_t c = 0; c < to.components.size(); ++c)
        for (const auto& g : m.ring.components[c].gens) {
            auto j = to.components[c].find(g.name);
            if (!j) throw InputError("extend: generator '" + g.name + "' missing from ring '" + to.name + "'");
            if (to.components[c].gens[*j].deg != g.deg)
                throw InputError("extend: generator '" + g.name + "' has a different bidegree in '" + to.name + "'");
            map[c].push_back(*j);
        }
    ModulePresentation out;
    out.name = name.empty() ? m.name + "_" + to.name : std::move(name);
    out.ring = to;
    out.gens = m.gens;
    auto remap = [&](const ModuleElement& el) {
        ModuleElement res;
        for (const auto& t : el) {
            const std::size_t c = m.gens[t.gen].component;
            Exponents e(to.components[c].gens.size(), 0);
            for (std::size_t i = 0; i < t.mono.size(); ++i) e[map[c][i]] = t.mono[i];
            res.push_back({t.coeff, std::move(e), t.gen});
        }
        return res;
    };
    for (const auto& rel : m.rels) out.rels.push_back(remap(rel));
    for (const auto& d : m.diff) out.diff.push_back(remap(d));
    validate(out);
    return out;
}

ModulePresentation inflate_presentation(const ModulePresentation& m, const RingPresentation& to, std::string name)
{
    auto h0 = h0_presentation(to);
    if (!h0 || !(h0->components == m.ring.components))
        throw InputError("inflate: module '" + m.name + "' is not presented over H0(" + to.name + ")");
    ModulePresentation out = extend_scalars(m, to, name.empty() ? m.name + "_S" : std::move(name));
    for (std::size_t g = 0; g < out.gens.size(); ++g) {
        const auto& comp = to.components[out.gens[g].component];
        for (std::size_t i = 0; i < comp.gens.size(); ++i) {
            if (comp.gens[i].deg.n == 0) continue;
            Exponents e(comp.gens.size(), 0);
            e[i] = 1;
            out.rels.push_back({{Fp(1), e, g}});
            if (comp.gens[i].deg.n == -1 && !comp.diff[i].empty()) {
                ModuleElement rel;
                for (const auto& [mono, coef] : comp.diff[i]) rel.push_back({coef, mono, g});
                out.rels.push_back(std::move(rel));
            }
        }
    }
    validate(out);
    return out;
}

const RingPresentation* Document::ring(std::string_view n) const
{
    for (const auto& r : rings)
        if (r.name == n) return &r;
    return nullptr;
}

const ModulePresentation* Document::module(std::string_view n) const
{
    for (const auto& m : modules)
        if (m.name == n) return &m;
    return nullptr;
}

}  // namespace dgw
