#include "dgw/module.hpp"

#include <algorithm>
#include <limits>

#include "dgw/errors.hpp"

namespace dgw {

WeightRange combine(std::span<const WeightRange> ranges)
{
    if (ranges.empty()) throw InputError("combine: no ranges");
    WeightRange out;
    out.exact_below = out.exact_above = true;
    int lo_exact = std::numeric_limits<int>::max(), lo_open = std::numeric_limits<int>::min();
    int hi_exact = std::numeric_limits<int>::min(), hi_open = std::numeric_limits<int>::max();
    for (const auto& r : ranges) {
        if (r.exact_below) lo_exact = std::min(lo_exact, r.d_lo);
        else {
            out.exact_below = false;
            lo_open = std::max(lo_open, r.d_lo);
        }
        if (r.exact_above) hi_exact = std::max(hi_exact, r.d_hi);
        else {
            out.exact_above = false;
            hi_open = std::min(hi_open, r.d_hi);
        }
    }
    out.d_lo = out.exact_below ? lo_exact : lo_open;
    out.d_hi = out.exact_above ? hi_exact : hi_open;
    if (out.d_lo > out.d_hi) throw ComputeError("combine: known weight ranges do not overlap");
    return out;
}

std::size_t DGModule::dim(Bidegree b) const
{
    auto it = spaces_.find(b);
    return it == spaces_.end() ? 0 : it->second.size();
}

std::span<const std::size_t> DGModule::tags(Bidegree b) const
{
    auto it = spaces_.find(b);
    if (it == spaces_.end()) return {};
    return it->second;
}

std::vector<Bidegree> DGModule::bidegrees() const
{
    std::vector<Bidegree> out;
    for (const auto& kv : spaces_) out.push_back(kv.first);
    return out;
}

Matrix DGModule::diff(Bidegree src) const
{
    auto it = diff_.find(src);
    if (it != diff_.end()) return it->second;
    return Matrix(dim(src + Bidegree{1, 0}), dim(src));
}

Matrix DGModule::action(std::size_t gen, Bidegree src) const
{
    auto it = action_.find({gen, src});
    if (it != action_.end()) return it->second;
    return Matrix(dim(src + alg_->generators()[gen].deg), dim(src));
}

Matrix DGModule::act(std::size_t basis_id, Bidegree src) const
{
    const auto& be = alg_->basis(basis_id);
    const std::size_t n = dim(src);
    Matrix m(n, n);
    auto t = tags(src);
    for (std::size_t i = 0; i < n; ++i)
        if (t[i] == be.component) m(i, i) = Fp(1);
    // the monomial is x_1^{e_1} ... x_k^{e_k}; the rightmost factor acts first
    std::size_t offset = 0;
    for (std::size_t g = 0; g < alg_->generators().size(); ++g)
        if (alg_->generators()[g].component == be.component) {
            offset = g;
            break;
        }
    Bidegree at = src;
    for (std::size_t l = be.exps.size(); l-- > 0;)
        for (int e = 0; e < be.exps[l]; ++e) {
            const std::size_t g = offset + l;
            m = action(g, at) * m;
            at = at + alg_->generators()[g].deg;
        }
    return m;
}

void DGModule::set_space(Bidegree b, std::vector<std::size_t> tags)
{
    if (tags.empty()) spaces_.erase(b);
    else spaces_[b] = std::move(tags);
}

void DGModule::set_diff(Bidegree src, Matrix m)
{
    if (m.rows() != dim(src + Bidegree{1, 0}) || m.cols() != dim(src))
        throw InputError("set_diff: shape mismatch at " + to_string(src));
    if (m.is_zero()) diff_.erase(src);
    else diff_[src] = std::move(m);
}

void DGModule::set_action(std::size_t gen, Bidegree src, Matrix m)
{
    if (m.rows() != dim(src + alg_->generators()[gen].deg) || m.cols() != dim(src))
        throw InputError("set_action: shape mismatch at " + to_string(src));
    if (m.is_zero()) action_.erase({gen, src});
    else action_[{gen, src}] = std::move(m);
}

void DGModule::clip(int lo, int hi)
{
    auto outside = [&](Bidegree b) { return b.d < lo || b.d > hi; };
    std::erase_if(spaces_, [&](const auto& kv) { return outside(kv.first); });
    std::erase_if(diff_, [&](const auto& kv) { return outside(kv.first); });
    std::erase_if(action_, [&](const auto& kv) {
        return outside(kv.first.second) || outside(kv.first.second + alg_->generators()[kv.first.first].deg);
    });
    std::erase_if(cover_, [&](const auto& kv) { return outside(kv.first); });
    std::erase_if(class_, [&](const auto& kv) { return outside(kv.first); });
    std::erase_if(free_basis_, [&](const auto& kv) { return outside(kv.first); });
    if (lo > range.d_lo) {
        range.d_lo = lo;
        range.exact_below = false;
    }
    if (hi < range.d_hi) {
        range.d_hi = hi;
        range.exact_above = false;
    }
}

const std::vector<DGModule::CoverTerm>* DGModule::cover(Bidegree b) const
{
    auto it = cover_.find(b);
    return it == cover_.end() ? nullptr : &it->second;
}

Vector DGModule::class_of(std::size_t gen, std::size_t basis_id) const
{
    const Bidegree b = alg_->basis(basis_id).deg + pres_gens_.at(gen).deg;
    auto it = free_basis_.find(b);
    if (it != free_basis_.end())
        for (std::size_t i = 0; i < it->second.size(); ++i)
            if (it->second[i].gen == gen && it->second[i].basis_id == basis_id) return class_.at(b)[i];
    return Vector(dim(b));
}

std::optional<std::string> DGModule::check() const
{
    const auto& gens = alg_->generators();
    auto stored = [&](Bidegree b) { return b.d >= range.d_lo && b.d <= range.d_hi; };
    const Bidegree one{1, 0};
    for (const auto& [b, t] : spaces_) {
        (void)t;
        if (stored(b) && !(diff(b + one) * diff(b)).is_zero()) return "d^2 != 0 at " + to_string(b);
    }
    for (std::size_t g = 0; g < gens.size(); ++g) {
        const Bidegree dg = gens[g].deg;
        // d(x) as an algebra element
        auto gb = alg_->generator_basis(g);
        for (const auto& [b, t] : spaces_) {
            (void)t;
            if (!stored(b + dg + one)) continue;
            Matrix lhs = diff(b + dg) * action(g, b);
            Matrix rhs = action(g, b + one) * diff(b);
            if (dg.n & 1) rhs = rhs.scaled(Fp(-1));
            if (gb)
                for (const auto& term : alg_->diff(*gb)) rhs = rhs + act(term.id, b).scaled(term.coeff);
            if (!(lhs == rhs)) return "Leibniz fails for " + gens[g].name + " at " + to_string(b);
        }
    }
    // graded commutativity and odd squares
    for (std::size_t g = 0; g < gens.size(); ++g)
        for (std::size_t h = g; h < gens.size(); ++h) {
            if (gens[g].component != gens[h].component) continue;
            const Bidegree dg = gens[g].deg, dh = gens[h].deg;
            const bool odd_pair = (dg.n & 1) && (dh.n & 1);
            for (const auto& [b, t] : spaces_) {
                (void)t;
                if (!stored(b + dg + dh)) continue;
                Matrix gh = action(g, b + dh) * action(h, b);
                Matrix hg = action(h, b + dg) * action(g, b);
                if (!(gh == (odd_pair ? hg.scaled(Fp(-1)) : hg)))
                    return "actions of " + gens[g].name + " and " + gens[h].name + " do not commute at " + to_string(b);
                if (g == h && odd_pair && !gh.is_zero()) return "odd generator squares to nonzero at " + to_string(b);
            }
        }
    for (std::size_t c = 0; c < alg_->num_components(); ++c) {
        const auto& comp = alg_->presentation().components[c];
        for (const auto& rel : comp.rels) {
            const Bidegree rd = comp.degree_of(rel);
            for (const auto& [b, t] : spaces_) {
                (void)t;
                if (!stored(b + rd)) continue;
                Matrix m = Matrix::identity(dim(b));
                Bidegree at = b;
                std::size_t offset = *alg_->generator_index(c, comp.gens[0].name);
                for (std::size_t l = rel.size(); l-- > 0;)
                    for (int e = 0; e < rel[l]; ++e) {
                        m = action(offset + l, at) * m;
                        at = at + gens[offset + l].deg;
                    }
                if (!m.is_zero()) return "ring relation acts nontrivially at " + to_string(b);
            }
        }
    }
    return std::nullopt;
}

namespace {

struct FreeSpace {
    std::vector<DGModule::CoverTerm> basis;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;  // (gen, basis id) -> coordinate
};

}  // namespace

DGModule compile_module(const ModulePresentation& p, const AlgebraPtr& alg)
{
    validate(p);
    if (!(p.ring == alg->presentation()))
        throw InputError("module '" + p.name + "' is not over ring '" + alg->presentation().name + "'");
    const TruncatedAlgebra& A = *alg;
    const int D = A.d_max();
    const Bidegree one{1, 0};
    DGModule m(alg, p.name);
    m.pres_gens_ = p.gens;

    std::map<Bidegree, FreeSpace> free;
    for (std::size_t j = 0; j < p.gens.size(); ++j)
        for (std::size_t a = 0; a < A.size(); ++a) {
            const auto& be = A.basis(a);
            if (be.component != p.gens[j].component || be.deg.d + p.gens[j].deg.d > D) continue;
            auto& fs = free[be.deg + p.gens[j].deg];
            fs.index[{j, a}] = fs.basis.size();
            fs.basis.push_back({j, a});
        }
    auto fdim = [&](Bidegree b) -> std::size_t {
        auto it = free.find(b);
        return it == free.end() ? 0 : it->second.basis.size();
    };
    // adds coeff * a * (mono g_j) to v, a vector in bidegree b
    auto add_product = [&](Vector& v, Bidegree b, Fp coeff, std::size_t a, const Exponents& mono, std::size_t j) {
        const std::size_t c = p.gens[j].component;
        if (A.basis(a).component != c) return;
        auto mid = A.index_of(c, mono);
        if (!mid) return;
        auto prod = A.multiply(a, *mid);
        if (!prod) return;
        const auto& fs = free.at(b);
        v[fs.index.at({j, prod->id})] += coeff * prod->coeff;
    };
    auto element_degree = [&](const ModuleElement& e) {
        const auto& t = e.front();
        return p.ring.components[p.gens[t.gen].component].degree_of(t.mono) + p.gens[t.gen].deg;
    };
    auto free_diff = [&](Bidegree b, std::size_t coord) {
        const auto [j, a] = free.at(b).basis[coord];
        Vector out(fdim(b + one));
        for (const auto& t : A.diff(a)) out[free.at(b + one).index.at({j, t.id})] += t.coeff;
        if (!p.diff[j].empty()) {
            const Fp s = sign_fp(A.basis(a).deg.n);
            for (const auto& t : p.diff[j])
                add_product(out, b + one, s * t.coeff, a, t.mono, t.gen);
        }
        return out;
    };

    std::map<Bidegree, std::vector<Vector>> rel_span;
    for (const auto& rel : p.rels) {
        if (rel.empty()) continue;
        const Bidegree rd = element_degree(rel);
        for (std::size_t a = 0; a < A.size(); ++a) {
            const Bidegree b = A.basis(a).deg + rd;
            if (b.d > D || !free.count(b)) continue;
            Vector v(fdim(b));
            for (const auto& t : rel) add_product(v, b, t.coeff, a, t.mono, t.gen);
            if (!is_zero(v)) rel_span[b].push_back(std::move(v));
        }
    }
    std::map<Bidegree, Subspace> rels;
    for (const auto& [b, fs] : free) {
        Subspace s(fs.basis.size());
        for (auto& v : rel_span[b]) s.add(v);
        rels.emplace(b, std::move(s));
    }
    std::map<Bidegree, std::vector<std::size_t>> quotient_coords;
    auto project = [&](Bidegree b, Vector v) {
        const auto& q = quotient_coords.at(b);
        rels.at(b).reduce(v);
        Vector out(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) out[i] = v[q[i]];
        return out;
    };
    for (const auto& [b, fs] : free) {
        quotient_coords[b] = rels.at(b).free_coordinates();
        std::vector<std::size_t> tags;
        std::vector<DGModule::CoverTerm> cov;
        for (auto i : quotient_coords[b]) {
            tags.push_back(p.gens[fs.basis[i].gen].component);
            cov.push_back(fs.basis[i]);
        }
        m.set_space(b, std::move(tags));
        m.cover_[b] = std::move(cov);
        m.free_basis_[b] = fs.basis;
    }
    for (const auto& [b, fs] : free) {
        auto& cls = m.class_[b];
        for (std::size_t i = 0; i < fs.basis.size(); ++i) {
            Vector e(fs.basis.size());
            e[i] = Fp(1);
            cls.push_back(project(b, std::move(e)));
        }
    }

    for (const auto& [b, fs] : free) {
        (void)fs;
        if (!free.count(b + one)) continue;
        for (const auto& v : rel_span[b]) {
            Vector dv(fdim(b + one));
            for (std::size_t i = 0; i < v.size(); ++i)
                if (!v[i].is_zero()) {
                    Vector t = free_diff(b, i);
                    for (std::size_t k = 0; k < t.size(); ++k) dv[k] += v[i] * t[k];
                }
            if (!rels.at(b + one).contains(dv))
                throw ComputeError("module '" + p.name + "': differential does not preserve the relations at " + to_string(b));
        }
    }
    for (const auto& [b, q] : quotient_coords) {
        if (q.empty() || !free.count(b + one) || quotient_coords[b + one].empty()) continue;
        std::vector<Vector> cols;
        for (auto i : q) cols.push_back(project(b + one, free_diff(b, i)));
        m.set_diff(b, Matrix::from_columns(quotient_coords[b + one].size(), cols));
    }
    for (std::size_t g = 0; g < A.generators().size(); ++g) {
        auto gb = A.generator_basis(g);
        if (!gb) continue;
        const Bidegree dg = A.generators()[g].deg;
        for (const auto& [b, q] : quotient_coords) {
            const Bidegree tb = b + dg;
            if (q.empty() || tb.d > D || !quotient_coords.count(tb) || quotient_coords[tb].empty()) continue;
            const auto& fs = free.at(b);
            std::vector<Vector> cols;
            for (auto i : q) {
                Vector v(fdim(tb));
                const auto [j, a] = fs.basis[i];
                if (auto prod = A.multiply(*gb, a)) v[free.at(tb).index.at({j, prod->id})] += prod->coeff;
                cols.push_back(project(tb, std::move(v)));
            }
            m.set_action(g, b, Matrix::from_columns(quotient_coords[tb].size(), cols));
        }
    }

    const int r = A.max_generator_weight();
    m.range.exact_below = true;
    m.range.d_hi = D;
    m.range.d_lo = D;
    bool finite = true;
    for (const auto& g : p.gens) {
        m.range.d_lo = std::min(m.range.d_lo, g.deg.d);
        if (g.deg.d > D - r) finite = false;
    }
    if (p.gens.empty()) m.range.d_lo = 0;
    for (const auto& b : m.bidegrees())
        if (b.d > D - r) finite = false;
    m.range.exact_above = finite;
    std::optional<int> top;
    for (const auto& g : p.gens) top = std::max(top.value_or(g.deg.n), g.deg.n);
    m.n_hi_bound = top.value_or(0);
    // The ring reaches only finitely many degrees when its negative
    // generators are all odd; then so does the module.
    std::optional<int> bottom = 0;
    for (const auto& g : p.gens) {
        const auto& comp = p.ring.components[g.component];
        int low = g.deg.n;
        for (std::size_t i = 0; i < comp.gens.size(); ++i) {
            if (comp.gens[i].deg.n < 0 && !comp.is_odd(i)) {
                bottom.reset();
                break;
            }
            if (comp.is_odd(i)) low += comp.gens[i].deg.n;
        }
        if (!bottom) break;
        bottom = std::min(*bottom, low);
    }
    if (bottom && !p.gens.empty()) m.n_lo_bound = bottom;
    if (p.gens.empty()) m.n_lo_bound = 0;
    if (finite) {
        const auto bs = m.bidegrees();
        m.n_lo_bound = 0;
        if (!bs.empty()) m.n_lo_bound = std::min_element(bs.begin(), bs.end(), [](auto x, auto y) { return x.n < y.n; })->n;
    }

    if (auto err = m.check()) throw ComputeError("module '" + p.name + "': " + *err);
    return m;
}

DGModule algebra_as_module(const AlgebraPtr& alg)
{
    return compile_module(free_module(alg->presentation(), alg->presentation().name), alg);
}

namespace {

std::string shifted_name(const std::string& name, int k, int twist)
{
    std::string out = name;
    if (k) out += "[" + std::to_string(k) + "]";
    if (twist) out += "{" + std::to_string(twist) + "}";
    return out;
}

}  // namespace

DGModule shift(const DGModule& m, int k, int twist)
{
    const Bidegree off{k, twist};
    DGModule out(m.algebra(), shifted_name(m.name(), k, twist));
    const auto bs = m.bidegrees();
    for (const auto& b : bs) {
        auto t = m.tags(b);
        out.set_space(b - off, {t.begin(), t.end()});
    }
    const Fp s = sign_fp(k);
    const auto& gens = m.ring().generators();
    for (const auto& b : bs) {
        out.set_diff(b - off, m.diff(b).scaled(s));
        for (std::size_t g = 0; g < gens.size(); ++g)
            out.set_action(g, b - off, m.action(g, b).scaled(sign_fp(k * gens[g].deg.n)));
    }
    out.range = m.range;
    out.range.d_lo -= twist;
    out.range.d_hi -= twist;
    if (m.n_lo_bound) out.n_lo_bound = *m.n_lo_bound - k;
    if (m.n_hi_bound) out.n_hi_bound = *m.n_hi_bound - k;
    for (const auto& b : m.unknown) out.unknown.insert(b - off);
    return out;
}

namespace {

Matrix block_diagonal(const std::vector<Matrix>& blocks)
{
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    Matrix out(r, c);
    r = c = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) out(r + i, c + j) = b(i, j);
        r += b.rows();
        c += b.cols();
    }
    return out;
}

}  // namespace

DGModule direct_sum(const std::vector<const DGModule*>& parts)
{
    if (parts.empty()) throw InputError("direct_sum: no summands");
    std::vector<WeightRange> ranges;
    std::string name;
    for (const auto* p : parts) {
        if (p->algebra() != parts[0]->algebra()) throw InputError("direct_sum: summands over different algebras");
        ranges.push_back(p->range);
        name += (name.empty() ? "" : " + ") + p->name();
    }
    DGModule out(parts[0]->algebra(), name);
    out.range = combine(ranges);
    std::vector<Bidegree> bs;
    for (const auto* p : parts)
        for (const auto& b : p->bidegrees())
            if (b.d >= out.range.d_lo && b.d <= out.range.d_hi) bs.push_back(b);
    std::sort(bs.begin(), bs.end());
    bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
    for (const auto& b : bs) {
        std::vector<std::size_t> tags;
        for (const auto* p : parts) {
            auto t = p->tags(b);
            tags.insert(tags.end(), t.begin(), t.end());
        }
        out.set_space(b, std::move(tags));
    }
    const auto& gens = out.ring().generators();
    for (const auto& b : bs) {
        std::vector<Matrix> d;
        for (const auto* p : parts) d.push_back(p->diff(b));
        out.set_diff(b, block_diagonal(d));
        for (std::size_t g = 0; g < gens.size(); ++g) {
            if (out.range.d_hi < b.d + gens[g].deg.d) continue;
            std::vector<Matrix> a;
            for (const auto* p : parts) a.push_back(p->action(g, b));
            out.set_action(g, b, block_diagonal(a));
        }
    }
    bool lo = true, hi = true;
    for (const auto* p : parts) {
        lo = lo && p->n_lo_bound;
        hi = hi && p->n_hi_bound;
    }
    if (lo) {
        out.n_lo_bound = *parts[0]->n_lo_bound;
        for (const auto* p : parts) out.n_lo_bound = std::min(*out.n_lo_bound, *p->n_lo_bound);
    }
    if (hi) {
        out.n_hi_bound = *parts[0]->n_hi_bound;
        for (const auto* p : parts) out.n_hi_bound = std::max(*out.n_hi_bound, *p->n_hi_bound);
    }
    for (const auto* p : parts) out.unknown.insert(p->unknown.begin(), p->unknown.end());
    return out;
}

namespace {

// Copies spaces and differential of m into a module over `to`, with generator
// g of `to` acting as source_gen[g] (or by zero when absent).
DGModule rebase(const DGModule& m, const AlgebraPtr& to, const std::vector<std::optional<std::size_t>>& source_gen)
{
    DGModule out(to, m.name());
    out.range = m.range;
    out.n_lo_bound = m.n_lo_bound;
    out.n_hi_bound = m.n_hi_bound;
    out.unknown = m.unknown;
    const auto bs = m.bidegrees();
    for (const auto& b : bs) {
        if (b.d > to->d_max()) continue;
        auto t = m.tags(b);
        out.set_space(b, {t.begin(), t.end()});
    }
    for (const auto& b : out.bidegrees()) {
        out.set_diff(b, m.diff(b));
        for (std::size_t g = 0; g < source_gen.size(); ++g) {
            if (!source_gen[g] || b.d + to->generators()[g].deg.d > to->d_max()) continue;
            out.set_action(g, b, m.action(*source_gen[g], b));
        }
    }
    if (out.range.d_hi > to->d_max()) {
        out.range.d_hi = to->d_max();
        out.range.exact_above = false;
    }
    return out;
}

}  // namespace

DGModule inflate(const DGModule& m, const AlgebraPtr& to)
{
    auto h0 = to->h0_presentation();
    if (!h0 || h0->components != m.ring().presentation().components)
        throw InputError("inflate: module ring is not H0 of '" + to->presentation().name + "'");
    std::vector<std::optional<std::size_t>> src;
    for (const auto& g : to->generators())
        src.push_back(g.deg.n == 0 ? m.ring().generator_index(g.component, g.name) : std::nullopt);
    DGModule out = rebase(m, to, src);
    if (auto err = out.check()) throw ComputeError("inflate: " + *err);
    return out;
}

DGModule restrict_scalars(const DGModule& m, const AlgebraPtr& to)
{
    if (to->num_components() != m.ring().num_components())
        throw InputError("restrict_scalars: component counts differ");
    std::vector<std::optional<std::size_t>> src;
    for (const auto& g : to->generators()) {
        auto i = m.ring().generator_index(g.component, g.name);
        if (!i || m.ring().generators()[*i].deg != g.deg)
            throw InputError("restrict_scalars: generator '" + g.name + "' has no counterpart");
        src.push_back(i);
    }
    DGModule out = rebase(m, to, src);
    if (auto err = out.check()) throw ComputeError("restrict_scalars: " + *err);
    return out;
}

DGModule laurent_module(const AlgebraPtr& alg)
{
    const auto& p = alg->presentation();
    if (p.components.size() != 1 || p.components[0].gens.size() != 1 || !p.components[0].rels.empty() ||
        p.has_differential() || p.components[0].is_odd(0))
        throw InputError("laurent_module: ring must be a polynomial ring on one even generator");
    const Bidegree t = p.components[0].gens[0].deg;
    const int D = alg->d_max();
    const int K = D / t.d;
    DGModule out(alg, p.components[0].gens[0].name + "-periodic");
    for (int k = -K; k <= K; ++k) out.set_space({k * t.n, k * t.d}, {0});
    for (int k = -K; k < K; ++k) out.set_action(0, {k * t.n, k * t.d}, Matrix::identity(1));
    out.range = {-K * t.d, K * t.d, false, false};
    return out;
}

Matrix ChainMap::at(Bidegree b) const
{
    auto it = maps.find(b);
    if (it != maps.end()) return it->second;
    return Matrix(target->dim(b), source->dim(b));
}

std::optional<std::string> ChainMap::check() const
{
    if (source->algebra() != target->algebra()) return "source and target are over different algebras";
    const WeightRange rs[] = {source->range, target->range};
    const WeightRange r = combine(rs);
    auto stored = [&](Bidegree b) { return b.d >= r.d_lo && b.d <= r.d_hi; };
    for (const auto& [b, m] : maps)
        if (m.rows() != target->dim(b) || m.cols() != source->dim(b)) return "shape mismatch at " + to_string(b);
    const Bidegree one{1, 0};
    std::vector<Bidegree> bs = source->bidegrees();
    const auto& gens = source->ring().generators();
    for (const auto& b : bs) {
        if (!stored(b)) continue;
        if (!(at(b + one) * source->diff(b) == target->diff(b) * at(b)))
            return "map does not commute with the differential at " + to_string(b);
        for (std::size_t g = 0; g < gens.size(); ++g) {
            const Bidegree tb = b + gens[g].deg;
            if (!stored(tb)) continue;
            if (!(at(tb) * source->action(g, b) == target->action(g, b) * at(b)))
                return "map is not linear over " + gens[g].name + " at " + to_string(b);
        }
    }
    return std::nullopt;
}

std::size_t ChainMap::cohomology_rank(Bidegree b) const
{
    const Bidegree one{1, 0};
    auto reps = cohomology_representatives(source->diff(b - one), source->diff(b), source->dim(b));
    const Matrix din = target->diff(b - one);
    Subspace s(target->dim(b));
    for (std::size_t c = 0; c < din.cols(); ++c) s.add(din.column(c));
    const std::size_t base = s.dim();
    const Matrix f = at(b);
    for (const auto& v : reps) s.add(f.apply(v));
    return s.dim() - base;
}

ChainMap identity_map(const DGModule& m)
{
    ChainMap f;
    f.source = f.target = std::make_shared<const DGModule>(m);
    for (const auto& b : m.bidegrees()) f.maps[b] = Matrix::identity(m.dim(b));
    return f;
}

ChainMap map_from_generators(const DGModule& source, const DGModule& target, const std::vector<Vector>& images)
{
    if (images.size() != source.num_presentation_gens())
        throw InputError("map_from_generators: need one image per generator");
    ChainMap f;
    f.source = std::make_shared<const DGModule>(source);
    f.target = std::make_shared<const DGModule>(target);
    for (std::size_t j = 0; j < images.size(); ++j)
        if (images[j].size() != target.dim(source.presentation_gen(j).deg))
            throw InputError("map_from_generators: image of generator " + std::to_string(j) + " has the wrong length");
    for (const auto& b : source.bidegrees()) {
        const auto* cov = source.cover(b);
        if (!cov) throw InputError("map_from_generators: source is not a compiled module");
        std::vector<Vector> cols;
        for (const auto& [j, a] : *cov) cols.push_back(target.act(a, source.presentation_gen(j).deg, images[j]));
        f.maps[b] = Matrix::from_columns(target.dim(b), cols);
    }
    if (auto err = f.check()) throw ComputeError("map_from_generators: " + *err);
    return f;
}

ChainMap multiplication_map(const DGModule& m, std::size_t gen)
{
    const auto& A = m.ring();
    auto gb = A.generator_basis(gen);
    if (gb && !A.diff(*gb).empty()) throw InputError("multiplication_map: generator is not a cycle");
    const Bidegree dx = A.generators()[gen].deg;
    ChainMap f;
    f.source = std::make_shared<const DGModule>(shift(m, -dx.n, -dx.d));
    f.target = std::make_shared<const DGModule>(m);
    for (const auto& b : m.bidegrees()) {
        Matrix a = m.action(gen, b);
        if (a.rows() && a.cols()) f.maps[b + dx] = std::move(a);
    }
    if (auto err = f.check()) throw ComputeError("multiplication_map: " + *err);
    return f;
}

Triangle cone(const ChainMap& f)
{
    const Bidegree one{1, 0};
    const DGModule& N = *f.target;
    auto M1 = std::make_shared<const DGModule>(shift(*f.source, 1));
    const WeightRange rs[] = {M1->range, N.range};
    DGModule C(N.algebra(), "cone(" + f.source->name() + " -> " + N.name() + ")");
    C.range = combine(rs);
    auto in_range = [&](Bidegree b) { return b.d >= C.range.d_lo && b.d <= C.range.d_hi; };
    std::vector<Bidegree> bs;
    for (const auto& b : M1->bidegrees())
        if (in_range(b)) bs.push_back(b);
    for (const auto& b : N.bidegrees())
        if (in_range(b)) bs.push_back(b);
    std::sort(bs.begin(), bs.end());
    bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
    for (const auto& b : bs) {
        std::vector<std::size_t> tags;
        auto tm = M1->tags(b);
        auto tn = N.tags(b);
        tags.insert(tags.end(), tm.begin(), tm.end());
        tags.insert(tags.end(), tn.begin(), tn.end());
        C.set_space(b, std::move(tags));
    }
    const auto& gens = N.ring().generators();
    for (const auto& b : bs) {
        Matrix d = block_diagonal({M1->diff(b), N.diff(b)});
        const Matrix fb = f.at(b + one);
        const std::size_t row0 = M1->dim(b + one);
        for (std::size_t i = 0; i < fb.rows(); ++i)
            for (std::size_t j = 0; j < fb.cols(); ++j) d(row0 + i, j) = fb(i, j);
        C.set_diff(b, std::move(d));
        for (std::size_t g = 0; g < gens.size(); ++g) {
            if (!in_range(b + gens[g].deg)) continue;
            C.set_action(g, b, block_diagonal({M1->action(g, b), N.action(g, b)}));
        }
    }
    if (M1->n_lo_bound && N.n_lo_bound) C.n_lo_bound = std::min(*M1->n_lo_bound, *N.n_lo_bound);
    if (M1->n_hi_bound && N.n_hi_bound) C.n_hi_bound = std::max(*M1->n_hi_bound, *N.n_hi_bound);
    for (const auto& b : M1->unknown) C.unknown.insert(b);
    for (const auto& b : N.unknown) C.unknown.insert(b);

    Triangle t;
    t.cone = std::make_shared<const DGModule>(std::move(C));
    t.inclusion.source = f.target;
    t.inclusion.target = t.cone;
    t.projection.source = t.cone;
    t.projection.target = M1;
    for (const auto& b : bs) {
        const std::size_t dm = M1->dim(b), dn = N.dim(b);
        if (dn) {
            Matrix inc(dm + dn, dn);
            for (std::size_t i = 0; i < dn; ++i) inc(dm + i, i) = Fp(1);
            t.inclusion.maps[b] = std::move(inc);
        }
        if (dm) {
            Matrix proj(dm, dm + dn);
            for (std::size_t i = 0; i < dm; ++i) proj(i, i) = Fp(1);
            t.projection.maps[b] = std::move(proj);
        }
    }
    return t;
}

std::size_t cohomology_dim(const DGModule& m, Bidegree b)
{
    return cohomology_dimension(m.diff(b - Bidegree{1, 0}), m.diff(b), m.dim(b));
}

DimTable cohomology_table(const DGModule& m, const Window& w)
{
    w.check();
    DimTable t;
    t.closed_below = m.range.exact_below;
    t.closed_above = m.range.exact_above;
    for (int n = w.n_min; n <= w.n_max; ++n)
        for (int d = m.range.d_lo; d <= m.range.d_hi; ++d)
            t.set({n, d}, static_cast<long>(cohomology_dim(m, {n, d})),
                  n > w.n_min && n < w.n_max && m.known({n - 1, d}) && m.known({n, d}) && m.known({n + 1, d}));
    return t;
}

}  // namespace dgw
