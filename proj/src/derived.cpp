#include "dgw/derived.hpp"

#include <algorithm>

#include "dgw/errors.hpp"

namespace dgw {

namespace {

const Bidegree kOne{1, 0};

std::vector<std::size_t> component_coords(const DGModule& n, Bidegree b, std::size_t component)
{
    std::vector<std::size_t> out;
    auto t = n.tags(b);
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] == component) out.push_back(i);
    return out;
}

template <class BlockT>
const BlockT* find_block(const std::vector<BlockT>& blocks, std::size_t gen)
{
    for (const auto& b : blocks)
        if (b.gen == gen) return &b;
    return nullptr;
}

void check_same_algebra(const SemifreeResolution& f, const DGModule& n)
{
    if (f.algebra() != n.algebra()) throw InputError("modules '" + f.target().name() + "' and '" + n.name() + "' are over different algebras");
}

// Highest weight where n is nonzero; only meaningful when n is exact above.
int top_weight(const DGModule& n)
{
    int top = n.range.d_lo - 1;
    for (const auto& b : n.bidegrees())
        if (n.dim(b) > 0) top = std::max(top, b.d);
    return top;
}

}  // namespace

HomComplex::HomComplex(const SemifreeResolution& f, const DGModule& n, int weight) : f_(f), n_(n), w_(weight)
{
    check_same_algebra(f, n);
    users_.resize(f.generators().size());
    for (std::size_t g = 0; g < f.generators().size(); ++g)
        for (const auto& t : f.generators()[g].diff) users_[t.gen].push_back({g, t});
}

const std::vector<HomComplex::Block>& HomComplex::blocks(int k) const
{
    auto it = blocks_.find(k);
    if (it != blocks_.end()) return it->second;
    std::vector<Block> out;
    std::size_t offset = 0;
    const auto& gens = f_.generators();
    for (std::size_t g = 0; g < gens.size(); ++g) {
        const Bidegree b{gens[g].deg.n + k, gens[g].deg.d + w_};
        auto coords = component_coords(n_, b, gens[g].component);
        if (coords.empty()) continue;
        const std::size_t sz = coords.size();
        out.push_back({g, b, std::move(coords), offset});
        offset += sz;
    }
    return blocks_.emplace(k, std::move(out)).first->second;
}

std::size_t HomComplex::dim(int k) const
{
    std::size_t d = 0;
    for (const auto& b : blocks(k)) d += b.coords.size();
    return d;
}

Matrix HomComplex::diff(int k) const
{
    const auto& src = blocks(k);
    const auto& dst = blocks(k + 1);
    Matrix m(dim(k + 1), dim(k));
    const auto& A = *f_.algebra();
    const Fp sk = sign_fp(k);
    for (const auto& sb : src) {
        const Matrix dn = n_.diff(sb.target);
        const auto* same = find_block(dst, sb.gen);
        for (std::size_t j = 0; j < sb.coords.size(); ++j) {
            const std::size_t col = sb.offset + j;
            if (same)
                for (std::size_t r = 0; r < same->coords.size(); ++r)
                    m(same->offset + r, col) += dn(same->coords[r], sb.coords[j]);
            for (const auto& [g2, t] : users_[sb.gen]) {
                const auto* tb = find_block(dst, g2);
                if (!tb) continue;
                const Matrix a = n_.act(t.basis_id, sb.target);
                const Fp s = -(sk * sign_fp(A.basis(t.basis_id).deg.n * k)) * t.coeff;
                for (std::size_t r = 0; r < tb->coords.size(); ++r)
                    m(tb->offset + r, col) += s * a(tb->coords[r], sb.coords[j]);
            }
        }
    }
    return m;
}

bool HomComplex::certified(int k) const
{
    for (const auto& g : f_.generators()) {
        const Bidegree b{g.deg.n + k, g.deg.d + w_};
        if (n_.outside_degrees(b.n)) continue;
        if (!n_.known(b)) return false;
    }
    if (f_.complete()) return true;
    if (n_.range.exact_above && f_.cap() + w_ >= top_weight(n_)) return true;
    if (n_.n_lo_bound) return f_.degree_quiet(*n_.n_lo_bound - k);
    return f_.quiet();
}

bool HomComplex::beyond_window(int k) const
{
    if (n_.range.exact_above) return false;
    for (const auto& g : f_.generators()) {
        const Bidegree b{g.deg.n + k, g.deg.d + w_};
        if (!n_.outside_degrees(b.n) && b.d > n_.range.d_hi) return true;
    }
    return false;
}

TensorComplex::TensorComplex(const SemifreeResolution& f, const DGModule& n, int weight) : f_(f), n_(n), w_(weight)
{
    check_same_algebra(f, n);
}

const std::vector<TensorComplex::Block>& TensorComplex::blocks(int k) const
{
    auto it = blocks_.find(k);
    if (it != blocks_.end()) return it->second;
    std::vector<Block> out;
    std::size_t offset = 0;
    const auto& gens = f_.generators();
    for (std::size_t g = 0; g < gens.size(); ++g) {
        const Bidegree b{k - gens[g].deg.n, w_ - gens[g].deg.d};
        auto coords = component_coords(n_, b, gens[g].component);
        if (coords.empty()) continue;
        const std::size_t sz = coords.size();
        out.push_back({g, b, std::move(coords), offset});
        offset += sz;
    }
    return blocks_.emplace(k, std::move(out)).first->second;
}

std::size_t TensorComplex::dim(int k) const
{
    std::size_t d = 0;
    for (const auto& b : blocks(k)) d += b.coords.size();
    return d;
}

Matrix TensorComplex::diff(int k) const
{
    const auto& src = blocks(k);
    const auto& dst = blocks(k + 1);
    Matrix m(dim(k + 1), dim(k));
    const auto& A = *f_.algebra();
    const auto& gens = f_.generators();
    for (const auto& sb : src) {
        const Matrix dn = n_.diff(sb.source);
        const Fp sg = sign_fp(gens[sb.gen].deg.n);
        const auto* same = find_block(dst, sb.gen);
        for (std::size_t j = 0; j < sb.coords.size(); ++j) {
            const std::size_t col = sb.offset + j;
            if (same)
                for (std::size_t r = 0; r < same->coords.size(); ++r)
                    m(same->offset + r, col) += sg * dn(same->coords[r], sb.coords[j]);
            for (const auto& t : gens[sb.gen].diff) {
                const auto* tb = find_block(dst, t.gen);
                if (!tb) continue;
                const Matrix a = n_.act(t.basis_id, sb.source);
                const Fp s = t.coeff * sign_fp(A.basis(t.basis_id).deg.n * gens[t.gen].deg.n);
                for (std::size_t r = 0; r < tb->coords.size(); ++r)
                    m(tb->offset + r, col) += s * a(tb->coords[r], sb.coords[j]);
            }
        }
    }
    return m;
}

bool TensorComplex::certified(int k) const
{
    for (const auto& g : f_.generators()) {
        const Bidegree b{k - g.deg.n, w_ - g.deg.d};
        if (n_.outside_degrees(b.n)) continue;
        if (!n_.known(b)) return false;
    }
    if (f_.complete()) return true;
    if (n_.range.exact_below && w_ - f_.cap() <= n_.range.d_lo) return true;
    if (n_.n_hi_bound) return f_.degree_quiet(k - *n_.n_hi_bound);
    return f_.quiet();
}

bool TensorComplex::beyond_window(int k) const
{
    if (n_.range.exact_above) return false;
    for (const auto& g : f_.generators()) {
        const Bidegree b{k - g.deg.n, w_ - g.deg.d};
        if (!n_.outside_degrees(b.n) && b.d > n_.range.d_hi) return true;
    }
    return false;
}

namespace {

template <class Complex>
void fill_row_range(DimTable& t, const Complex& c, int w, const Window& win)
{
    std::map<int, Matrix> d;
    auto diff = [&](int k) -> const Matrix& {
        auto it = d.find(k);
        if (it == d.end()) it = d.emplace(k, c.diff(k)).first;
        return it->second;
    };
    std::map<int, bool> cert;
    auto certified = [&](int k) {
        auto it = cert.find(k);
        if (it == cert.end()) it = cert.emplace(k, c.certified(k)).first;
        return it->second;
    };
    for (int n = win.n_min; n <= win.n_max; ++n) {
        const long dim = static_cast<long>(cohomology_dimension(diff(n - 1), diff(n), c.dim(n)));
        const bool ok = n > win.n_min && n < win.n_max && certified(n - 1) && certified(n) && certified(n + 1);
        if (!ok && (c.beyond_window(n - 1) || c.beyond_window(n) || c.beyond_window(n + 1))) continue;
        t.set({n, w}, dim, ok);
    }
}

int lowest_generator_weight(const SemifreeResolution& f)
{
    int lo = f.cap();
    for (const auto& g : f.generators()) lo = std::min(lo, g.deg.d);
    return f.generators().empty() ? f.target().range.d_lo : lo;
}

}  // namespace

DimTable rhom_table(const SemifreeResolution& f, const DGModule& n, const Window& w)
{
    w.check();
    check_same_algebra(f, n);
    DimTable t;
    t.closed_below = f.complete();
    t.closed_above = n.range.exact_above;
    const int lo = n.range.d_lo - f.cap();
    const int hi = n.range.d_hi - lowest_generator_weight(f);
    for (int wt = lo; wt <= hi; ++wt) fill_row_range(t, HomComplex(f, n, wt), wt, w);
    return t;
}

DimTable ltensor_table(const SemifreeResolution& f, const DGModule& n, const Window& w)
{
    w.check();
    check_same_algebra(f, n);
    DimTable t;
    t.closed_below = n.range.exact_below;
    t.closed_above = f.complete() && n.range.exact_above;
    const int lo = lowest_generator_weight(f) + n.range.d_lo;
    const int hi = n.range.d_hi + f.cap();
    for (int wt = lo; wt <= hi; ++wt) fill_row_range(t, TensorComplex(f, n, wt), wt, w);
    return t;
}

DimTable rhom(const DGModule& m, const DGModule& n, const Window& w, std::optional<int> band)
{
    return rhom_table(minimal_semifree(m, band), n, w);
}

DimTable ltensor(const DGModule& m, const DGModule& n, const Window& w, std::optional<int> band)
{
    return ltensor_table(minimal_semifree(m, band), n, w);
}

DimTable ext_table(const DGModule& m, const DGModule& n, const Window& w, std::optional<int> band)
{
    return rhom(m, n, w, band);
}

DimTable tor_table(const DGModule& m, const DGModule& n, const Window& w, std::optional<int> band)
{
    const Window flipped{-w.n_max, -w.n_min, w.d_max};
    DimTable h = ltensor(m, n, flipped, band);
    DimTable t;
    t.closed_below = h.closed_below;
    t.closed_above = h.closed_above;
    for (const auto& [b, e] : h.entries()) t.set({-b.n, b.d}, e.dim, e.certified);
    return t;
}

DGModule h0_module(const AlgebraPtr& a)
{
    auto h = compile_h0(*a);
    DGModule m = inflate(algebra_as_module(h), a);
    m.set_name("H0(" + a->presentation().name + ")");
    return m;
}

DimTable reduction_F(const DGModule& m, const Window& w, std::optional<int> band)
{
    return ltensor(h0_module(m.algebra()), m, w, band);
}

DimTable coreduction_G(const DGModule& m, const Window& w, std::optional<int> band)
{
    return rhom(h0_module(m.algebra()), m, w, band);
}

DGModule rhom_module(const SemifreeResolution& f, const DGModule& n, const Window& w)
{
    check_same_algebra(f, n);
    const auto& gens = f.generators();
    const auto& A = *f.algebra();
    DGModule out(f.algebra(), "RHom(" + f.target().name() + ", " + n.name() + ")");
    const int lo = n.range.d_lo - f.cap();
    const int hi = n.range.d_hi - lowest_generator_weight(f);
    int gmin = 0, gmax = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        gmin = i ? std::min(gmin, gens[i].deg.n) : gens[i].deg.n;
        gmax = i ? std::max(gmax, gens[i].deg.n) : gens[i].deg.n;
    }
    int k_lo = n.n_lo_bound ? *n.n_lo_bound - gmax : w.n_min - 1;
    int k_hi = n.n_hi_bound ? *n.n_hi_bound - gmin : w.n_max + 1;
    // room for a consumer that looks a few degrees past the window
    k_lo = std::min(k_lo, w.n_min - 4);
    k_hi = std::max(k_hi, w.n_max + 4);

    std::map<int, HomComplex> hom;
    for (int wt = lo; wt <= hi; ++wt) hom.emplace(wt, HomComplex(f, n, wt));
    for (auto& [wt, h] : hom)
        for (int k = k_lo; k <= k_hi; ++k) {
            std::vector<std::size_t> tags;
            for (const auto& b : h.blocks(k)) tags.insert(tags.end(), b.coords.size(), gens[b.gen].component);
            out.set_space({k, wt}, std::move(tags));
            if (!h.certified(k)) out.unknown.insert({k, wt});
        }
    for (auto& [wt, h] : hom)
        for (int k = k_lo; k <= k_hi; ++k) {
            if (out.dim({k, wt}) == 0) continue;
            if (k < k_hi) out.set_diff({k, wt}, h.diff(k));
            for (std::size_t x = 0; x < A.generators().size(); ++x) {
                const Bidegree dx = A.generators()[x].deg;
                auto it = hom.find(wt + dx.d);
                if (it == hom.end() || k + dx.n < k_lo) continue;
                const auto& tgt = it->second.blocks(k + dx.n);
                Matrix act(out.dim({k + dx.n, wt + dx.d}), out.dim({k, wt}));
                for (const auto& sb : h.blocks(k)) {
                    const auto* tb = find_block(tgt, sb.gen);
                    if (!tb) continue;
                    const Matrix a = n.action(x, sb.target);
                    for (std::size_t r = 0; r < tb->coords.size(); ++r)
                        for (std::size_t c = 0; c < sb.coords.size(); ++c)
                            act(tb->offset + r, sb.offset + c) = a(tb->coords[r], sb.coords[c]);
                }
                out.set_action(x, {k, wt}, std::move(act));
            }
        }
    out.range = {lo, hi, f.complete(), n.range.exact_above};
    if (n.n_lo_bound) out.n_lo_bound = *n.n_lo_bound - gmax;
    if (f.complete() && n.n_hi_bound) out.n_hi_bound = *n.n_hi_bound - gmin;
    for (int wt = lo; wt <= hi; ++wt)
        for (int k : {k_lo - 1, k_hi + 1}) out.unknown.insert({k, wt});
    return out;
}

}  // namespace dgw
