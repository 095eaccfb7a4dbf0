#include "dgw/resolve.hpp"

#include <algorithm>

#include "dgw/errors.hpp"

namespace dgw {

namespace {

const std::vector<std::pair<std::size_t, std::size_t>> kNoBasis;
const Bidegree kOne{1, 0};

}  // namespace

const std::vector<std::pair<std::size_t, std::size_t>>& SemifreeResolution::basis(Bidegree b) const
{
    auto it = basis_.find(b);
    return it == basis_.end() ? kNoBasis : it->second;
}

std::vector<Bidegree> SemifreeResolution::bidegrees() const
{
    std::vector<Bidegree> out;
    for (const auto& kv : basis_) out.push_back(kv.first);
    return out;
}

Matrix SemifreeResolution::diff(Bidegree src) const { return free_->diff(src); }

Matrix SemifreeResolution::augmentation(Bidegree b) const
{
    const auto& fb = basis(b);
    std::vector<Vector> cols;
    for (const auto& [g, a] : fb) cols.push_back(target_->act(a, gens_[g].deg, gens_[g].aug));
    return Matrix::from_columns(target_->dim(b), cols);
}

ChainMap SemifreeResolution::augmentation_map() const
{
    ChainMap f;
    f.source = free_;
    f.target = target_;
    for (const auto& b : bidegrees()) {
        Matrix m = augmentation(b);
        if (!m.empty()) f.maps[b] = std::move(m);
    }
    return f;
}

std::optional<int> SemifreeResolution::frontier() const
{
    std::optional<int> out;
    for (const auto& g : gens_)
        if (g.deg.d > cap_ - band_) out = std::max(out.value_or(g.deg.n), g.deg.n);
    return out;
}

bool SemifreeResolution::degree_quiet(int n) const
{
    auto f = frontier();
    return !f || n > *f;
}

int default_quiet_band(const TruncatedAlgebra& a) { return std::max(2, 2 * a.max_generator_weight()); }

class ResolutionBuilder {
public:
    ResolutionBuilder(const DGModule& m, std::vector<ResolutionGenerator>& gens,
            std::map<Bidegree, std::vector<std::pair<std::size_t, std::size_t>>>& basis,
            std::map<Bidegree, std::map<std::pair<std::size_t, std::size_t>, std::size_t>>& index, int cap)
        : m_(m), A_(m.ring()), gens_(gens), basis_(basis), index_(index), cap_(cap)
    {
    }

    std::size_t fdim(Bidegree b) const
    {
        auto it = basis_.find(b);
        return it == basis_.end() ? 0 : it->second.size();
    }

    void add_generator(ResolutionGenerator g)
    {
        const std::size_t id = gens_.size();
        for (std::size_t a = 0; a < A_.size(); ++a) {
            const auto& be = A_.basis(a);
            if (be.component != g.component || be.deg.d + g.deg.d > cap_) continue;
            const Bidegree b = be.deg + g.deg;
            index_[b][{id, a}] = basis_[b].size();
            basis_[b].push_back({id, a});
        }
        gens_.push_back(std::move(g));
    }

    // d(a * g) in coordinates of F at b + (1,0)
    Vector free_diff(Bidegree b, std::size_t coord) const
    {
        const auto [g, a] = basis_.at(b)[coord];
        Vector out(fdim(b + kOne));
        for (const auto& t : A_.diff(a)) out[index_.at(b + kOne).at({g, t.id})] += t.coeff;
        const Fp s = sign_fp(A_.basis(a).deg.n);
        for (const auto& t : gens_[g].diff)
            if (auto p = A_.multiply(a, t.basis_id))
                out[index_.at(b + kOne).at({t.gen, p->id})] += s * t.coeff * p->coeff;
        return out;
    }

    Matrix diff_matrix(Bidegree b) const
    {
        std::vector<Vector> cols;
        for (std::size_t i = 0; i < fdim(b); ++i) cols.push_back(free_diff(b, i));
        return Matrix::from_columns(fdim(b + kOne), cols);
    }

    const Matrix& act(std::size_t a, Bidegree src)
    {
        auto key = std::make_pair(a, src);
        auto it = act_cache_.find(key);
        if (it == act_cache_.end()) it = act_cache_.emplace(key, m_.act(a, src)).first;
        return it->second;
    }

    Matrix aug_matrix(Bidegree b)
    {
        std::vector<Vector> cols;
        if (auto it = basis_.find(b); it != basis_.end())
            for (const auto& [g, a] : it->second) cols.push_back(act(a, gens_[g].deg).apply(gens_[g].aug));
        return Matrix::from_columns(m_.dim(b), cols);
    }

    // Cone of the augmentation at weight w: C^n = F^{n+1} + M^n. Returns the
    // generators that kill its cohomology.
    std::vector<ResolutionGenerator> process_weight(int w)
    {
        std::vector<int> ns;
        for (const auto& [b, v] : basis_)
            if (b.d == w && !v.empty()) ns.push_back(b.n - 1);
        for (const auto& b : m_.bidegrees())
            if (b.d == w) ns.push_back(b.n);
        std::sort(ns.begin(), ns.end());
        ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

        struct Level {
            std::size_t nf = 0, nm = 0;
            std::vector<std::size_t> tags;
        };
        auto level = [&](int n) {
            Level l;
            l.nf = fdim({n + 1, w});
            l.nm = m_.dim({n, w});
            if (l.nf) for (const auto& [g, a] : basis_.at({n + 1, w})) l.tags.push_back(gens_[g].component);
            auto t = m_.tags({n, w});
            l.tags.insert(l.tags.end(), t.begin(), t.end());
            return l;
        };
        // d_C out of C^n, restricted to component c
        auto cone_diff = [&](int n, std::size_t c) {
            const Level src = level(n), dst = level(n + 1);
            Matrix full(dst.nf + dst.nm, src.nf + src.nm);
            const Matrix df = diff_matrix({n + 1, w});
            for (std::size_t i = 0; i < df.rows(); ++i)
                for (std::size_t j = 0; j < df.cols(); ++j) full(i, j) = -df(i, j);
            const Matrix au = aug_matrix({n + 1, w});
            for (std::size_t i = 0; i < au.rows(); ++i)
                for (std::size_t j = 0; j < au.cols(); ++j) full(dst.nf + i, j) = au(i, j);
            const Matrix dm = m_.diff({n, w});
            for (std::size_t i = 0; i < dm.rows(); ++i)
                for (std::size_t j = 0; j < dm.cols(); ++j) full(dst.nf + i, src.nf + j) = dm(i, j);
            std::vector<std::size_t> rows, cols;
            for (std::size_t i = 0; i < dst.tags.size(); ++i)
                if (dst.tags[i] == c) rows.push_back(i);
            for (std::size_t j = 0; j < src.tags.size(); ++j)
                if (src.tags[j] == c) cols.push_back(j);
            Matrix out(rows.size(), cols.size());
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = full(rows[i], cols[j]);
            return std::make_pair(out, cols);
        };

        std::vector<ResolutionGenerator> found;
        for (std::size_t c = 0; c < A_.num_components(); ++c)
            for (int n : ns) {
                const Level l = level(n);
                auto [out, coords] = cone_diff(n, c);
                auto [in, unused] = cone_diff(n - 1, c);
                (void)unused;
                if (coords.empty()) continue;
                for (const auto& rep : cohomology_representatives(in, out, coords.size())) {
                    Vector full(l.nf + l.nm);
                    for (std::size_t i = 0; i < coords.size(); ++i) full[coords[i]] = rep[i];
                    ResolutionGenerator g;
                    g.deg = {n, w};
                    g.component = c;
                    const auto& fb = l.nf ? basis_.at({n + 1, w}) : kNoBasis;
                    for (std::size_t i = 0; i < l.nf; ++i)
                        if (!full[i].is_zero()) g.diff.push_back({full[i], fb[i].second, fb[i].first});
                    g.aug.assign(l.nm, Fp(0));
                    for (std::size_t i = 0; i < l.nm; ++i) g.aug[i] = -full[l.nf + i];
                    found.push_back(std::move(g));
                }
            }
        return found;
    }

private:
    const DGModule& m_;
    const TruncatedAlgebra& A_;
    std::vector<ResolutionGenerator>& gens_;
    std::map<Bidegree, std::vector<std::pair<std::size_t, std::size_t>>>& basis_;
    std::map<Bidegree, std::map<std::pair<std::size_t, std::size_t>, std::size_t>>& index_;
    int cap_;
    std::map<std::pair<std::size_t, Bidegree>, Matrix> act_cache_;
};

SemifreeResolution SemifreeResolution::start(const DGModule& m, std::optional<int> band)
{
    if (!m.range.exact_below)
        throw InputError("cannot resolve '" + m.name() + "': it is not known to vanish below weight " +
                         std::to_string(m.range.d_lo));
    SemifreeResolution r;
    r.target_ = std::make_shared<const DGModule>(m);
    const TruncatedAlgebra& A = m.ring();
    r.cap_ = A.d_max();
    if (!m.range.exact_above) r.cap_ = std::min(r.cap_, m.range.d_hi);
    r.band_ = band.value_or(default_quiet_band(A));
    if (r.band_ < 1) throw InputError("quiet band must be positive");
    r.complete_ = m.is_zero() && m.range.exact_above;
    return r;
}

void SemifreeResolution::assemble(const ResolutionBuilder& b)
{
    const DGModule& m = *target_;
    const TruncatedAlgebra& A = m.ring();
    DGModule F(m.algebra(), "F(" + m.name() + ")");
    for (const auto& [bd, v] : basis_) {
        std::vector<std::size_t> tags;
        for (const auto& [g, a] : v) tags.push_back(gens_[g].component);
        F.set_space(bd, std::move(tags));
    }
    const auto& gens = A.generators();
    for (const auto& [bd, v] : basis_) {
        F.set_diff(bd, b.diff_matrix(bd));
        for (std::size_t x = 0; x < gens.size(); ++x) {
            auto xb = A.generator_basis(x);
            const Bidegree tb = bd + gens[x].deg;
            if (!xb || tb.d > cap_) continue;
            Matrix act(b.fdim(tb), v.size());
            for (std::size_t j = 0; j < v.size(); ++j)
                if (auto p = A.multiply(*xb, v[j].second)) act(index_.at(tb).at({v[j].first, p->id}), j) += p->coeff;
            F.set_action(x, bd, std::move(act));
        }
    }
    F.range = {m.range.d_lo, cap_, true, complete_};
    std::optional<int> top;
    for (const auto& g : gens_) top = std::max(top.value_or(g.deg.n), g.deg.n);
    F.n_hi_bound = top.value_or(0);
    if (gens_.empty()) F.n_lo_bound = 0;
    free_ = std::make_shared<const DGModule>(std::move(F));
}

SemifreeResolution minimal_semifree(const DGModule& m, std::optional<int> band)
{
    SemifreeResolution r = SemifreeResolution::start(m, band);
    ResolutionBuilder b(m, r.gens_, r.basis_, r.index_, r.cap_);
    for (int w = m.range.d_lo; w <= r.cap_; ++w)
        for (auto& g : b.process_weight(w)) {
            g.name = "g" + std::to_string(r.gens_.size());
            b.add_generator(std::move(g));
        }
    r.assemble(b);
    return r;
}

SemifreeResolution assemble_resolution(const DGModule& m, std::vector<ResolutionGenerator> gens, std::optional<int> band)
{
    SemifreeResolution r = SemifreeResolution::start(m, band);
    ResolutionBuilder b(m, r.gens_, r.basis_, r.index_, r.cap_);
    for (auto& g : gens) {
        if (g.name.empty()) g.name = "g" + std::to_string(r.gens_.size());
        for (const auto& t : g.diff)
            if (t.gen >= r.gens_.size() + gens.size() || t.basis_id >= m.ring().size())
                throw InputError("assemble_resolution: differential of " + g.name + " refers to an unknown term");
        const std::size_t self = r.gens_.size();
        for (const auto& t : g.diff) {
            if (t.gen >= self) throw InputError("assemble_resolution: differential of " + g.name + " involves a later generator");
            if (r.gens_[t.gen].deg + m.ring().basis(t.basis_id).deg != g.deg + Bidegree{1, 0})
                throw InputError("assemble_resolution: differential of " + g.name + " is not homogeneous");
        }
        if (g.aug.size() != m.dim(g.deg)) throw InputError("assemble_resolution: augmentation of " + g.name + " has the wrong size");
        b.add_generator(std::move(g));
    }
    r.assemble(b);
    return r;
}

ResolutionReport verify_resolution(const SemifreeResolution& r)
{
    ResolutionReport rep;
    const auto& A = r.algebra();
    rep.semifree = rep.minimal = true;
    for (std::size_t i = 0; i < r.generators().size(); ++i)
        for (const auto& t : r.generators()[i].diff) {
            if (t.gen >= i) rep.semifree = false;
            if (A->basis(t.basis_id).deg.d == 0) rep.minimal = false;
        }
    if (!rep.semifree) rep.detail += "differential involves a later generator; ";
    if (!rep.minimal) rep.detail += "differential has a unit coefficient; ";

    ChainMap aug = r.augmentation_map();
    auto err = aug.check();
    rep.chain_map = !err;
    if (err) rep.detail += *err + "; ";
    if (auto ferr = r.free_module()->check()) {
        rep.chain_map = false;
        rep.detail += "free module: " + *ferr + "; ";
    }

    rep.acyclic = true;
    if (rep.chain_map) {
        Triangle t = cone(aug);
        for (const auto& b : t.cone->bidegrees())
            if (b.d <= r.cap() && cohomology_dim(*t.cone, b) != 0) {
                rep.acyclic = false;
                rep.detail += "cone has cohomology at " + to_string(b) + "; ";
                break;
            }
    } else {
        rep.acyclic = false;
    }
    return rep;
}

}  // namespace dgw
