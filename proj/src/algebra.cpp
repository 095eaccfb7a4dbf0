#include "dgw/algebra.hpp"

#include <algorithm>
#include <functional>

#include "dgw/errors.hpp"

namespace dgw {

void Window::check() const
{
    if (n_min > n_max) throw InputError("window: n_min > n_max");
    if (d_max < 0) throw InputError("window: d_max < 0 leaves no room for the unit");
}

std::optional<std::size_t> TruncatedAlgebra::generator_index(std::size_t component, std::string_view name) const
{
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].component == component && gens_[i].name == name) return i;
    return std::nullopt;
}

std::span<const std::size_t> TruncatedAlgebra::at(Bidegree b) const
{
    auto it = by_bidegree_.find(b);
    if (it == by_bidegree_.end()) return {};
    return it->second;
}

std::vector<Bidegree> TruncatedAlgebra::bidegrees() const
{
    std::vector<Bidegree> out;
    for (const auto& kv : by_bidegree_) out.push_back(kv.first);
    return out;
}

std::optional<std::size_t> TruncatedAlgebra::index_of(std::size_t component, const Exponents& e) const
{
    auto it = index_.find({component, e});
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<TruncatedAlgebra::Term> TruncatedAlgebra::multiply(std::size_t a, std::size_t b) const
{
    const std::size_t k = a * basis_.size() + b;
    if (mult_id_[k] < 0) return std::nullopt;
    return Term{static_cast<std::size_t>(mult_id_[k]), mult_coeff_[k]};
}

namespace {

void enumerate(const ComponentPresentation& c, int budget, std::size_t g, Exponents& cur,
               const std::function<void(const Exponents&)>& emit)
{
    if (g == c.gens.size()) {
        if (c.is_normal(cur)) emit(cur);
        return;
    }
    const int w = c.gens[g].deg.d;
    const int cap = c.is_odd(g) ? 1 : budget / w;
    for (int e = 0; e <= cap && e * w <= budget; ++e) {
        cur[g] = e;
        enumerate(c, budget - e * w, g + 1, cur, emit);
    }
    cur[g] = 0;
}

}  // namespace

AlgebraPtr compile_ring(const RingPresentation& p, const Window& w)
{
    w.check();
    validate(p);
    auto alg = std::shared_ptr<TruncatedAlgebra>(new TruncatedAlgebra());
    TruncatedAlgebra& a = *alg;
    a.pres_ = p;
    a.window_ = w;
    a.max_gen_weight_ = p.max_generator_weight();
    for (std::size_t c = 0; c < p.components.size(); ++c) {
        const auto& comp = p.components[c];
        for (std::size_t i = 0; i < comp.gens.size(); ++i)
            a.gens_.push_back({comp.gens[i].name, comp.gens[i].deg, c, i});
        std::vector<Exponents> monos;
        Exponents cur(comp.gens.size(), 0);
        enumerate(comp, w.d_max, 0, cur, [&](const Exponents& e) { monos.push_back(e); });
        // weight-major, then exponent order: deterministic basis order
        std::stable_sort(monos.begin(), monos.end(), [&](const Exponents& x, const Exponents& y) {
            return comp.degree_of(x) < comp.degree_of(y);
        });
        for (auto& e : monos) {
            const std::size_t id = a.basis_.size();
            const Bidegree b = comp.degree_of(e);
            a.index_.emplace(std::make_pair(c, e), id);
            a.by_bidegree_[b].push_back(id);
            a.basis_.push_back({c, std::move(e), b});
        }
        a.units_.push_back(*a.index_of(c, comp.unit()));
    }
    for (const auto& g : a.gens_) {
        Exponents e(p.components[g.component].gens.size(), 0);
        e[g.local] = 1;
        a.gen_basis_.push_back(a.index_of(g.component, e));
    }

    const std::size_t n = a.basis_.size();
    a.mult_id_.assign(n * n, -1);
    a.mult_coeff_.assign(n * n, Fp(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& x = a.basis_[i];
            const auto& y = a.basis_[j];
            if (x.component != y.component || x.deg.d + y.deg.d > w.d_max) continue;
            const auto& comp = p.components[x.component];
            auto prod = comp.multiply(x.exps, y.exps);
            if (!prod || !comp.is_normal(prod->second)) continue;
            a.mult_id_[i * n + j] = static_cast<std::int32_t>(*a.index_of(x.component, prod->second));
            a.mult_coeff_[i * n + j] = prod->first;
        }

    a.diff_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& x = a.basis_[i];
        const auto& comp = p.components[x.component];
        for (const auto& [e, coef] : comp.differential(x.exps, true)) {
            auto id = a.index_of(x.component, e);
            if (!id) throw ComputeError("compile_ring: differential leaves the normal-form basis");
            a.diff_[i].push_back({*id, coef});
        }
    }

    // A truncation is the whole algebra once a band of max generator weight
    // below the cap is empty: nothing above can be reached from below.
    a.finite_ = true;
    for (const auto& b : a.basis_)
        if (b.deg.d > w.d_max - a.max_gen_weight_) a.finite_ = false;

    if (auto err = a.check()) throw ComputeError("compile_ring(" + p.name + "): " + *err);
    return alg;
}

std::optional<std::string> TruncatedAlgebra::check() const
{
    const std::size_t n = basis_.size();
    auto apply_diff = [&](const std::vector<Term>& v) {
        std::map<std::size_t, Fp> out;
        for (const auto& t : v)
            for (const auto& u : diff_[t.id]) out[u.id] += t.coeff * u.coeff;
        std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
        return out;
    };
    for (std::size_t i = 0; i < n; ++i)
        if (!apply_diff(diff_[i]).empty()) return "d^2 != 0 on basis element " + std::to_string(i);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& x = basis_[i];
            const auto& y = basis_[j];
            if (x.component != y.component || x.deg.d + y.deg.d > window_.d_max) continue;
            std::map<std::size_t, Fp> lhs, rhs;
            if (auto p = multiply(i, j))
                for (const auto& u : diff_[p->id]) lhs[u.id] += p->coeff * u.coeff;
            for (const auto& u : diff_[i])
                if (auto p = multiply(u.id, j)) rhs[p->id] += u.coeff * p->coeff;
            const Fp s = sign_fp(x.deg.n);
            for (const auto& u : diff_[j])
                if (auto p = multiply(i, u.id)) rhs[p->id] += s * u.coeff * p->coeff;
            std::erase_if(lhs, [](const auto& kv) { return kv.second.is_zero(); });
            std::erase_if(rhs, [](const auto& kv) { return kv.second.is_zero(); });
            if (lhs != rhs) return "Leibniz rule fails on basis pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
    return std::nullopt;
}

AlgebraPtr compile_h0(const TruncatedAlgebra& a)
{
    auto h = a.h0_presentation();
    if (!h) throw InputError("H0 of '" + a.presentation().name + "' is not a monomial quotient");
    return compile_ring(*h, a.window());
}

}  // namespace dgw
