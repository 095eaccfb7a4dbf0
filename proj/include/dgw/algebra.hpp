#ifndef DGW_ALGEBRA_HPP
#define DGW_ALGEBRA_HPP

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dgw/presentation.hpp"

namespace dgw {

/// Finite bidegree box. Cohomological bounds only affect reporting and
/// certification; d_max bounds every compiled object.
struct Window {
    int n_min = -8;
    int n_max = 8;
    int d_max = 12;

    void check() const;  // throws InputError when malformed
    friend bool operator==(const Window&, const Window&) = default;
};

/// A DG-ring compiled to structure constants on its normal-form monomials of
/// internal weight <= d_max. Every weight piece is finite because ring
/// generators have positive weight.
class TruncatedAlgebra {
public:
    struct Generator {
        std::string name;
        Bidegree deg;
        std::size_t component = 0;
        std::size_t local = 0;  // index inside the component presentation
    };
    struct BasisElement {
        std::size_t component = 0;
        Exponents exps;
        Bidegree deg;
    };
    struct Term {
        std::size_t id;
        Fp coeff;
    };

    const RingPresentation& presentation() const noexcept { return pres_; }
    const Window& window() const noexcept { return window_; }
    int d_max() const noexcept { return window_.d_max; }
    std::size_t num_components() const noexcept { return pres_.components.size(); }
    int max_generator_weight() const noexcept { return max_gen_weight_; }

    const std::vector<Generator>& generators() const noexcept { return gens_; }
    std::optional<std::size_t> generator_index(std::size_t component, std::string_view name) const;

    std::size_t size() const noexcept { return basis_.size(); }
    const BasisElement& basis(std::size_t i) const { return basis_[i]; }
    /// Basis ids in one bidegree, in deterministic (exponent) order.
    std::span<const std::size_t> at(Bidegree b) const;
    std::vector<Bidegree> bidegrees() const;
    std::optional<std::size_t> index_of(std::size_t component, const Exponents& e) const;
    std::size_t unit(std::size_t component) const { return units_[component]; }
    /// Basis id of a generator, absent when a relation kills it.
    std::optional<std::size_t> generator_basis(std::size_t gen) const { return gen_basis_[gen]; }

    /// Product of two basis elements, or nullopt when it vanishes. Products
    /// whose weight exceeds d_max also return nullopt; callers stay in window.
    std::optional<Term> multiply(std::size_t a, std::size_t b) const;
    const std::vector<Term>& diff(std::size_t a) const { return diff_[a]; }

    /// True when the truncation is the whole algebra (it vanishes above d_max).
    bool finite() const noexcept { return finite_; }

    /// Presentation of H^0 when it is again a monomial quotient.
    std::optional<RingPresentation> h0_presentation() const { return dgw::h0_presentation(pres_); }

    /// Re-verifies d^2 = 0 and the Leibniz rule on every in-window pair;
    /// returns a description of the first violation.
    std::optional<std::string> check() const;

private:
    friend std::shared_ptr<const TruncatedAlgebra> compile_ring(const RingPresentation&, const Window&);

    RingPresentation pres_;
    Window window_;
    int max_gen_weight_ = 0;
    std::vector<Generator> gens_;
    std::vector<std::optional<std::size_t>> gen_basis_;
    std::vector<BasisElement> basis_;
    std::map<std::pair<std::size_t, Exponents>, std::size_t> index_;
    std::map<Bidegree, std::vector<std::size_t>> by_bidegree_;
    std::vector<std::size_t> units_;
    std::vector<std::int32_t> mult_id_;  // size()^2, -1 when zero
    std::vector<Fp> mult_coeff_;
    std::vector<std::vector<Term>> diff_;
    bool finite_ = false;
};

using AlgebraPtr = std::shared_ptr<const TruncatedAlgebra>;

/// Enumerates normal-form monomials up to the window weight, builds the
/// multiplication table and differential, and validates d^2 = 0 and Leibniz.
/// Throws ComputeError on a violation, InputError on a bad window.
AlgebraPtr compile_ring(const RingPresentation& p, const Window& w);

/// Compiles the monomial presentation of H^0; throws when there is none.
AlgebraPtr compile_h0(const TruncatedAlgebra& a);

}  // namespace dgw

#endif
