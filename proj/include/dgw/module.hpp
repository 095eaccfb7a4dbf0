#ifndef DGW_MODULE_HPP
#define DGW_MODULE_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dgw/algebra.hpp"
#include "dgw/dimtable.hpp"
#include "dgw/matrix.hpp"

namespace dgw {

/// Which internal weights of a module are known. Stored spaces cover
/// [d_lo, d_hi]; outside that range the module is zero on an exact side and
/// unknown otherwise.
struct WeightRange {
    int d_lo = 0;
    int d_hi = 0;
    bool exact_below = true;
    bool exact_above = false;

    bool known(int d) const { return (d >= d_lo || exact_below) && (d <= d_hi || exact_above); }
    /// True when weight d is known to carry nothing.
    bool zero_at(int d) const { return (d < d_lo && exact_below) || (d > d_hi && exact_above); }
    friend bool operator==(const WeightRange&, const WeightRange&) = default;
};

/// Intersection of the known ranges, as seen by any construction mixing them.
WeightRange combine(std::span<const WeightRange> ranges);

/// A DG-module over a truncated algebra, stored as finite matrices per
/// bidegree. Every basis vector carries the ring component it lives over.
class DGModule {
public:
    DGModule(AlgebraPtr alg, std::string name) : alg_(std::move(alg)), name_(std::move(name)) {}

    const AlgebraPtr& algebra() const noexcept { return alg_; }
    const TruncatedAlgebra& ring() const noexcept { return *alg_; }
    const std::string& name() const noexcept { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    WeightRange range;
    std::optional<int> n_lo_bound;  // no cohomological degree below this
    std::optional<int> n_hi_bound;
    /// Bidegrees inside the stored range whose space may be incomplete.
    std::set<Bidegree> unknown;

    /// The space at b is exactly known (possibly known to be zero).
    bool known(Bidegree b) const { return range.known(b.d) && !unknown.count(b); }
    /// Degree n lies outside the cohomological bounds.
    bool outside_degrees(int n) const { return (n_lo_bound && n < *n_lo_bound) || (n_hi_bound && n > *n_hi_bound); }

    std::size_t dim(Bidegree b) const;
    std::span<const std::size_t> tags(Bidegree b) const;  // component per basis vector
    /// Bidegrees with a nonzero space, ascending.
    std::vector<Bidegree> bidegrees() const;
    bool is_zero() const { return spaces_.empty(); }

    /// Differential out of bidegree src, shape dim(src + (1,0)) x dim(src).
    Matrix diff(Bidegree src) const;
    /// Action of ring generator `gen` on bidegree src.
    Matrix action(std::size_t gen, Bidegree src) const;
    /// Action of an algebra basis element, built from generator actions after
    /// projecting onto its component.
    Matrix act(std::size_t basis_id, Bidegree src) const;
    Vector act(std::size_t basis_id, Bidegree src, const Vector& v) const { return act(basis_id, src).apply(v); }

    void set_space(Bidegree b, std::vector<std::size_t> tags);
    void set_diff(Bidegree src, Matrix m);
    void set_action(std::size_t gen, Bidegree src, Matrix m);
    /// Drops everything outside [lo, hi] and resets the stored range.
    void clip(int lo, int hi);

    /// Verifies d^2 = 0, the Leibniz rule for generator actions, graded
    /// commutativity of actions and the ring relations, wherever all
    /// involved weights are stored. Returns the first violation.
    std::optional<std::string> check() const;

    /// Quotient-of-free description kept for compiled modules: basis vector i
    /// at b is the class of a_i * g_j for (j, a_i) = cover(b)[i].
    struct CoverTerm {
        std::size_t gen;
        std::size_t basis_id;
    };
    const std::vector<CoverTerm>* cover(Bidegree b) const;
    std::size_t num_presentation_gens() const noexcept { return pres_gens_.size(); }
    const ModuleGen& presentation_gen(std::size_t j) const { return pres_gens_[j]; }
    /// Coordinates of a * g_j in bidegree a.deg + g_j.deg.
    Vector class_of(std::size_t gen, std::size_t basis_id) const;

private:
    friend DGModule compile_module(const ModulePresentation&, const AlgebraPtr&);

    AlgebraPtr alg_;
    std::string name_;
    std::map<Bidegree, std::vector<std::size_t>> spaces_;
    std::map<Bidegree, Matrix> diff_;
    std::map<std::pair<std::size_t, Bidegree>, Matrix> action_;

    std::vector<ModuleGen> pres_gens_;
    std::map<Bidegree, std::vector<CoverTerm>> cover_;
    std::map<Bidegree, std::vector<Vector>> class_;  // per free coordinate, its class
    std::map<Bidegree, std::vector<CoverTerm>> free_basis_;
};

/// Compiles a cokernel presentation up to the algebra's weight cap. Fails
/// with ComputeError when the differential does not preserve the relations
/// or does not square to zero.
DGModule compile_module(const ModulePresentation& p, const AlgebraPtr& alg);
DGModule algebra_as_module(const AlgebraPtr& alg);

/// comp'(n, d) = comp(n + k, d + twist); the differential picks up (-1)^k and
/// the action of a by (-1)^{k|a|}.
DGModule shift(const DGModule& m, int k, int twist = 0);
DGModule direct_sum(const std::vector<const DGModule*>& parts);

/// Pullback along A -> H^0(A): negative generators act by zero.
DGModule inflate(const DGModule& m, const AlgebraPtr& to);
/// Restriction along the inclusion of a sub-presentation: each generator of
/// `to` acts as the same-named generator of the module's ring.
DGModule restrict_scalars(const DGModule& m, const AlgebraPtr& to);
/// k[t, t^-1] over a polynomial ring on one even generator, kept on weights
/// [-d_max, d_max]. Neither side is exact.
DGModule laurent_module(const AlgebraPtr& alg);

/// Degree-(0,0) morphism of DG-modules over the same algebra.
struct ChainMap {
    std::shared_ptr<const DGModule> source;
    std::shared_ptr<const DGModule> target;
    std::map<Bidegree, Matrix> maps;

    Matrix at(Bidegree b) const;  // zero when absent
    /// Checks commutation with differentials and generator actions on the
    /// weights both modules store.
    std::optional<std::string> check() const;
    /// Rank of the induced map on cohomology at b.
    std::size_t cohomology_rank(Bidegree b) const;
};

ChainMap identity_map(const DGModule& m);
/// Map out of a compiled module determined by the images of its
/// presentation generators (one target vector per generator).
ChainMap map_from_generators(const DGModule& source, const DGModule& target, const std::vector<Vector>& images);
/// Left multiplication by generator x of degree (n_x, d_x), seen as a
/// degree-(0,0) map shift(M, -n_x, -d_x) -> M. Requires d(x) = 0.
ChainMap multiplication_map(const DGModule& m, std::size_t gen);

struct Triangle {
    std::shared_ptr<const DGModule> cone;
    ChainMap inclusion;   // N -> cone(f)
    ChainMap projection;  // cone(f) -> M[1]
};
/// cone(f) = M[1] + N with differential [[-d_M, 0], [f, d_N]].
Triangle cone(const ChainMap& f);

/// Cohomology dimensions over the window's n-range and the stored weights.
/// Entries at the window edges are reported but not certified.
DimTable cohomology_table(const DGModule& m, const Window& w);
std::size_t cohomology_dim(const DGModule& m, Bidegree b);

}  // namespace dgw

#endif
