#ifndef DGW_RESOLVE_HPP
#define DGW_RESOLVE_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dgw/module.hpp"

namespace dgw {

class ResolutionBuilder;

/// coeff * a * g with a an algebra basis id and g a resolution generator.
struct FreeTerm {
    Fp coeff;
    std::size_t basis_id;
    std::size_t gen;
};

struct ResolutionGenerator {
    std::string name;
    Bidegree deg;
    std::size_t component = 0;
    std::vector<FreeTerm> diff;  // only earlier generators occur
    Vector aug;                  // image in the resolved module, at deg
};

/// Minimal semifree resolution F -> M, exact on every weight up to cap().
/// Generators are added weight by weight; each one kills a cohomology class
/// of the cone of the augmentation, so the weight-w part of F is final once
/// weight w has been processed.
class SemifreeResolution {
public:
    const AlgebraPtr& algebra() const noexcept { return target_->algebra(); }
    const DGModule& target() const noexcept { return *target_; }
    const std::shared_ptr<const DGModule>& target_ptr() const noexcept { return target_; }

    int cap() const noexcept { return cap_; }
    int quiet_band() const noexcept { return band_; }
    const std::vector<ResolutionGenerator>& generators() const noexcept { return gens_; }

    /// Basis (generator, algebra basis id) of F at b, in coordinate order.
    const std::vector<std::pair<std::size_t, std::size_t>>& basis(Bidegree b) const;
    std::vector<Bidegree> bidegrees() const;
    Matrix diff(Bidegree src) const;
    Matrix augmentation(Bidegree b) const;

    std::shared_ptr<const DGModule> free_module() const { return free_; }
    ChainMap augmentation_map() const;

    /// Largest cohomological degree of a generator with weight in
    /// (cap - band, cap]; absent when that band is empty.
    std::optional<int> frontier() const;
    /// Degree n lies above the frontier. Generators move down in degree as
    /// their weight grows, so such a degree is taken to have no generators
    /// beyond the cap. This is a heuristic, not a proof.
    bool degree_quiet(int n) const;
    /// The band below the cap is empty.
    bool quiet() const { return !frontier(); }
    /// Generators are known to be complete on all weights.
    bool complete() const noexcept { return complete_; }

private:
    friend SemifreeResolution minimal_semifree(const DGModule&, std::optional<int>);
    friend SemifreeResolution assemble_resolution(const DGModule&, std::vector<ResolutionGenerator>, std::optional<int>);
    static SemifreeResolution start(const DGModule& m, std::optional<int> band);
    void assemble(const ResolutionBuilder& b);

    std::shared_ptr<const DGModule> target_;
    int cap_ = 0;
    int band_ = 1;
    bool complete_ = false;
    std::vector<ResolutionGenerator> gens_;
    std::map<Bidegree, std::vector<std::pair<std::size_t, std::size_t>>> basis_;
    std::map<Bidegree, std::map<std::pair<std::size_t, std::size_t>, std::size_t>> index_;
    std::shared_ptr<const DGModule> free_;
};

/// Default width of the quiet band: twice the largest ring generator weight.
int default_quiet_band(const TruncatedAlgebra& a);

/// Resolves a module that is exact below its stored weights. The cap is the
/// algebra's d_max, lowered to the module's top weight when it is not exact
/// above. Throws InputError for a module not exact below.
SemifreeResolution minimal_semifree(const DGModule& m, std::optional<int> band = std::nullopt);

/// Semifree module on explicitly given generators with the same cap as
/// minimal_semifree would use. Nothing beyond well-formedness is checked;
/// run verify_resolution for that.
SemifreeResolution assemble_resolution(const DGModule& m, std::vector<ResolutionGenerator> gens,
                                       std::optional<int> band = std::nullopt);

struct ResolutionReport {
    bool chain_map = false;  // augmentation commutes with d and the action
    bool acyclic = false;    // cone of the augmentation is acyclic up to the cap
    bool minimal = false;    // differentials land in the augmentation ideal
    bool semifree = false;   // d(g) only involves earlier generators
    std::string detail;
    bool ok() const { return chain_map && acyclic && minimal && semifree; }
};

ResolutionReport verify_resolution(const SemifreeResolution& r);

}  // namespace dgw

#endif
