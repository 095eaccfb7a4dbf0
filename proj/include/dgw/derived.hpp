#ifndef DGW_DERIVED_HPP
#define DGW_DERIVED_HPP

#include <optional>

#include "dgw/dimtable.hpp"
#include "dgw/module.hpp"
#include "dgw/resolve.hpp"

namespace dgw {

/// Hom_A(F, N) at one internal weight w: a map of degree k is determined by
/// its values f(g) in N(n_g + k, d_g + w), taken in the component of g.
class HomComplex {
public:
    HomComplex(const SemifreeResolution& f, const DGModule& n, int weight);

    std::size_t dim(int k) const;
    /// Differential Hom^k -> Hom^{k+1}.
    Matrix diff(int k) const;
    /// Hom^k is exactly known: every generator that can contribute was found
    /// and its target space is known.
    bool certified(int k) const;
    /// Hom^k needs N above its known weights; such degrees are left out of
    /// the table rather than reported as uncertified.
    bool beyond_window(int k) const;

    struct Block {
        std::size_t gen;
        Bidegree target;                  // bidegree in N
        std::vector<std::size_t> coords;  // coordinates of N(target) in the generator's component
        std::size_t offset;
    };
    const std::vector<Block>& blocks(int k) const;

private:
    const SemifreeResolution& f_;
    const DGModule& n_;
    int w_;
    mutable std::map<int, std::vector<Block>> blocks_;
    std::vector<std::vector<std::pair<std::size_t, FreeTerm>>> users_;  // per h: (g, term of d(g) on h)
};

/// F (x)_A N at one weight: basis g (x) v with v in N(k - n_g, w - d_g).
class TensorComplex {
public:
    TensorComplex(const SemifreeResolution& f, const DGModule& n, int weight);

    std::size_t dim(int k) const;
    Matrix diff(int k) const;
    bool certified(int k) const;
    bool beyond_window(int k) const;

    struct Block {
        std::size_t gen;
        Bidegree source;  // bidegree in N
        std::vector<std::size_t> coords;
        std::size_t offset;
    };
    const std::vector<Block>& blocks(int k) const;

private:
    const SemifreeResolution& f_;
    const DGModule& n_;
    int w_;
    mutable std::map<int, std::vector<Block>> blocks_;
};

/// Cohomology of RHom(M, N) with M given by its resolution; rows are
/// cohomological degrees of the window, columns internal weights.
DimTable rhom_table(const SemifreeResolution& f, const DGModule& n, const Window& w);
/// Cohomology of M (x)^L N, same layout.
DimTable ltensor_table(const SemifreeResolution& f, const DGModule& n, const Window& w);

DimTable rhom(const DGModule& m, const DGModule& n, const Window& w, std::optional<int> band = std::nullopt);
DimTable ltensor(const DGModule& m, const DGModule& n, const Window& w, std::optional<int> band = std::nullopt);

/// Ext^n = H^n(RHom(M, N)).
DimTable ext_table(const DGModule& m, const DGModule& n, const Window& w, std::optional<int> band = std::nullopt);
/// Tor_n = H^{-n}(M (x)^L N); rows are indexed by n.
DimTable tor_table(const DGModule& m, const DGModule& n, const Window& w, std::optional<int> band = std::nullopt);

/// H^0(A) viewed as an A-module through A -> H^0(A).
DGModule h0_module(const AlgebraPtr& a);
/// F(M) = H^0(A) (x)^L_A M.
DimTable reduction_F(const DGModule& m, const Window& w, std::optional<int> band = std::nullopt);
/// G(M) = RHom_A(H^0(A), M).
DimTable coreduction_G(const DGModule& m, const Window& w, std::optional<int> band = std::nullopt);

/// Hom_A(F, N) as an A-module on the weights where it can be formed;
/// bidegrees that are not exactly known are listed in `unknown`.
DGModule rhom_module(const SemifreeResolution& f, const DGModule& n, const Window& w);

}  // namespace dgw

#endif
