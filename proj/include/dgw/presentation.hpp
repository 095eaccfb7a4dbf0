#ifndef DGW_PRESENTATION_HPP
#define DGW_PRESENTATION_HPP

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dgw/field.hpp"

namespace dgw {

/// (cohomological degree, internal weight). Differentials move by (+1, 0).
struct Bidegree {
    int n = 0;
    int d = 0;

    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
    friend Bidegree operator+(Bidegree a, Bidegree b) { return {a.n + b.n, a.d + b.d}; }
    friend Bidegree operator-(Bidegree a, Bidegree b) { return {a.n - b.n, a.d - b.d}; }
};

std::string to_string(Bidegree b);

using Exponents = std::vector<int>;
/// Polynomial in the generators of one component, keyed by exponent vector.
using Poly = std::map<Exponents, Fp>;

struct GenSpec {
    std::string name;
    Bidegree deg;
    friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

/// One factor of a product ring: a graded-commutative polynomial algebra on
/// bigraded generators modulo monomial relations, with a differential given
/// on generators.
struct ComponentPresentation {
    std::vector<GenSpec> gens;
    std::vector<Exponents> rels;
    std::vector<Poly> diff;  // diff[i] is the differential of gens[i]; empty = 0

    std::optional<std::size_t> find(std::string_view name) const;
    bool is_odd(std::size_t gen) const { return (gens[gen].deg.n & 1) != 0; }

    Bidegree degree_of(const Exponents& e) const;
    int weight_of(const Exponents& e) const { return degree_of(e).d; }
    Exponents unit() const { return Exponents(gens.size(), 0); }

    /// Product of two monomials with its Koszul sign; nullopt when an odd
    /// generator would appear twice. Relations are not applied.
    std::optional<std::pair<Fp, Exponents>> multiply(const Exponents& a, const Exponents& b) const;
    bool is_normal(const Exponents& e) const;  // not divisible by any relation

    Poly multiply(const Poly& a, const Poly& b) const;
    Poly reduce(Poly p) const;  // drop monomials divisible by a relation
    /// Differential of a monomial by the Leibniz rule, optionally reduced.
    Poly differential(const Exponents& e, bool reduced) const;
    Poly differential(const Poly& p, bool reduced) const;

    friend bool operator==(const ComponentPresentation&, const ComponentPresentation&) = default;
};

/// A (DG-)ring: the product of its components.
struct RingPresentation {
    std::string name;
    std::vector<ComponentPresentation> components;

    bool has_differential() const;
    int max_generator_weight() const;
    friend bool operator==(const RingPresentation&, const RingPresentation&) = default;
};

struct ModuleTerm {
    Fp coeff;
    Exponents mono;  // over the component of the generator
    std::size_t gen = 0;
    friend bool operator==(const ModuleTerm&, const ModuleTerm&) = default;
};
using ModuleElement = std::vector<ModuleTerm>;

struct ModuleGen {
    std::string name;
    Bidegree deg;
    std::size_t component = 0;
    friend bool operator==(const ModuleGen&, const ModuleGen&) = default;
};

/// Cokernel presentation of a DG-module over `ring`.
struct ModulePresentation {
    std::string name;
    RingPresentation ring;
    std::vector<ModuleGen> gens;
    std::vector<ModuleElement> rels;
    std::vector<ModuleElement> diff;  // per generator; empty = 0

    std::optional<std::size_t> find(std::string_view name) const;
    friend bool operator==(const ModulePresentation&, const ModulePresentation&) = default;
};

/// Validation shared by the parser and the builtin constructors. Throws
/// InputError naming the offending generator or relation.
void validate(const RingPresentation& r);
void validate(const ModulePresentation& m);

/// Polynomial written as a sum over components. A monomial in generator
/// names denotes the sum of that monomial in every component containing all
/// of its names.
using RingElement = std::vector<Poly>;

RingElement parse_ring_element(const RingPresentation& r, std::string_view text);

// Builtin constructors.

/// Koszul DG-ring: one odd generator e_i of bidegree (-1, w(f_i)) per element,
/// with differential f_i, in every component.
RingPresentation koszul(const RingPresentation& r, const std::vector<RingElement>& elements, std::string name = {});
/// Trivial extension A ⋉ M[1] for an ordinary module M with monomial relations.
RingPresentation trivial_extension(const RingPresentation& r, const ModulePresentation& m, std::string name = {});
/// Induced presentation of H^0 for rings whose degree -1 differentials are monomials.
std::optional<RingPresentation> h0_presentation(const RingPresentation& r, std::string name = {});
/// R/(monomials) on a single generator of bidegree (0,0) per component.
ModulePresentation quotient_module(const RingPresentation& r, const std::vector<RingElement>& ideal, std::string name = {});
/// M[k]: generator degrees move by -k, with the standard signs.
ModulePresentation shift_presentation(const ModulePresentation& m, int k, std::string name = {});
/// Same generators and relations read over a ring containing M's ring's generators.
ModulePresentation extend_scalars(const ModulePresentation& m, const RingPresentation& to, std::string name = {});
/// A module over H^0(to) viewed over `to`: kills the negative-degree generators.
ModulePresentation inflate_presentation(const ModulePresentation& m, const RingPresentation& to, std::string name = {});
/// The free module of rank one.
ModulePresentation free_module(const RingPresentation& r, std::string name = {});

// Text format.

struct Document {
    std::vector<RingPresentation> rings;
    std::vector<ModulePresentation> modules;

    const RingPresentation* ring(std::string_view name) const;
    const ModulePresentation* module(std::string_view name) const;
};

/// Parses the line-oriented presentation language. Throws ParseError with the
/// source position, including for validation failures.
Document parse(std::string_view text);
Document parse_file(const std::string& path);

std::string print(const RingPresentation& r);
std::string print(const ModulePresentation& m);  // ring is referenced by name
std::string print(const Document& doc);

}  // namespace dgw

#endif
