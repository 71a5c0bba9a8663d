#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "endoscopy/endoscopic_data.hpp"
#include "endoscopy/satake_polynomial.hpp"
#include "endoscopy/spectrum.hpp"

namespace endoscopy {

/// A factorizable test function f = prod'_v f_v, represented by its stable
/// characters. Places are identified by their norm (a prime).
///
/// At the finitely many places in `local` f_v is spherical with the given
/// Satake polynomial; every other unramified place carries the unit. At a
/// place in S the stable character values are free data, looked up by the
/// parameter label (missing entries count as 1).
///
/// A function on H (the transfer of a function on G) carries its datum and
/// polynomials in per-block variables.
struct TestFunction {
    std::set<std::uint32_t> S;
    std::map<std::uint32_t, SatakePolynomial> local;
    std::map<std::uint32_t, std::map<std::string, double>> ramified_values;
    std::optional<EndoDatum> datum;  // unset: a function on G itself
};

/// f^G(phi) = prod_v f_v^G(phi_v). Throws std::invalid_argument if f has a
/// spherical component at a place where the store is ramified (phi must be
/// unramified outside S).
double eval_fG(const TestFunction& f, const SpectrumStore& store, const CuspidalParameter& phi);

/// f'^H(phi_H) for a function on H and any component tuple on its blocks.
double eval_fH(const TestFunction& fH, const SpectrumStore& store, std::span<const std::size_t> components);
double eval_fH(const TestFunction& fH, const SpectrumStore& store, const StarPrimitiveParameter& phiH);

/// Stable transfer f -> f^H: b applied at every spherical place, ramified
/// values carried over (their defining property is f^H(phi_H) = f^G(rho o phi_H)).
TestFunction transfer(const TestFunction& f, const EndoDatum& d);

/// The polynomial h^r_w with index n; throws std::out_of_range if r is not a
/// representation of Sp(2N).
SatakePolynomial h_r(const RepLabel& r, int n, int N);

/// The H-side function h^{r o rho}_w built directly on H: it multiplies out
/// the block decomposition of Lambda^a of a direct sum instead of going
/// through b.
SatakePolynomial h_r_on_H(const RepLabel& r, int n, const EndoDatum& d);

/// n f^{r,w}: the component at w is multiplied by h^r_w with index n.
/// Throws std::invalid_argument if w is in S.
TestFunction modify(const TestFunction& f, const RepLabel& r, int n, std::uint32_t w, int N);

/// S_cusp(f) = sum_{phi in Phi_2(G)} 2^{1-k} f^G(phi).
double s_cusp(const TestFunction& f, const SpectrumStore& store, int N);

/// *P^H(f') = sum over Phi_*prim(H) of f'^H(phi_H).
double star_p(const TestFunction& fH, const EndoDatum& d, const SpectrumStore& store,
              FactorOrder order = FactorOrder::Unordered);

struct DecompositionTerm {
    EndoDatum datum;
    Rational iota;
    double star_p = 0.0;
    std::size_t parameters = 0;
};

struct DecompositionReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_diff = 0.0;
    double tolerance = 0.0;  // 1e-10 (1 + |lhs|)
    bool passed = false;
    std::vector<DecompositionTerm> terms;
};

/// Compares S_cusp(f) with sum_{(H,rho)} iota(G,H) *P^H(f^H).
DecompositionReport verify_decomposition(const TestFunction& f, const SpectrumStore& store, int N);

/// (1/X) sum_{Nw <= X, w not in S} log Nw * S_cusp(f^{r,w}) for each X in
/// the grid (ascending). Computed by summing over phi first:
/// S_cusp(f^{r,w}) = sum_phi 2^{1-k} f^G(phi) tr(r(c(phi_w))).
/// Throws std::out_of_range if a grid point exceeds the store's prime bound.
std::vector<std::pair<double, double>> r_limit_partial_sums(const TestFunction& f, const RepLabel& r,
                                                            const SpectrumStore& store, int N,
                                                            const std::vector<double>& x_grid);

/// sum_{(H,rho)} iota(G,H) m_(H,rho)(r) *P^H(f^H): the value the partial sums
/// should approach. Defined for r = std, fund(a), lambda(a), ext2.
double r_limit_prediction(const TestFunction& f, const RepLabel& r, const SpectrumStore& store, int N);

/// Trivial multiplicity m_(H,rho)(r) for the supported labels.
std::int64_t trivial_multiplicity(const RepLabel& r, const EndoDatum& d);

/// Coefficient table of the Dirichlet series
///   sum_{w not in S} sum_{n>=1} log Nw Nw^{-ns} S_cusp(n f^{r,w}),
/// computed literally: one S_cusp evaluation per (w, n).
struct DirichletCoefficients {
    std::vector<std::uint32_t> norms;  // unramified primes up to the bound
    int n_max = 0;
    std::vector<double> values;  // norms.size() * n_max, (w, n) at [w * n_max + n - 1]

    double at(std::size_t w, int n) const { return values[w * static_cast<std::size_t>(n_max) + static_cast<std::size_t>(n - 1)]; }
    std::complex<double> evaluate(std::complex<double> s) const;
};

DirichletCoefficients r_series_coefficients(const TestFunction& f, const RepLabel& r, const SpectrumStore& store,
                                            int N, std::uint32_t prime_bound, int n_max);

/// The truncated series at s, over every unramified prime in the store.
std::complex<double> r_series(const TestFunction& f, const RepLabel& r, const SpectrumStore& store, int N,
                              std::complex<double> s, int n_max);

/// A seeded random test function: a few spherical places among the first
/// unramified primes with random polynomials of trace depth <= 3, plus
/// random stable-character values at the store's ramified places for every
/// parameter in Phi_2(G).
TestFunction random_test_function(const SpectrumStore& store, int N, std::uint64_t seed, int spherical_places = 3);

}  // namespace endoscopy
