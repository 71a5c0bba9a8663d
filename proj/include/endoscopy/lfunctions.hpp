#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "endoscopy/spectrum.hpp"
#include "endoscopy/symplectic_chars.hpp"
#include "endoscopy/trace_formula.hpp"

namespace endoscopy {

/// det(I - r(c) Nw^{-s})^{-1}, split into the finite product over factors
/// with lambda Nw^{-s} != 1 and a count of the factors that vanish (a pole of
/// that order). pole_order == 0 means `value` is the factor itself.
struct LocalFactorValue {
    std::complex<double> value{1.0, 0.0};
    int pole_order = 0;

    bool is_pole() const { return pole_order > 0; }
};

/// Euler factor at one place from the eigenvalue multiset of r(c).
struct LocalLFactor {
    std::uint32_t norm = 0;
    std::vector<std::complex<double>> eigenvalues;

    LocalFactorValue evaluate(std::complex<double> s) const;
    /// log of the factor (sum of -log(1 - lambda Nw^{-s})); requires no pole.
    std::complex<double> log_value(std::complex<double> s) const;
};

LocalFactorValue local_factor(const RepLabel& r, const SemisimpleClass& c, double norm, std::complex<double> s);

/// L^S(s, phi, r) truncated to unramified primes <= prime_bound.
LocalFactorValue partial_L(const RepLabel& r, const SpectrumStore& store, const CuspidalParameter& phi,
                           std::uint32_t prime_bound, std::complex<double> s);

/// log L^S(s, phi, r) truncated as above (sum of local logs).
std::complex<double> log_partial_L(const RepLabel& r, const SpectrumStore& store, const CuspidalParameter& phi,
                                   std::uint32_t prime_bound, std::complex<double> s);

/// Truncated Dirichlet series sum_w sum_{n<=n_max} c(w, n) Nw^{-ns}; for the
/// logarithmic derivative c(w, n) = log Nw tr(r(c_w^n)).
struct PartialSeries {
    std::vector<std::uint32_t> norms;
    int n_max = 0;
    std::vector<double> coeff;  // norms.size() * n_max, (w, n) at [w * n_max + n - 1]

    double at(std::size_t w, int n) const
    {
        return coeff[w * static_cast<std::size_t>(n_max) + static_cast<std::size_t>(n - 1)];
    }
    std::complex<double> evaluate(std::complex<double> s) const;
};

/// Series of -d/ds log L^S(s, phi, r) over unramified primes <= prime_bound.
PartialSeries log_deriv_series(const RepLabel& r, const SpectrumStore& store, const CuspidalParameter& phi,
                               std::uint32_t prime_bound, int n_max);

/// F: the n = 1 terms. E: the n >= 2 terms. Same shape as the input.
std::pair<PartialSeries, PartialSeries> fe_split(const PartialSeries& series);

struct FactorizationReport {
    std::size_t places = 0;
    /// max over primes of |L(Lambda^2 Pi) - prod L(Lambda^2 phi_i) prod L(phi_i x phi_j)| / |L(Lambda^2 Pi)|
    double lambda2_block_error = 0.0;
    /// max relative error of L(Lambda^2 std) = L(r_2) * zeta factor
    double r2_zeta_error = 0.0;
    /// max relative error of L(std, phi) = prod_i L(std, phi_i)
    double std_block_error = 0.0;
    bool passed = false;  // all errors <= 1e-12
};

/// Checks, prime by prime, the factorizations used for r_1 and r_2:
/// Lambda^2 of an isobaric sum, Lambda^2 std = r_2 + 1 and the standard
/// factor of a sum.
FactorizationReport verify_lambda2_factorization(const SpectrumStore& store, const CuspidalParameter& phi,
                                                 std::uint32_t prime_bound, std::complex<double> s);

struct ResidueEstimate {
    double cesaro = 0.0;
    std::int64_t target = 0;
};

/// (1/X) sum_{Nw <= X} log Nw tr((r o rho)(c(phi_H,w))) at X = prime_bound,
/// with the dimension datum it should approach.
ResidueEstimate residue_estimate(const RepLabel& r, const SpectrumStore& store, const StarPrimitiveParameter& phiH,
                                 std::uint32_t prime_bound);

/// The same estimator at every X in an ascending grid.
std::vector<std::pair<double, double>> cesaro_partial_sums(const RepLabel& r, const SpectrumStore& store,
                                                           std::span<const std::size_t> components,
                                                           const std::vector<double>& x_grid);

/// Largest termwise deviation, relative to max(1, |c|), between the literal
/// r-series coefficients and sum_phi 2^{1-k} f^G(phi) c_phi(w, n), where c_phi
/// are the log_deriv_series coefficients of phi.
double r_series_interchange_error(const TestFunction& f, const RepLabel& r, const SpectrumStore& store, int N,
                                  std::uint32_t prime_bound, int n_max);

}  // namespace endoscopy
