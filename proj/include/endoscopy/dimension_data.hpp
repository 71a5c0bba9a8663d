#pragma once

#include <cstdint>
#include <map>
#include <variant>
#include <vector>

#include "endoscopy/endoscopic_data.hpp"

namespace endoscopy {

/// Multiplicity of the trivial representation of H^ in Lambda^a(std) o rho.
///
/// Lambda^a of a direct sum is the sum over a_1 + ... + a_k = a of the
/// tensor products of Lambda^{a_i}(std_{m_i}), and Lambda^b(std) of Sp(m)
/// contains the trivial representation once if b is even (0 <= b <= m) and
/// not at all otherwise. So this counts even compositions of a bounded by the
/// block sizes. Throws std::out_of_range unless 0 <= a <= 2N.
std::int64_t mult_trivial_lambda(const EndoDatum& d, int a);

/// Dimension datum m_(H,rho)(r_a) = dim Hom_H^(1, r_a o rho), 1 <= a <= N.
std::int64_t dim_data(const EndoDatum& d, int a);

/// m_(H,rho)(r_a) for a = 1..N, index a-1.
std::vector<std::int64_t> dim_data_vector(const EndoDatum& d);

struct McEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
};

/// Haar average of char_fund(a, rho(x)) over x in the compact form of H^,
/// which by Schur orthogonality converges to dim_data(d, a). samples counts
/// accepted Haar draws (>= 10^4).
McEstimate mc_dim_data_oracle(const EndoDatum& d, int a, std::uint64_t samples, std::uint64_t seed);

/// Same draws, all a = 1..N at once (index a-1).
std::vector<McEstimate> mc_dim_data_all(const EndoDatum& d, std::uint64_t samples, std::uint64_t seed);

/// Indices a = 2, 4, ..., 2 floor(N/2) used to recover a partition.
std::vector<int> recovery_indices(int N);

/// Returned when the queried dimension data match zero or several data.
struct AmbiguityReport {
    int N = 0;
    std::map<int, std::int64_t> query;
    std::vector<EndoDatum> matches;
};

using RecoveryResult = std::variant<EndoDatum, AmbiguityReport>;

/// Finds the elliptic datum whose dimension data agree with `values` on the
/// recovery indices (brute force over enumerate_elliptic). Keys outside the
/// recovery indices are ignored; a missing key counts as a mismatch.
RecoveryResult recover_partition(int N, const std::map<int, std::int64_t>& values);

}  // namespace endoscopy
