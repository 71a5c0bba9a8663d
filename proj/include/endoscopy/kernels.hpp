#pragma once

// Data-parallel inner loops. Each kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::omp; both produce
// bit-identical output because work items are independent and every
// reduction runs in a fixed order after the parallel region. The unqualified
// kernels::* entry points pick the OpenMP version when it is compiled in.

#include <cstdint>
#include <span>
#include <vector>

#include "endoscopy/endoscopic_data.hpp"
#include "endoscopy/symplectic_chars.hpp"

namespace endoscopy::kernels {

/// Number of independent RNG streams the Monte-Carlo oracle is split into.
/// Fixed so results do not depend on the thread count.
inline constexpr std::uint32_t kMcChunks = 64;

/// Satake slots per RNG stream when generating a spectrum.
inline constexpr std::size_t kSatakeBlock = 1024;

/// Running sums of char_fund(a, x) and its square over Haar samples x,
/// for a = 1..N (index a-1).
struct MomentSums {
    std::vector<double> sum;
    std::vector<double> sum_sq;
    std::uint64_t count = 0;
};

/// Per-slot Satake angles of one simple parameter: rank values per slot.
struct BlockAngles {
    std::span<const double> angles;
    int rank = 0;
};

/// One cuspidal (or star-primitive) parameter as its ordered blocks, with
/// the scalar it is weighted by in a trace-formula sum.
struct WeightedTuple {
    std::vector<BlockAngles> blocks;
    double weight = 1.0;
};

/// Pairwise (tree) summation; the order is fixed by the input length only.
double pairwise_sum(std::span<const double> values);

namespace serial {

MomentSums mc_fund_moments(const EndoDatum& d, std::uint64_t samples, std::uint64_t seed);

/// Fills out (slots * n values) with Haar-random USp(2n) angles. The stream
/// id separates independent parameters drawn from the same seed.
void fill_haar_angles(int n, std::uint64_t seed, std::uint64_t stream, std::span<double> out);

/// out[slot] = log(norms[slot]) * sum_t weight_t * tr(r(c_t(slot)^power)).
std::vector<double> weighted_trace_terms(std::span<const std::uint32_t> norms,
                                         std::span<const WeightedTuple> tuples, const RepLabel& r,
                                         int power);

}  // namespace serial

namespace omp {

MomentSums mc_fund_moments(const EndoDatum& d, std::uint64_t samples, std::uint64_t seed);
void fill_haar_angles(int n, std::uint64_t seed, std::uint64_t stream, std::span<double> out);
std::vector<double> weighted_trace_terms(std::span<const std::uint32_t> norms,
                                         std::span<const WeightedTuple> tuples, const RepLabel& r,
                                         int power);

}  // namespace omp

#ifdef ENDOSCOPY_HAVE_OPENMP
using omp::fill_haar_angles;
using omp::mc_fund_moments;
using omp::weighted_trace_terms;
#else
using serial::fill_haar_angles;
using serial::mc_fund_moments;
using serial::weighted_trace_terms;
#endif

/// True when the omp:: kernels actually run multithreaded.
bool openmp_enabled();

}  // namespace endoscopy::kernels
