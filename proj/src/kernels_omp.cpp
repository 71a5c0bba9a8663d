#include "kernels_common.hpp"

#ifdef ENDOSCOPY_HAVE_OPENMP
#include <omp.h>
#endif

namespace endoscopy::kernels {

bool openmp_enabled()
{
#ifdef ENDOSCOPY_HAVE_OPENMP
    return true;
#else
    return false;
#endif
}

namespace omp {

MomentSums mc_fund_moments(const EndoDatum& d, std::uint64_t samples, std::uint64_t seed)
{
    const auto samplers = detail::block_samplers(d);
    std::vector<MomentSums> parts(kMcChunks);
#pragma omp parallel for schedule(dynamic, 1)
    for (int chunk = 0; chunk < static_cast<int>(kMcChunks); ++chunk)
        parts[static_cast<std::size_t>(chunk)] =
            detail::mc_chunk(d, samplers, samples, seed, static_cast<std::uint32_t>(chunk));

    const auto N = static_cast<std::size_t>(d.rank());
    MomentSums total{std::vector<double>(N, 0.0), std::vector<double>(N, 0.0), 0};
    for (const auto& p : parts)
        detail::merge(total, p);
    return total;
}

void fill_haar_angles(int n, std::uint64_t seed, std::uint64_t stream, std::span<double> out)
{
    const WeylAngleSampler sampler(n);
    const auto blocks = static_cast<long>(detail::haar_block_count(n, out.size()));
#pragma omp parallel for schedule(dynamic, 4)
    for (long b = 0; b < blocks; ++b)
        detail::haar_block(sampler, seed, stream, static_cast<std::size_t>(b), out);
}

std::vector<double> weighted_trace_terms(std::span<const std::uint32_t> norms,
                                         std::span<const WeightedTuple> tuples, const RepLabel& r, int power)
{
    detail::check_tuples(tuples, r);
    std::vector<double> out(norms.size());
    const auto slots = static_cast<long>(norms.size());
#pragma omp parallel
    {
        std::vector<double> scratch;
#pragma omp for schedule(static)
        for (long slot = 0; slot < slots; ++slot)
            out[static_cast<std::size_t>(slot)] =
                detail::trace_term(norms[static_cast<std::size_t>(slot)], tuples, r, power,
                                   static_cast<std::size_t>(slot), scratch);
    }
    return out;
}

}  // namespace omp
}  // namespace endoscopy::kernels
