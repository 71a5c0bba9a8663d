#include "kernels_common.hpp"

namespace endoscopy::kernels {

double pairwise_sum(std::span<const double> values)
{
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values)
            s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace serial {

MomentSums mc_fund_moments(const EndoDatum& d, std::uint64_t samples, std::uint64_t seed)
{
    const auto samplers = detail::block_samplers(d);
    const auto N = static_cast<std::size_t>(d.rank());
    MomentSums total{std::vector<double>(N, 0.0), std::vector<double>(N, 0.0), 0};
    for (std::uint32_t chunk = 0; chunk < kMcChunks; ++chunk)
        detail::merge(total, detail::mc_chunk(d, samplers, samples, seed, chunk));
    return total;
}

void fill_haar_angles(int n, std::uint64_t seed, std::uint64_t stream, std::span<double> out)
{
    const WeylAngleSampler sampler(n);
    const auto blocks = detail::haar_block_count(n, out.size());
    for (std::size_t b = 0; b < blocks; ++b)
        detail::haar_block(sampler, seed, stream, b, out);
}

std::vector<double> weighted_trace_terms(std::span<const std::uint32_t> norms,
                                         std::span<const WeightedTuple> tuples, const RepLabel& r, int power)
{
    detail::check_tuples(tuples, r);
    std::vector<double> out(norms.size());
    std::vector<double> scratch;
    for (std::size_t slot = 0; slot < norms.size(); ++slot)
        out[slot] = detail::trace_term(norms[slot], tuples, r, power, slot, scratch);
    return out;
}

}  // namespace serial
}  // namespace endoscopy::kernels
