#pragma once

// Work-item bodies shared by the serial and OpenMP kernels.

#include <cmath>
#include <random>
#include <stdexcept>

#include "endoscopy/haar.hpp"
#include "endoscopy/kernels.hpp"

namespace endoscopy::kernels::detail {

inline std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

inline std::uint64_t chunk_samples(std::uint64_t samples, std::uint32_t chunk)
{
    return samples / kMcChunks + (chunk < samples % kMcChunks ? 1 : 0);
}

// Moments contributed by one RNG chunk of the Monte-Carlo oracle.
inline MomentSums mc_chunk(const EndoDatum& d, const std::vector<WeylAngleSampler>& samplers,
                           std::uint64_t samples, std::uint64_t seed, std::uint32_t chunk)
{
    const auto N = static_cast<std::size_t>(d.rank());
    MomentSums m{std::vector<double>(N, 0.0), std::vector<double>(N, 0.0), 0};
    auto rng = stream_rng(seed, 0x6d63ULL, chunk);
    std::vector<double> angles(N);
    std::vector<double> e(2 * N + 1);
    const auto n_samples = chunk_samples(samples, chunk);
    for (std::uint64_t s = 0; s < n_samples; ++s) {
        std::size_t offset = 0;
        for (int i = 0; i < d.size(); ++i) {
            const auto r = static_cast<std::size_t>(d.block_rank(i));
            samplers[static_cast<std::size_t>(i)].sample(rng, std::span<double>(angles).subspan(offset, r));
            offset += r;
        }
        elementary_symmetric(angles, e);
        for (std::size_t a = 1; a <= N; ++a) {
            const double chi = e[a] - (a >= 2 ? e[a - 2] : 0.0);
            m.sum[a - 1] += chi;
            m.sum_sq[a - 1] += chi * chi;
        }
    }
    m.count = n_samples;
    return m;
}

inline std::vector<WeylAngleSampler> block_samplers(const EndoDatum& d)
{
    std::vector<WeylAngleSampler> out;
    for (int i = 0; i < d.size(); ++i)
        out.emplace_back(d.block_rank(i));
    return out;
}

inline void merge(MomentSums& into, const MomentSums& part)
{
    for (std::size_t a = 0; a < into.sum.size(); ++a) {
        into.sum[a] += part.sum[a];
        into.sum_sq[a] += part.sum_sq[a];
    }
    into.count += part.count;
}

inline void haar_block(const WeylAngleSampler& sampler, std::uint64_t seed, std::uint64_t stream,
                       std::size_t block, std::span<double> out)
{
    const auto n = static_cast<std::size_t>(sampler.rank());
    const std::size_t slots = out.size() / n;
    const std::size_t begin = block * kSatakeBlock;
    const std::size_t end = std::min(slots, begin + kSatakeBlock);
    auto rng = stream_rng(seed, stream, block);
    for (std::size_t slot = begin; slot < end; ++slot)
        sampler.sample(rng, out.subspan(slot * n, n));
}

inline std::size_t haar_block_count(int n, std::size_t values)
{
    if (n < 1 || values % static_cast<std::size_t>(n) != 0)
        throw std::invalid_argument("fill_haar_angles: output is not a whole number of rank-n classes");
    const std::size_t slots = values / static_cast<std::size_t>(n);
    return (slots + kSatakeBlock - 1) / kSatakeBlock;
}

// Every tuple must have the same total rank and r must be defined on it;
// checked up front because exceptions cannot leave a parallel region.
inline void check_tuples(std::span<const WeightedTuple> tuples, const RepLabel& r)
{
    int rank = -1;
    for (const auto& t : tuples) {
        int n = 0;
        for (const auto& b : t.blocks)
            n += b.rank;
        if (rank >= 0 && n != rank)
            throw std::invalid_argument("weighted_trace_terms: tuples of different rank");
        rank = n;
    }
    if (rank >= 0)
        r.check_rank(rank);
}

inline double trace_term(std::uint32_t norm, std::span<const WeightedTuple> tuples, const RepLabel& r,
                         int power, std::size_t slot, std::vector<double>& scratch)
{
    double acc = 0.0;
    for (const auto& t : tuples) {
        scratch.clear();
        for (const auto& b : t.blocks) {
            const auto n = static_cast<std::size_t>(b.rank);
            for (std::size_t j = 0; j < n; ++j)
                scratch.push_back(static_cast<double>(power) * b.angles[slot * n + j]);
        }
        acc += t.weight * character(r, scratch);
    }
    return std::log(static_cast<double>(norm)) * acc;
}

}  // namespace endoscopy::kernels::detail
