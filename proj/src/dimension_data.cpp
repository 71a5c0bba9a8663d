#include "endoscopy/dimension_data.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "endoscopy/kernels.hpp"

namespace endoscopy {

std::int64_t mult_trivial_lambda(const EndoDatum& d, int a)
{
    if (a < 0 || a > 2 * d.rank())
        throw std::out_of_range("mult_trivial_lambda: a=" + std::to_string(a) + " outside [0, 2N]");
    // coefficient of t^a in prod_i (1 + t^2 + ... + t^{m_i})
    std::vector<std::int64_t> poly{1};
    for (int m : d.parts()) {
        std::vector<std::int64_t> next(poly.size() + static_cast<std::size_t>(m), 0);
        for (std::size_t i = 0; i < poly.size(); ++i)
            for (int b = 0; b <= m; b += 2)
                next[i + static_cast<std::size_t>(b)] += poly[i];
        poly = std::move(next);
    }
    return poly[static_cast<std::size_t>(a)];
}

std::int64_t dim_data(const EndoDatum& d, int a)
{
    if (a < 1 || a > d.rank())
        throw std::out_of_range("dim_data: a=" + std::to_string(a) + " outside [1, N]");
    return mult_trivial_lambda(d, a) - (a >= 2 ? mult_trivial_lambda(d, a - 2) : 0);
}

std::vector<std::int64_t> dim_data_vector(const EndoDatum& d)
{
    std::vector<std::int64_t> out;
    for (int a = 1; a <= d.rank(); ++a)
        out.push_back(dim_data(d, a));
    return out;
}

std::vector<McEstimate> mc_dim_data_all(const EndoDatum& d, std::uint64_t samples, std::uint64_t seed)
{
    if (samples < 2)
        throw std::invalid_argument("mc_dim_data_oracle: need at least two samples");
    const auto m = kernels::mc_fund_moments(d, samples, seed);
    std::vector<McEstimate> out;
    const auto count = static_cast<double>(m.count);
    for (std::size_t a = 0; a < m.sum.size(); ++a) {
        const double mean = m.sum[a] / count;
        const double var = std::max(0.0, (m.sum_sq[a] - count * mean * mean) / (count - 1.0));
        out.push_back({mean, std::sqrt(var / count)});
    }
    return out;
}

McEstimate mc_dim_data_oracle(const EndoDatum& d, int a, std::uint64_t samples, std::uint64_t seed)
{
    if (a < 1 || a > d.rank())
        throw std::out_of_range("mc_dim_data_oracle: a outside [1, N]");
    return mc_dim_data_all(d, samples, seed)[static_cast<std::size_t>(a - 1)];
}

std::vector<int> recovery_indices(int N)
{
    std::vector<int> out;
    for (int a = 2; a <= 2 * (N / 2); a += 2)
        out.push_back(a);
    return out;
}

RecoveryResult recover_partition(int N, const std::map<int, std::int64_t>& values)
{
    const auto indices = recovery_indices(N);
    AmbiguityReport report;
    report.N = N;
    for (int a : indices) {
        auto it = values.find(a);
        if (it != values.end())
            report.query[a] = it->second;
    }
    for (const auto& d : enumerate_elliptic(N)) {
        bool match = true;
        for (int a : indices) {
            auto it = values.find(a);
            if (it == values.end() || it->second != dim_data(d, a)) {
                match = false;
                break;
            }
        }
        if (match)
            report.matches.push_back(d);
    }
    if (report.matches.size() == 1)
        return report.matches.front();
    return report;
}

}  // namespace endoscopy
