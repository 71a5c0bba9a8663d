#include "endoscopy/haar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace endoscopy {

std::vector<double> legendre_zeros(int n)
{
    std::vector<double> zeros;
    zeros.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        double x = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pn = n == 0 ? 1.0 : p1;
            const double pn1 = n == 0 ? 0.0 : p0;
            const double dp = n * (x * pn - pn1) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        zeros.push_back(x);
    }
    std::sort(zeros.begin(), zeros.end());
    return zeros;
}

WeylAngleSampler::WeylAngleSampler(int n) : n_(n), envelope_(0.0)
{
    if (n < 1)
        throw std::invalid_argument("WeylAngleSampler: rank must be >= 1");
    std::vector<double> at;
    for (double x : legendre_zeros(n))
        at.push_back(std::acos(x));
    // Slack covers round-off in the location of the maximiser.
    envelope_ = density(at) * (1.0 + 1e-9);
}

double WeylAngleSampler::density(std::span<const double> angles) const
{
    double f = 1.0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const double ci = std::cos(angles[i]);
        const double si = std::sin(angles[i]);
        f *= si * si;
        for (std::size_t j = i + 1; j < angles.size(); ++j) {
            const double d = ci - std::cos(angles[j]);
            f *= d * d;
        }
    }
    return f;
}

}  // namespace endoscopy
