#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "endoscopy/haar.hpp"
#include "endoscopy/symplectic_chars.hpp"

using namespace endoscopy;

TEST_CASE("legendre zeros")
{
    auto z = legendre_zeros(2);
    REQUIRE(z.size() == 2);
    CHECK(z[0] == doctest::Approx(-1.0 / std::sqrt(3.0)));
    CHECK(z[1] == doctest::Approx(1.0 / std::sqrt(3.0)));
    auto z3 = legendre_zeros(3);
    CHECK(z3[1] == doctest::Approx(0.0));
    CHECK(z3[2] == doctest::Approx(std::sqrt(3.0 / 5.0)));
}

TEST_CASE("the envelope bounds the Weyl density")
{
    std::mt19937_64 rng(31);
    for (int n = 1; n <= 5; ++n) {
        WeylAngleSampler s(n);
        std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
        std::vector<double> a(static_cast<std::size_t>(n));
        double worst = 0.0;
        for (int trial = 0; trial < 200000; ++trial) {
            for (double& t : a)
                t = angle(rng);
            worst = std::max(worst, s.density(a));
        }
        CHECK(worst <= s.envelope());
        CHECK(worst > 0.2 * s.envelope());
    }
    CHECK(WeylAngleSampler(1).envelope() == doctest::Approx(1.0));
}

TEST_CASE("Haar samples satisfy Schur orthogonality for std")
{
    // E[tr std] = 0 and E[(tr std)^2] = 1 on USp(2n)
    std::mt19937_64 rng(32);
    for (int n = 1; n <= 4; ++n) {
        WeylAngleSampler s(n);
        std::vector<double> a(static_cast<std::size_t>(n));
        const int samples = 200000;
        double m1 = 0.0, m2 = 0.0;
        for (int i = 0; i < samples; ++i) {
            s.sample(rng, a);
            const double t = std_power_sum(a, 1);
            m1 += t;
            m2 += t * t;
        }
        m1 /= samples;
        m2 /= samples;
        CHECK(std::abs(m1) < 0.02);
        CHECK(std::abs(m2 - 1.0) < 0.03);
    }
}

TEST_CASE("Sato-Tate moments for USp(2)")
{
    // tr = 2 cos t with density (2/pi) sin^2 t: E[tr^4] = 2 (Catalan number C_2)
    std::mt19937_64 rng(33);
    WeylAngleSampler s(1);
    double m4 = 0.0;
    const int samples = 400000;
    std::vector<double> a(1);
    for (int i = 0; i < samples; ++i) {
        s.sample(rng, a);
        m4 += std::pow(2.0 * std::cos(a[0]), 4);
    }
    CHECK(m4 / samples == doctest::Approx(2.0).epsilon(0.02));
}
