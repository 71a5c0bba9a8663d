#include <doctest.h>

#include <cmath>
#include <random>

#include "endoscopy/lfunctions.hpp"
#include "test_support.hpp"

using namespace endoscopy;
using endoscopy::testing::random_class;

namespace {

SpectrumStore make_store(int N, std::map<int, int> pool, std::uint64_t seed, std::uint32_t bound)
{
    SpectrumConfig c;
    c.N = N;
    c.pool_sizes = std::move(pool);
    c.prime_bound = bound;
    c.seed = seed;
    c.ramified = {3};
    return generate_spectrum(c);
}

}  // namespace

TEST_CASE("local factor against the eigenvalue product")
{
    std::mt19937_64 rng(101);
    const std::complex<double> s{1.3, 2.0};
    for (int trial = 0; trial < 50; ++trial) {
        auto c = random_class(3, rng);
        for (const auto& r : {RepLabel::standard(), RepLabel::fund(2), RepLabel::ext_square()}) {
            auto v = local_factor(r, c, 7.0, s);
            CHECK_FALSE(v.is_pole());
            std::complex<double> det = 1.0;
            for (auto z : rep_eigenvalues(r, c))
                det *= 1.0 - z * std::pow(7.0, -s);
            CHECK(std::abs(v.value * det - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("poles are counted, not divided by")
{
    auto v = local_factor(RepLabel::standard(), SemisimpleClass::identity(2), 5.0, 0.0);
    CHECK(v.pole_order == 4);
    CHECK(v.value == std::complex<double>(1.0, 0.0));
    auto r2 = local_factor(RepLabel::fund(2), SemisimpleClass::identity(2), 5.0, 0.0);
    CHECK(r2.pole_order == 5);
    LocalLFactor lf{5, {1.0}};
    CHECK_THROWS_AS(lf.log_value(0.0), std::domain_error);
}

TEST_CASE("partial L is the product of local factors")
{
    auto store = make_store(2, {{2, 2}, {4, 1}}, 102, 200);
    const CuspidalParameter phi{{0, 1}, 2};
    const std::complex<double> s{2.0, 1.0};
    std::complex<double> product = 1.0;
    for (std::size_t slot = 0; slot < store.slots_up_to(100); ++slot)
        product *= local_factor(RepLabel::fund(2), local_class(store, phi, slot), store.unramified_norms()[slot], s).value;
    auto L = partial_L(RepLabel::fund(2), store, phi, 100, s);
    CHECK(L.pole_order == 0);
    CHECK(std::abs(L.value - product) < 1e-12 * std::abs(product));
    CHECK(std::abs(std::exp(log_partial_L(RepLabel::fund(2), store, phi, 100, s)) - product) < 1e-12 * std::abs(product));
}

TEST_CASE("log-derivative series against finite differences")
{
    auto store = make_store(2, {{2, 2}, {4, 1}}, 103, 500);
    const CuspidalParameter phi{{2}, 2};
    for (const auto& r : {RepLabel::standard(), RepLabel::fund(2)}) {
        auto series = log_deriv_series(r, store, phi, 500, 40);
        CHECK(series.norms.size() == store.slots_up_to(500));
        for (double s : {1.5, 2.0, 3.0}) {
            const double h = 1e-5;
            const auto fd = -(log_partial_L(r, store, phi, 500, s + h) - log_partial_L(r, store, phi, 500, s - h)) /
                            (2.0 * h);
            const auto v = series.evaluate(s);
            CHECK(std::abs(v - fd) < 1e-6 * (1.0 + std::abs(fd)));
        }
    }
    CHECK_THROWS_AS(log_deriv_series(RepLabel::standard(), store, phi, 500, 0), std::invalid_argument);
}

TEST_CASE("fe_split separates n = 1 from n >= 2")
{
    auto store = make_store(1, {{2, 1}}, 104, 200);
    auto series = log_deriv_series(RepLabel::standard(), store, CuspidalParameter{{0}, 1}, 200, 5);
    auto [F, E] = fe_split(series);
    for (std::size_t w = 0; w < series.norms.size(); ++w)
        for (int n = 1; n <= 5; ++n) {
            CHECK(F.at(w, n) + E.at(w, n) == series.at(w, n));
            if (n == 1)
                CHECK(E.at(w, n) == 0.0);
            else
                CHECK(F.at(w, n) == 0.0);
        }
    const std::complex<double> s{1.7, 0.3};
    CHECK(std::abs(F.evaluate(s) + E.evaluate(s) - series.evaluate(s)) < 1e-12);
}

TEST_CASE("Lambda^2 factorization prime by prime")
{
    auto store = make_store(4, {{2, 3}, {4, 2}}, 105, 1000);
    for (const auto& phi : enumerate_phi2(store, 4)) {
        auto rep = verify_lambda2_factorization(store, phi, 1000, {0.8, 3.0});
        CHECK(rep.passed);
        CHECK(rep.places == store.slots_up_to(1000));
    }
}

TEST_CASE("Cesaro residue estimator approaches the dimension datum")
{
    auto store = make_store(2, {{2, 3}}, 106, 50000);
    const StarPrimitiveParameter phiH{EndoDatum({2, 2}), {0, 1}};
    auto est = residue_estimate(RepLabel::fund(2), store, phiH, 50000);
    CHECK(est.target == 1);
    CHECK(std::abs(est.cesaro - 1.0) < 0.3);

    auto sums = cesaro_partial_sums(RepLabel::standard(), store, std::vector<std::size_t>{0, 1}, {1000.0, 50000.0});
    REQUIRE(sums.size() == 2);
    CHECK(std::abs(sums[1].second) < 0.3);
}

TEST_CASE("log of a local factor equals its power series")
{
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 50; ++trial) {
        auto c = random_class(2, rng);
        for (const auto& r : {RepLabel::standard(), RepLabel::fund(2)}) {
            LocalLFactor lf{11, rep_eigenvalues(r, c)};
            std::complex<double> series = 0.0;
            for (int n = 1; n <= 60; ++n)
                series += trace_power(r, c, n) * std::pow(11.0, -2.0 * n) / static_cast<double>(n);
            CHECK(std::abs(lf.log_value(2.0) - series) < 1e-12);
        }
    }
}

TEST_CASE("trivial and identity factors")
{
    std::mt19937_64 rng(108);
    auto c = random_class(3, rng);
    const std::complex<double> s{1.5, 0.7};
    auto zeta = local_factor(RepLabel::lambda_std(0), c, 13.0, s).value;
    CHECK(std::abs(zeta * (1.0 - std::pow(13.0, -s)) - 1.0) < 1e-14);
    auto id = local_factor(RepLabel::standard(), SemisimpleClass::identity(3), 13.0, s).value;
    CHECK(std::abs(id * std::pow(1.0 - std::pow(13.0, -s), 6) - 1.0) < 1e-13);
}

TEST_CASE("log-derivative coefficients are bounded by dim r")
{
    auto store = make_store(3, {{2, 2}, {4, 2}}, 109, 2000);
    for (const auto& phi : enumerate_phi2(store, 3)) {
        auto series = log_deriv_series(RepLabel::fund(2), store, phi, 2000, 4);
        for (std::size_t w = 0; w < series.norms.size(); ++w)
            for (int n = 1; n <= 4; ++n)
                CHECK(std::abs(series.at(w, n)) <= 14.0 * std::log(static_cast<double>(series.norms[w])) + 1e-9);
    }
}

TEST_CASE("r-series coefficients agree with the log-derivative coefficients")
{
    auto store = make_store(3, {{2, 3}, {4, 1}, {6, 1}}, 110, 500);
    auto f = random_test_function(store, 3, 111);
    for (const auto& r : {RepLabel::standard(), RepLabel::fund(2), RepLabel::fund(3)})
        CHECK(r_series_interchange_error(f, r, store, 3, 300, 4) <= 1e-12);
}

TEST_CASE("E stabilises when the prime bound doubles")
{
    // the n = 2 tail beyond X is about 2 / sqrt(X)
    auto store = make_store(2, {{4, 1}}, 112, 2000000);
    const CuspidalParameter phi{{0}, 2};
    auto E = [&](std::uint32_t bound) {
        return fe_split(log_deriv_series(RepLabel::standard(), store, phi, bound, 8)).second.evaluate(0.75);
    };
    CHECK(std::abs(E(1000000) - E(2000000)) < 1e-3);
}
