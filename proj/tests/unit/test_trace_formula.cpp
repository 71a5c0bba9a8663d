#include <doctest.h>

#include <cmath>
#include <random>

#include "endoscopy/trace_formula.hpp"
#include "test_support.hpp"

using namespace endoscopy;
using P = SatakePolynomial;
using endoscopy::testing::random_class;

namespace {

SpectrumStore make_store(int N, std::map<int, int> pool, std::uint64_t seed, std::uint32_t bound = 400)
{
    SpectrumConfig c;
    c.N = N;
    c.pool_sizes = std::move(pool);
    c.prime_bound = bound;
    c.seed = seed;
    c.ramified = {2, 5};
    return generate_spectrum(c);
}

std::map<int, int> rich_pool(int N)
{
    std::map<int, int> pool;
    for (int m = 2; m <= 2 * N; m += 2)
        pool[m] = std::max(1, 5 - m / 2);
    return pool;
}

}  // namespace

TEST_CASE("transferred functions match f^G on composed parameters")
{
    for (int N = 1; N <= 4; ++N) {
        auto store = make_store(N, rich_pool(N), 60 + N);
        auto f = random_test_function(store, N, 100 + N);
        for (const auto& d : enumerate_elliptic(N)) {
            auto fH = transfer(f, d);
            for (const auto& p : enumerate_star_prim(store, d)) {
                const double lhs = eval_fH(fH, store, p);
                const double rhs = eval_fG(f, store, compose(p));
                CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
            }
        }
    }
}

TEST_CASE("decomposition identity holds for random test functions")
{
    for (int N = 1; N <= 4; ++N)
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            auto store = make_store(N, rich_pool(N), 70 + seed);
            auto f = random_test_function(store, N, seed);
            auto rep = verify_decomposition(f, store, N);
            CHECK(rep.passed);
            CHECK(rep.terms.size() == enumerate_elliptic(N).size());
            std::size_t params = 0;
            for (const auto& t : rep.terms)
                params += t.parameters;
            CHECK(params == enumerate_phi2(store, N).size());
        }
}

TEST_CASE("decomposition against a direct regrouping of Phi_2")
{
    // group S_cusp by the degrees of the components and compare with iota * star_p
    auto store = make_store(3, {{2, 3}, {4, 2}, {6, 1}}, 81);
    auto f = random_test_function(store, 3, 82);
    std::map<std::vector<int>, double> by_type;
    for (const auto& phi : enumerate_phi2(store, 3)) {
        std::vector<int> parts;
        for (auto c : phi.components)
            parts.push_back(store.parameter(c).degree);
        std::sort(parts.rbegin(), parts.rend());
        by_type[parts] += phi.weight().value() * eval_fG(f, store, phi);
    }
    for (const auto& d : enumerate_elliptic(3)) {
        const double expected = by_type[std::vector<int>(d.parts().begin(), d.parts().end())];
        CHECK(d.iota().value() * star_p(transfer(f, d), d, store) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("ordered versus unordered star-primitive sums")
{
    auto store = make_store(2, {{2, 3}}, 83);
    auto f = random_test_function(store, 2, 84);
    const EndoDatum d({2, 2});
    auto fH = transfer(f, d);
    const double unordered = star_p(fH, d, store);
    const double ordered = star_p(fH, d, store, FactorOrder::Ordered);
    CHECK(ordered == doctest::Approx(2.0 * unordered).epsilon(1e-12));

    // the full product set P x P also contains the diagonal pairs
    double product = 0.0, diagonal = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const std::vector<std::size_t> comps{i, j};
            const double v = eval_fH(fH, store, comps);
            product += v;
            if (i == j)
                diagonal += v;
        }
    CHECK(product - ordered == doctest::Approx(diagonal).epsilon(1e-12));
    CHECK(std::abs(diagonal) > 1e-6);
}

TEST_CASE("evaluation rejects inconsistent places")
{
    auto store = make_store(2, {{2, 2}, {4, 1}}, 85);
    auto f = random_test_function(store, 2, 86);
    const CuspidalParameter phi{{2}, 2};
    CHECK_NOTHROW(eval_fG(f, store, phi));

    auto missing = f;
    missing.S.erase(5);
    CHECK_THROWS_AS(eval_fG(missing, store, phi), std::invalid_argument);

    auto spherical_at_ramified = f;
    spherical_at_ramified.local.emplace(5, P::variable(1));
    CHECK_THROWS_AS(eval_fG(spherical_at_ramified, store, phi), std::invalid_argument);

    auto beyond = f;
    beyond.local.emplace(1009, P::variable(1));
    CHECK_THROWS_AS(eval_fG(beyond, store, phi), std::invalid_argument);

    CHECK_THROWS_AS(modify(f, RepLabel::standard(), 1, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(eval_fH(f, store, std::vector<std::size_t>{0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(h_r(RepLabel::fund(3), 1, 2), std::out_of_range);
}

TEST_CASE("h_r on H agrees with b(h_r)")
{
    std::mt19937_64 rng(87);
    const RepLabel labels[] = {RepLabel::standard(), RepLabel::fund(2), RepLabel::fund(3), RepLabel::fund(4),
                               RepLabel::lambda_std(3), RepLabel::ext_square(),
                               RepLabel::tensor(RepLabel::standard(), RepLabel::fund(2))};
    for (const auto& d : enumerate_elliptic(4))
        for (const auto& r : labels)
            for (int n = 1; n <= 2; ++n) {
                const auto via_b = h_r(r, n, 4).restrict_to(d);
                const auto direct = h_r_on_H(r, n, d);
                for (int trial = 0; trial < 10; ++trial) {
                    std::vector<SemisimpleClass> blocks;
                    for (int i = 0; i < d.size(); ++i)
                        blocks.push_back(random_class(d.block_rank(i), rng));
                    const double a = via_b.evaluate(blocks);
                    const double b = direct.evaluate(blocks);
                    CHECK(std::abs(a - b) <= 1e-10 * (1.0 + std::abs(a)));
                    CHECK(b == doctest::Approx(trace_power(r, embed_class(d, blocks), n)).epsilon(1e-10));
                }
            }
}

TEST_CASE("transfer commutes with modification")
{
    auto store = make_store(3, rich_pool(3), 88);
    auto f = random_test_function(store, 3, 89);
    const std::uint32_t w = store.unramified_norms()[5];
    for (const auto& d : enumerate_elliptic(3)) {
        auto lhs = transfer(modify(f, RepLabel::fund(2), 2, w, 3), d);
        auto rhs = modify(transfer(f, d), RepLabel::fund(2), 2, w, 3);
        for (const auto& p : enumerate_star_prim(store, d)) {
            const double a = eval_fH(lhs, store, p);
            const double b = eval_fH(rhs, store, p);
            CHECK(std::abs(a - b) <= 1e-10 * (1.0 + std::abs(a)));
        }
    }
}

TEST_CASE("r-limit partial sums match the literal definition")
{
    auto store = make_store(2, {{2, 3}, {4, 2}}, 90, 300);
    auto f = random_test_function(store, 2, 91);
    const std::vector<double> grid{50.0, 120.0, 300.0};
    for (const auto& r : {RepLabel::standard(), RepLabel::fund(2)}) {
        auto sums = r_limit_partial_sums(f, r, store, 2, grid);
        REQUIRE(sums.size() == 3);
        for (std::size_t g = 0; g < grid.size(); ++g) {
            double literal = 0.0;
            for (std::size_t slot = 0; slot < store.slots_up_to(static_cast<std::uint32_t>(grid[g])); ++slot) {
                const auto w = store.unramified_norms()[slot];
                literal += std::log(static_cast<double>(w)) * s_cusp(modify(f, r, 1, w, 2), store, 2);
            }
            literal /= grid[g];
            CHECK(sums[g].second == doctest::Approx(literal).epsilon(1e-10));
        }
    }
    CHECK_THROWS_AS(r_limit_partial_sums(f, RepLabel::standard(), store, 2, {1000.0}), std::out_of_range);
    CHECK_THROWS_AS(r_limit_partial_sums(f, RepLabel::standard(), store, 2, {100.0, 50.0}), std::invalid_argument);
}

TEST_CASE("trivial multiplicities")
{
    CHECK(trivial_multiplicity(RepLabel::standard(), EndoDatum({2, 2})) == 0);
    CHECK(trivial_multiplicity(RepLabel::fund(2), EndoDatum({2, 2, 2})) == 2);
    CHECK(trivial_multiplicity(RepLabel::ext_square(), EndoDatum({2, 2, 2})) == 3);
    CHECK(trivial_multiplicity(RepLabel::lambda_std(4), EndoDatum({4})) == 1);
    CHECK_THROWS_AS(trivial_multiplicity(RepLabel::tensor(RepLabel::standard(), RepLabel::standard()), EndoDatum({4})),
                    std::invalid_argument);
}

TEST_CASE("r-series coefficients against the interchanged sum")
{
    auto store = make_store(2, {{2, 2}, {4, 1}}, 92, 200);
    auto f = random_test_function(store, 2, 93);
    const auto phis = enumerate_phi2(store, 2);
    const auto r = RepLabel::fund(2);
    const int n_max = 3;
    auto c = r_series_coefficients(f, r, store, 2, 60, n_max);
    CHECK(c.norms.size() == store.slots_up_to(60));
    for (std::size_t w = 0; w < c.norms.size(); ++w)
        for (int n = 1; n <= n_max; ++n) {
            double expected = 0.0;
            for (const auto& phi : phis)
                expected += phi.weight().value() * eval_fG(f, store, phi) *
                            trace_power(r, local_class(store, phi, w), n);
            expected *= std::log(static_cast<double>(c.norms[w]));
            CHECK(c.at(w, n) == doctest::Approx(expected).epsilon(1e-10));
        }
    const std::complex<double> s{2.0, 0.5};
    std::complex<double> manual = 0.0;
    for (std::size_t w = 0; w < c.norms.size(); ++w)
        for (int n = 1; n <= n_max; ++n)
            manual += c.at(w, n) * std::pow(static_cast<double>(c.norms[w]), -static_cast<double>(n) * s);
    CHECK(std::abs(c.evaluate(s) - manual) < 1e-12 * (1.0 + std::abs(manual)));
}
