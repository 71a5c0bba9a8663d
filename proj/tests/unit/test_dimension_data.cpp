#include <doctest.h>

#include <functional>

#include "endoscopy/dimension_data.hpp"

using namespace endoscopy;

namespace {

// Counts (a_1..a_k), each even with 0 <= a_i <= m_i, summing to a.
std::int64_t brute_even_compositions(const EndoDatum& d, int a)
{
    std::int64_t count = 0;
    std::function<void(int, int)> rec = [&](int block, int remaining) {
        if (block == d.size()) {
            count += remaining == 0 ? 1 : 0;
            return;
        }
        for (int b = 0; b <= d.parts()[static_cast<std::size_t>(block)]; b += 2)
            rec(block + 1, remaining - b);
    };
    rec(0, a);
    return count;
}

}  // namespace

TEST_CASE("mult_trivial_lambda")
{
    for (int N = 1; N <= 7; ++N)
        for (const auto& d : enumerate_elliptic(N)) {
            CHECK(mult_trivial_lambda(d, 0) == 1);
            CHECK(mult_trivial_lambda(d, 2) == d.size());
            for (int a = 0; a <= 2 * N; ++a) {
                CHECK(mult_trivial_lambda(d, a) == brute_even_compositions(d, a));
                if (a % 2 == 1)
                    CHECK(mult_trivial_lambda(d, a) == 0);
            }
        }
    CHECK_THROWS_AS(mult_trivial_lambda(EndoDatum({4}), -1), std::out_of_range);
    CHECK_THROWS_AS(mult_trivial_lambda(EndoDatum({4}), 5), std::out_of_range);
}

TEST_CASE("dim_data examples")
{
    CHECK(dim_data(EndoDatum({2, 2, 2}), 2) == 2);
    CHECK(dim_data(EndoDatum({4, 2}), 1) == 0);
    // (4,0),(2,2),(0,4) minus (2,0),(0,2)
    CHECK(dim_data(EndoDatum({4, 4}), 4) == 1);
    CHECK(dim_data(EndoDatum({6, 2}), 4) == 0);
    CHECK_THROWS_AS(dim_data(EndoDatum({4, 2}), 4), std::out_of_range);
    CHECK_THROWS_AS(dim_data(EndoDatum({4, 2}), 0), std::out_of_range);
}

TEST_CASE("dim_data invariants for N <= 10")
{
    for (int N = 1; N <= 10; ++N)
        for (const auto& d : enumerate_elliptic(N)) {
            auto v = dim_data_vector(d);
            for (int a = 1; a <= N; ++a) {
                CHECK(v[static_cast<std::size_t>(a - 1)] >= 0);
                if (a % 2 == 1)
                    CHECK(v[static_cast<std::size_t>(a - 1)] == 0);
                if (d.size() == 1)
                    CHECK(v[static_cast<std::size_t>(a - 1)] == 0);
            }
            if (N >= 2)
                CHECK(v[1] == d.size() - 1);
        }
}

TEST_CASE("Monte-Carlo oracle small cases")
{
    const std::uint64_t samples = 200000;
    auto whole = mc_dim_data_oracle(EndoDatum({4}), 2, samples, 41);
    CHECK(std::abs(whole.estimate - 0.0) < 3.5 * whole.stderr_);
    auto pair = mc_dim_data_oracle(EndoDatum({2, 2}), 2, samples, 42);
    CHECK(std::abs(pair.estimate - 1.0) < 3.5 * pair.stderr_);
    auto odd = mc_dim_data_oracle(EndoDatum({4, 2}), 1, samples, 43);
    CHECK(std::abs(odd.estimate) < 3.5 * odd.stderr_);
    CHECK(pair.stderr_ > 0.0);

    auto all = mc_dim_data_all(EndoDatum({4, 4}), samples, 44);
    REQUIRE(all.size() == 4);
    CHECK(std::abs(all[3].estimate - 1.0) < 3.5 * all[3].stderr_);

    // deterministic in the seed
    auto again = mc_dim_data_oracle(EndoDatum({2, 2}), 2, samples, 42);
    CHECK(again.estimate == pair.estimate);
}

TEST_CASE("recover_partition")
{
    auto r4 = recover_partition(2, {{2, 0}});
    REQUIRE(std::holds_alternative<EndoDatum>(r4));
    CHECK(std::get<EndoDatum>(r4).str() == "[4]");
    auto r22 = recover_partition(2, {{2, 1}});
    REQUIRE(std::holds_alternative<EndoDatum>(r22));
    CHECK(std::get<EndoDatum>(r22).str() == "[2,2]");

    auto none = recover_partition(2, {{2, 7}});
    REQUIRE(std::holds_alternative<AmbiguityReport>(none));
    CHECK(std::get<AmbiguityReport>(none).matches.empty());

    // an incomplete query matches nothing
    auto partial = recover_partition(4, {{2, 1}});
    REQUIRE(std::holds_alternative<AmbiguityReport>(partial));
    CHECK(std::get<AmbiguityReport>(partial).matches.size() == 0);

    CHECK(recovery_indices(1).empty());
    CHECK(recovery_indices(5) == std::vector<int>{2, 4});
}

TEST_CASE("recover_partition round-trips for N <= 8")
{
    for (int N = 1; N <= 8; ++N)
        for (const auto& d : enumerate_elliptic(N)) {
            std::map<int, std::int64_t> v;
            for (int a : recovery_indices(N))
                v[a] = dim_data(d, a);
            auto r = recover_partition(N, v);
            REQUIRE(std::holds_alternative<EndoDatum>(r));
            CHECK(std::get<EndoDatum>(r) == d);
        }
}
