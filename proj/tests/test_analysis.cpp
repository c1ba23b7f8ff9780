#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "qelect/analysis.hpp"
#include "qelect/core.hpp"
#include "qelect/errors.hpp"
#include "qelect/rng.hpp"

using namespace qelect;

namespace {

// C(n, r) over exact integers.
BigInt binomial(long long n, long long r) {
    if (r < 0 || r > n) return 0;
    BigInt num = 1, den = 1;
    for (long long i = 0; i < r; ++i) {
        num *= BigInt(n - i);
        den *= BigInt(i + 1);
    }
    return num / den;
}

// Count L-subsets of [1,n] containing none of the k marked positions, by
// walking all subsets.
long long count_avoiding_subsets(int n, int k, int address_len) {
    std::vector<int> pick(static_cast<std::size_t>(address_len));
    for (int i = 0; i < address_len; ++i) pick[static_cast<std::size_t>(i)] = i + 1;
    long long avoiding = 0;
    while (true) {
        bool clean = true;
        for (int p : pick)
            if (p <= k) clean = false;
        if (clean) ++avoiding;

        int i = address_len - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - (address_len - 1 - i)) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < address_len; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return avoiding;
}

bool close_rel(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace

TEST_CASE("exact avoidance probability at anchor points") {
    CHECK(exact_avoidance_probability(8, 0).exact == BigRational(1));
    CHECK(exact_avoidance_probability(8, 2).exact == BigRational(5, 14));
    CHECK(exact_avoidance_probability(8, 6).exact == BigRational(0));
    CHECK(exact_avoidance_probability(8, 2).value == doctest::Approx(20.0 / 56.0).epsilon(1e-15));
}

TEST_CASE("exact probability equals brute-force subset enumeration") {
    for (int n : {4, 8, 16}) {
        const int address_len = log2_exact(n);
        const BigInt total = binomial(n, address_len);
        for (int k = 0; k <= n; ++k) {
            const AvoidanceProbability p = exact_avoidance_probability(n, k);
            const BigRational expected(BigInt(count_avoiding_subsets(n, k, address_len)), total);
            CHECK(p.exact == expected);
        }
    }
}

TEST_CASE("product form equals the binomial-ratio form") {
    for (int n : {4, 8, 16, 32, 64}) {
        const int address_len = log2_exact(n);
        for (int k = 0; k <= n; ++k) {
            const BigRational ratio(binomial(n - k, address_len), binomial(n, address_len));
            CHECK(exact_avoidance_probability(n, k).exact == ratio);
        }
    }
}

TEST_CASE("probability is monotone in k and bounded") {
    for (int n : {16, 64}) {
        const int address_len = log2_exact(n);
        BigRational previous = 2;
        for (int k = 0; k <= n; ++k) {
            const AvoidanceProbability p = exact_avoidance_probability(n, k);
            CHECK(p.exact >= 0);
            CHECK(p.exact <= 1);
            CHECK(p.exact <= previous);
            if (k > 0 && k <= n - address_len) CHECK(p.exact < previous);
            previous = p.exact;
        }
        CHECK(exact_avoidance_probability(n, 0).exact == 1);
        CHECK(exact_avoidance_probability(n, 1).exact < 1);
    }
}

TEST_CASE("defined flag marks the asymptotic regime") {
    CHECK(exact_avoidance_probability(8, 4).defined);
    const AvoidanceProbability edge = exact_avoidance_probability(8, 5);
    CHECK_FALSE(edge.defined);
    CHECK(edge.exact == BigRational(1, 56));
    CHECK_FALSE(exact_avoidance_probability(8, 6).defined);
}

TEST_CASE("exact probability validates input") {
    CHECK_THROWS_AS(exact_avoidance_probability(6, 1), NotPowerOfTwo);
    CHECK_THROWS_AS(exact_avoidance_probability(1, 0), NotPowerOfTwo);
    CHECK_THROWS_AS(exact_avoidance_probability(8, -1), NegativeK);
}

TEST_CASE("exact values match independently computed references") {
    CHECK(close_rel(exact_avoidance_probability(1024, 10).value, 0.9061301654, 1e-9));
    CHECK(close_rel(exact_avoidance_probability(1024, 100).value, 0.3561566697, 1e-9));
    CHECK(close_rel(exact_avoidance_probability(1 << 20, 20).value, 0.9996185959, 1e-9));
    CHECK(close_rel(exact_avoidance_probability(256, 8).value, 0.7729125026, 1e-9));
}

TEST_CASE("stirling estimate is faithful to the closed form") {
    const AsymptoticEstimate small = stirling_estimate(8, 2);
    CHECK(close_rel(small.value, 0.3598561012, 1e-9));
    CHECK(std::fabs(small.value - 5.0 / 14.0) < 0.01);
    CHECK(small.value != exact_avoidance_probability(8, 2).value);
    CHECK(small.has_exact);

    const AsymptoticEstimate desk = stirling_estimate(1 << 16, 16);
    CHECK(desk.relative_error_vs_exact <= 1e-3);
    CHECK(desk.has_exact);

    CHECK(stirling_estimate(8, 0).value == 1.0);
    CHECK(stirling_estimate(1024, 0).value == 1.0);
}

TEST_CASE("stirling estimate enforces its domain") {
    CHECK_THROWS_AS(stirling_estimate(8, 5), OutOfRange);
    CHECK_THROWS_AS(stirling_estimate(8, 8), OutOfRange);
    CHECK_THROWS_AS(stirling_estimate(6, 1), NotPowerOfTwo);
    CHECK_THROWS_AS(stirling_estimate(8, -1), NegativeK);
    CHECK_NOTHROW(stirling_estimate(8, 4));
}

TEST_CASE("stirling error shrinks as n grows") {
    double previous = 1.0;
    for (long long j : {8, 12, 16, 20}) {
        const AsymptoticEstimate est = stirling_estimate(1LL << j, j);
        REQUIRE(est.has_exact);
        CHECK(est.relative_error_vs_exact <= previous);
        previous = est.relative_error_vs_exact;
    }
}

TEST_CASE("log n liars regime approaches certain avoidance") {
    const auto points = limit_logn_liars({1 << 10, 1 << 20});
    CHECK(points[0].value > 0.9);
    CHECK(points[0].value < 1.0);
    CHECK(points[1].value >= 0.999);
    CHECK(points[1].exact > points[0].exact);

    std::vector<long long> ladder;
    for (int j = 8; j <= 20; ++j) ladder.push_back(1LL << j);
    const auto sequence = limit_logn_liars(ladder);
    for (std::size_t i = 1; i < sequence.size(); ++i)
        CHECK(sequence[i].exact > sequence[i - 1].exact);

    CHECK_THROWS_AS(limit_logn_liars({12}), NotPowerOfTwo);
}

TEST_CASE("overloaded liars regime approaches exp(-C)") {
    const auto c1 = limit_overloaded_liars(1.0, {1 << 20});
    CHECK(c1[0].k == 52429);
    CHECK(std::fabs(c1[0].value - std::exp(-1.0)) <= 0.02);

    const auto c2 = limit_overloaded_liars(2.0, {1 << 20});
    CHECK(std::fabs(c2[0].value - std::exp(-2.0)) <= 0.02);

    const auto near_zero = limit_overloaded_liars(0.01, {1 << 20});
    CHECK(std::fabs(near_zero[0].value - 1.0) <= 0.01);

    CHECK_THROWS_AS(limit_overloaded_liars(0.0, {1 << 20}), OutOfRange);
    CHECK_THROWS_AS(limit_overloaded_liars(0.6, {2}), OutOfRange);
}

TEST_CASE("chi-square critical values match tabulated references") {
    CHECK(close_rel(chi_square_critical(15, 0.001), 37.6972982184, 1e-6));
    CHECK(close_rel(chi_square_critical(7, 0.001), 24.3218863479, 1e-6));
    CHECK(close_rel(chi_square_critical(55, 0.001), 93.1675327722, 1e-6));
    CHECK(close_rel(chi_square_critical(11, 0.001), 31.2641336202, 1e-6));
    CHECK(close_rel(chi_square_critical(1, 0.001), 10.8275661707, 1e-6));
    CHECK(close_rel(chi_square_critical(15, 0.05), 24.9957901397, 1e-6));
    CHECK(close_rel(chi_square_critical(3, 0.01), 11.3448667301, 1e-6));
    CHECK(close_rel(chi_square_critical(1, 0.05), 3.8414588207, 1e-6));
    CHECK_THROWS_AS(chi_square_critical(0, 0.05), OutOfRange);
    CHECK_THROWS_AS(chi_square_critical(3, 0.0), OutOfRange);
    CHECK_THROWS_AS(chi_square_critical(3, 1.0), OutOfRange);
}

TEST_CASE("regularized gamma behaves like a distribution function") {
    CHECK(regularized_gamma_p(0.5, 0.0) == 0.0);
    CHECK(regularized_gamma_p(0.5, 50.0) > 0.999999);
    double previous = 0.0;
    for (double x = 0.1; x < 20.0; x += 0.3) {
        const double p = regularized_gamma_p(2.5, x);
        CHECK(p >= previous);
        CHECK(p <= 1.0);
        previous = p;
    }
    CHECK_THROWS_AS(regularized_gamma_p(0.0, 1.0), OutOfRange);
    CHECK_THROWS_AS(regularized_gamma_p(1.0, -1.0), OutOfRange);
}

TEST_CASE("uniformity test accepts flat counts with zero statistic") {
    const UniformityReport rep = chi_square_uniform({100, 100, 100, 100}, 0.001);
    CHECK(rep.statistic == 0.0);
    CHECK(rep.tv_distance == 0.0);
    CHECK_FALSE(rep.reject_uniform);
    CHECK(rep.degrees_of_freedom == 3);
}

TEST_CASE("uniformity test rejects a point mass") {
    std::vector<long long> counts(16, 0);
    counts[3] = 10000;
    const UniformityReport rep = chi_square_uniform(counts, 0.001);
    CHECK(rep.reject_uniform);
    CHECK(rep.statistic == doctest::Approx(15.0 * 10000.0).epsilon(1e-12));
    CHECK(rep.tv_distance == doctest::Approx(15.0 / 16.0).epsilon(1e-12));
}

TEST_CASE("uniformity test accepts simulated fair data") {
    RandomSource rng = derive_stream(42, "cells");
    std::vector<long long> counts(16, 0);
    for (int i = 0; i < 100000; ++i) ++counts[rng.index_below(16)];
    const UniformityReport rep = chi_square_uniform(counts, 0.001);
    CHECK_FALSE(rep.reject_uniform);
    CHECK(rep.reject_uniform == (rep.statistic > rep.critical_value));
}

TEST_CASE("total variation distance follows its definition") {
    const UniformityReport rep = chi_square_uniform({30, 10}, 0.05);
    CHECK(rep.tv_distance == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("uniformity test rejects undersized input") {
    CHECK_THROWS_AS(chi_square_uniform({100}, 0.001), TooFewSamples);
    CHECK_THROWS_AS(chi_square_uniform({5, 5, 5, 5}, 0.001), TooFewSamples);
    CHECK_THROWS_AS(chi_square_uniform({-1, 50}, 0.001), TooFewSamples);
}

TEST_CASE("monte carlo estimate brackets the exact value") {
    const MonteCarloEstimate small = monte_carlo_avoidance(8, 2, 100000, 42);
    CHECK(std::fabs(small.estimate - 5.0 / 14.0) <= 4.0 * small.std_error);
    CHECK(small.trials == 100000);

    const MonteCarloEstimate big = monte_carlo_avoidance(1024, 10, 100000, 42);
    CHECK(std::fabs(big.estimate - exact_avoidance_probability(1024, 10).value) <=
          4.0 * big.std_error);
}

TEST_CASE("monte carlo with nothing to avoid is exact") {
    const MonteCarloEstimate mc = monte_carlo_avoidance(64, 0, 500, 7);
    CHECK(mc.estimate == 1.0);
    CHECK(mc.std_error == 0.0);
}

TEST_CASE("monte carlo validates input") {
    CHECK_THROWS_AS(monte_carlo_avoidance(8, 2, 0, 1), TooFewSamples);
    CHECK_THROWS_AS(monte_carlo_avoidance(8, 9, 100, 1), OutOfRange);
    CHECK_THROWS_AS(monte_carlo_avoidance(8, -1, 100, 1), NegativeK);
    CHECK_THROWS_AS(monte_carlo_avoidance(6, 1, 100, 1), NotPowerOfTwo);
}

TEST_CASE("rational rendering converts exactly at double precision") {
    CHECK(to_double(BigRational(1, 2)) == 0.5);
    CHECK(to_double(BigRational(5, 14)) == doctest::Approx(0.35714285714285715).epsilon(1e-16));
    CHECK(to_long_double(BigRational(3, 4)) == 0.75L);
}
