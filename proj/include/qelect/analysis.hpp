#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qelect {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

double to_double(const BigRational& q);
long double to_long_double(const BigRational& q);

// p(n,k): probability that a uniform L-subset of n vote positions misses
// all k biased ones, L = log2(n). Computed as the exact rational
// prod_{i=0}^{L-1} (n-k-i)/(n-i), which equals C(n-k,L)/C(n,L).
struct AvoidanceProbability {
    long long n = 0;
    long long k = 0;
    int address_len = 0;
    BigRational exact = 0;
    double value = 0.0;
    // k < n - L. Outside that range the product is still well defined (it
    // is 1/C(n,L) at k = n-L and 0 beyond) but the asymptotics do not
    // apply, so callers can tell the regimes apart.
    bool defined = true;
};

AvoidanceProbability exact_avoidance_probability(long long n, long long k);

// The closed-form large-n estimate of p(n,k):
//   (1-L/n)^k (1-k/n)^{n-k+1/2} / (1-k/(n-L))^{n-k-L+1/2}
// evaluated verbatim in extended-precision log domain. relative_error_vs_exact
// compares against the exact rational and is filled for n <= 2^24.
struct AsymptoticEstimate {
    long long n = 0;
    long long k = 0;
    double value = 0.0;
    double relative_error_vs_exact = 0.0;
    bool has_exact = false;
};

AsymptoticEstimate stirling_estimate(long long n, long long k);

// Exact p(n, log2 n) per n: the "k = log n liars" regime whose limit is 1.
std::vector<AvoidanceProbability> limit_logn_liars(const std::vector<long long>& n_values);

// Exact p(n, round(C*n/log2 n)) per n: the overloaded regime whose limit
// is e^{-C}.
std::vector<AvoidanceProbability> limit_overloaded_liars(double c_const,
                                                         const std::vector<long long>& n_values);

struct UniformityReport {
    std::vector<long long> cell_counts;
    double statistic = 0.0;
    int degrees_of_freedom = 0;
    double critical_value = 0.0;
    double alpha = 0.0;
    bool reject_uniform = false;
    // Half the L1 distance between the empirical cell frequencies and the
    // uniform distribution.
    double tv_distance = 0.0;
};

// Pearson chi-square test of the counts against the uniform null.
// Requires >= 2 cells and a total of at least 10 samples per cell.
UniformityReport chi_square_uniform(const std::vector<long long>& counts, double alpha = 0.001);

// P(a,x), the regularized lower incomplete gamma function: power series
// for x < a+1, modified Lentz continued fraction for the upper tail
// otherwise.
double regularized_gamma_p(double a, double x);

// Upper quantile of the chi-square distribution: the x with
// P(X <= x) = 1 - alpha, found by bisection on regularized_gamma_p.
double chi_square_critical(int degrees_of_freedom, double alpha);

struct MonteCarloEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    long long trials = 0;
};

// Empirical p(n,k): repeated independent referee samples against biased
// positions {1..k}, each trial on its own derived substream. std_error is
// the binomial sqrt(p(1-p)/trials).
MonteCarloEstimate monte_carlo_avoidance(long long n, long long k, long long trials,
                                         std::uint64_t master_seed);

}  // namespace qelect
