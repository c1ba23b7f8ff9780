#include "qelect/analysis.hpp"

#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qelect/core.hpp"
#include "qelect/errors.hpp"
#include "qelect/trials.hpp"

namespace qelect {

namespace {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

BigFloat to_big_float(const BigRational& q) {
    BigFloat num(boost::multiprecision::numerator(q));
    BigFloat den(boost::multiprecision::denominator(q));
    return num / den;
}

}  // namespace

double to_double(const BigRational& q) { return static_cast<double>(to_big_float(q)); }

long double to_long_double(const BigRational& q) {
    return static_cast<long double>(to_big_float(q));
}

AvoidanceProbability exact_avoidance_probability(long long n, long long k) {
    if (n < 2 || !is_power_of_two(n))
        throw NotPowerOfTwo("n must be a power of two >= 2, got " + std::to_string(n));
    if (k < 0) throw NegativeK("k must be nonnegative, got " + std::to_string(k));

    AvoidanceProbability r;
    r.n = n;
    r.k = k;
    r.address_len = log2_exact(n);
    r.defined = k < n - r.address_len;

    if (n - k < r.address_len) {
        r.exact = 0;
    } else {
        r.exact = 1;
        for (int i = 0; i < r.address_len; ++i)
            r.exact *= BigRational(BigInt(n - k - i), BigInt(n - i));
    }
    r.value = to_double(r.exact);
    return r;
}

AsymptoticEstimate stirling_estimate(long long n, long long k) {
    if (n < 2 || !is_power_of_two(n))
        throw NotPowerOfTwo("n must be a power of two >= 2, got " + std::to_string(n));
    if (k < 0) throw NegativeK("k must be nonnegative, got " + std::to_string(k));
    const int L = log2_exact(n);
    if (k >= n - L)
        throw OutOfRange("estimate needs k < n - log2(n): k=" + std::to_string(k) +
                         ", n=" + std::to_string(n));

    AsymptoticEstimate est;
    est.n = n;
    est.k = k;

    const long double nl = static_cast<long double>(n);
    const long double kl = static_cast<long double>(k);
    const long double ll = static_cast<long double>(L);
    const long double log_value = kl * std::log1p(-ll / nl) +
                                  (nl - kl + 0.5L) * std::log1p(-kl / nl) -
                                  (nl - kl - ll + 0.5L) * std::log1p(-kl / (nl - ll));
    const long double value = std::exp(log_value);
    est.value = static_cast<double>(value);

    if (n <= (1LL << 24)) {
        const long double exact = to_long_double(exact_avoidance_probability(n, k).exact);
        est.relative_error_vs_exact = static_cast<double>(std::fabs(value - exact) / exact);
        est.has_exact = true;
    }
    return est;
}

std::vector<AvoidanceProbability> limit_logn_liars(const std::vector<long long>& n_values) {
    std::vector<AvoidanceProbability> out;
    out.reserve(n_values.size());
    for (long long n : n_values) {
        if (n < 2 || !is_power_of_two(n))
            throw NotPowerOfTwo("n must be a power of two >= 2, got " + std::to_string(n));
        out.push_back(exact_avoidance_probability(n, log2_exact(n)));
    }
    return out;
}

std::vector<AvoidanceProbability> limit_overloaded_liars(double c_const,
                                                         const std::vector<long long>& n_values) {
    if (!(c_const > 0.0))
        throw OutOfRange("C must be positive, got " + std::to_string(c_const));
    std::vector<AvoidanceProbability> out;
    out.reserve(n_values.size());
    for (long long n : n_values) {
        if (n < 2 || !is_power_of_two(n))
            throw NotPowerOfTwo("n must be a power of two >= 2, got " + std::to_string(n));
        const int L = log2_exact(n);
        const long long k = std::llround(c_const * static_cast<double>(n) / L);
        if (k >= n - L)
            throw OutOfRange("rounded k=" + std::to_string(k) + " leaves no unbiased slack at n=" +
                             std::to_string(n));
        out.push_back(exact_avoidance_probability(n, k));
    }
    return out;
}

double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0)) throw OutOfRange("gamma shape must be positive");
    if (x < 0.0) throw OutOfRange("gamma argument must be nonnegative");
    if (x == 0.0) return 0.0;

    const double log_prefactor = -x + a * std::log(x) - std::lgamma(a);

    if (x < a + 1.0) {
        double term_denom = a;
        double sum = 1.0 / a;
        double term = sum;
        for (int i = 0; i < 1000; ++i) {
            term_denom += 1.0;
            term *= x / term_denom;
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
        }
        return sum * std::exp(log_prefactor);
    }

    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return 1.0 - std::exp(log_prefactor) * h;
}

double chi_square_critical(int degrees_of_freedom, double alpha) {
    if (degrees_of_freedom < 1) throw OutOfRange("need at least 1 degree of freedom");
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw OutOfRange("alpha must lie in (0,1)");

    const double a = 0.5 * degrees_of_freedom;
    const double target = 1.0 - alpha;
    double lo = 0.0;
    double hi = std::max(1.0, 2.0 * degrees_of_freedom);
    while (regularized_gamma_p(a, 0.5 * hi) < target) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (regularized_gamma_p(a, 0.5 * mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

UniformityReport chi_square_uniform(const std::vector<long long>& counts, double alpha) {
    const std::size_t cells = counts.size();
    if (cells < 2) throw TooFewSamples("uniformity test needs at least 2 cells");
    long long total = 0;
    for (long long c : counts) {
        if (c < 0) throw TooFewSamples("cell counts must be nonnegative");
        total += c;
    }
    if (total < 10 * static_cast<long long>(cells))
        throw TooFewSamples("uniformity test needs at least 10 samples per cell, got " +
                            std::to_string(total) + " for " + std::to_string(cells) + " cells");

    UniformityReport rep;
    rep.cell_counts = counts;
    rep.alpha = alpha;
    rep.degrees_of_freedom = static_cast<int>(cells) - 1;

    const double expected = static_cast<double>(total) / static_cast<double>(cells);
    double statistic = 0.0;
    double tv = 0.0;
    for (long long c : counts) {
        const double diff = static_cast<double>(c) - expected;
        statistic += diff * diff / expected;
        tv += std::fabs(static_cast<double>(c) / static_cast<double>(total) -
                        1.0 / static_cast<double>(cells));
    }
    rep.statistic = statistic;
    rep.tv_distance = 0.5 * tv;
    rep.critical_value = chi_square_critical(rep.degrees_of_freedom, alpha);
    rep.reject_uniform = statistic > rep.critical_value;
    return rep;
}

MonteCarloEstimate monte_carlo_avoidance(long long n, long long k, long long trials,
                                         std::uint64_t master_seed) {
    if (n < 2 || !is_power_of_two(n))
        throw NotPowerOfTwo("n must be a power of two >= 2, got " + std::to_string(n));
    if (k < 0) throw NegativeK("k must be nonnegative, got " + std::to_string(k));
    if (k > n) throw OutOfRange("cannot mark " + std::to_string(k) + " of " + std::to_string(n));
    if (trials < 1) throw TooFewSamples("need at least 1 trial");

    const long long avoided = trials::count_avoided_samples(n, k, trials, master_seed);
    MonteCarloEstimate mc;
    mc.trials = trials;
    mc.estimate = static_cast<double>(avoided) / static_cast<double>(trials);
    mc.std_error = std::sqrt(mc.estimate * (1.0 - mc.estimate) / static_cast<double>(trials));
    return mc;
}

}  // namespace qelect
