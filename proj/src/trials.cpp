#include "qelect/trials.hpp"

#include <string>

#include "qelect/entanglement.hpp"
#include "qelect/errors.hpp"
#include "qelect/protocol_random.hpp"
#include "qelect/rng.hpp"

namespace qelect::trials {

namespace {

void check_trials(long long trials) {
    if (trials < 1) throw TooFewSamples("need at least 1 trial, got " + std::to_string(trials));
}

struct ElectionStep {
    int leader = 0;
    bool avoided = false;
};

ElectionStep one_election(Protocol protocol, const ElectionConfig& base, long long t) {
    const ElectionConfig cfg = with_seed(base, derive_seed(base.master_seed, t));
    const ElectionOutcome out =
        protocol == Protocol::Quantum ? run_protocol_one(cfg) : run_protocol_two(cfg);
    return {out.leader.index,
            protocol == Protocol::Randomized && !out.touched_biased};
}

bool sample_avoids(long long n, long long k, std::uint64_t trial_seed) {
    RandomSource rng(trial_seed, "sample");
    const SampleSelection selection = referee_sample(static_cast<int>(n), log2_exact(n), rng);
    for (int pos : selection.positions)
        if (pos <= k) return false;
    return true;
}

long long violations_in_registry(int n, std::uint64_t trial_seed) {
    EbitRegistry reg = create_registry(n, trial_seed);
    long long bad = 0;
    const int address_len = log2_exact(n);
    for (int k = 1; k <= address_len; ++k) {
        const int reference = measure(reg, AgentId{1}, k);
        for (int i = 2; i <= n; ++i)
            if (measure(reg, AgentId{i}, k) != reference) ++bad;
    }
    return bad;
}

struct SharedStringStep {
    std::size_t cell = 0;
    long long mismatches = 0;
};

SharedStringStep one_shared_string(int n, std::uint64_t trial_seed) {
    EbitRegistry reg = create_registry(n, trial_seed);
    const std::string reference = shared_random_string(reg, AgentId{1});
    SharedStringStep step;
    for (int i = 2; i <= n; ++i)
        if (shared_random_string(reg, AgentId{i}) != reference) ++step.mismatches;
    for (char c : reference) step.cell = step.cell * 2 + static_cast<std::size_t>(c - '0');
    return step;
}

}  // namespace

ElectionTally run_election_trials(Protocol protocol, const ElectionConfig& base,
                                  long long trials) {
    check_trials(trials);
    ElectionTally tally;
    tally.leader_counts.assign(static_cast<std::size_t>(base.n), 0);
    tally.trials = trials;
#pragma omp parallel
    {
        std::vector<long long> local(static_cast<std::size_t>(base.n), 0);
        long long local_avoided = 0;
#pragma omp for schedule(static)
        for (long long t = 0; t < trials; ++t) {
            const ElectionStep step = one_election(protocol, base, t);
            ++local[static_cast<std::size_t>(step.leader - 1)];
            if (step.avoided) ++local_avoided;
        }
#pragma omp critical
        {
            for (std::size_t i = 0; i < local.size(); ++i) tally.leader_counts[i] += local[i];
            tally.avoided += local_avoided;
        }
    }
    return tally;
}

ElectionTally run_election_trials_serial(Protocol protocol, const ElectionConfig& base,
                                         long long trials) {
    check_trials(trials);
    ElectionTally tally;
    tally.leader_counts.assign(static_cast<std::size_t>(base.n), 0);
    tally.trials = trials;
    for (long long t = 0; t < trials; ++t) {
        const ElectionStep step = one_election(protocol, base, t);
        ++tally.leader_counts[static_cast<std::size_t>(step.leader - 1)];
        if (step.avoided) ++tally.avoided;
    }
    return tally;
}

long long count_avoided_samples(long long n, long long k, long long trials, std::uint64_t seed) {
    check_trials(trials);
    long long avoided = 0;
#pragma omp parallel for schedule(static) reduction(+ : avoided)
    for (long long t = 0; t < trials; ++t)
        if (sample_avoids(n, k, derive_seed(seed, t))) ++avoided;
    return avoided;
}

long long count_avoided_samples_serial(long long n, long long k, long long trials,
                                       std::uint64_t seed) {
    check_trials(trials);
    long long avoided = 0;
    for (long long t = 0; t < trials; ++t)
        if (sample_avoids(n, k, derive_seed(seed, t))) ++avoided;
    return avoided;
}

long long count_correlation_violations(int n, long long trials, std::uint64_t seed) {
    check_trials(trials);
    long long bad = 0;
#pragma omp parallel for schedule(static) reduction(+ : bad)
    for (long long t = 0; t < trials; ++t) bad += violations_in_registry(n, derive_seed(seed, t));
    return bad;
}

long long count_correlation_violations_serial(int n, long long trials, std::uint64_t seed) {
    check_trials(trials);
    long long bad = 0;
    for (long long t = 0; t < trials; ++t) bad += violations_in_registry(n, derive_seed(seed, t));
    return bad;
}

SharedStringTally run_shared_string_trials(int n, long long trials, std::uint64_t seed) {
    check_trials(trials);
    SharedStringTally tally;
    tally.counts.assign(static_cast<std::size_t>(n), 0);
    tally.trials = trials;
#pragma omp parallel
    {
        std::vector<long long> local(static_cast<std::size_t>(n), 0);
        long long local_mismatches = 0;
#pragma omp for schedule(static)
        for (long long t = 0; t < trials; ++t) {
            const SharedStringStep step = one_shared_string(n, derive_seed(seed, t));
            ++local[step.cell];
            local_mismatches += step.mismatches;
        }
#pragma omp critical
        {
            for (std::size_t i = 0; i < local.size(); ++i) tally.counts[i] += local[i];
            tally.mismatches += local_mismatches;
        }
    }
    return tally;
}

SharedStringTally run_shared_string_trials_serial(int n, long long trials, std::uint64_t seed) {
    check_trials(trials);
    SharedStringTally tally;
    tally.counts.assign(static_cast<std::size_t>(n), 0);
    tally.trials = trials;
    for (long long t = 0; t < trials; ++t) {
        const SharedStringStep step = one_shared_string(n, derive_seed(seed, t));
        ++tally.counts[step.cell];
        tally.mismatches += step.mismatches;
    }
    return tally;
}

}  // namespace qelect::trials
