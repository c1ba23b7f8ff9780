#pragma once

#include <cstdint>
#include <vector>

#include "qelect/core.hpp"
#include "qelect/protocol_quantum.hpp"

// Batched trial loops. Every trial runs on its own substream derived from
// the master seed by trial index, so results are independent of execution
// order and thread count: the parallel kernels tally into thread-local
// integers and merge, giving output identical to the serial references.
namespace qelect::trials {

struct ElectionTally {
    std::vector<long long> leader_counts;  // agent i at index i-1
    long long trials = 0;
    long long avoided = 0;  // randomized runs whose sample missed every biased agent
};

ElectionTally run_election_trials(Protocol protocol, const ElectionConfig& base, long long trials);
ElectionTally run_election_trials_serial(Protocol protocol, const ElectionConfig& base,
                                         long long trials);

// How many of the independent referee samples avoided positions {1..k}.
long long count_avoided_samples(long long n, long long k, long long trials, std::uint64_t seed);
long long count_avoided_samples_serial(long long n, long long k, long long trials,
                                       std::uint64_t seed);

// Measurements where some agent saw a different bit than agent 1 on the
// same shared state. Always 0; the count exists so tests assert it.
long long count_correlation_violations(int n, long long trials, std::uint64_t seed);
long long count_correlation_violations_serial(int n, long long trials, std::uint64_t seed);

struct SharedStringTally {
    std::vector<long long> counts;  // 2^L cells keyed by the string's binary value
    long long mismatches = 0;       // agent views that differed from agent 1's
    long long trials = 0;
};

SharedStringTally run_shared_string_trials(int n, long long trials, std::uint64_t seed);
SharedStringTally run_shared_string_trials_serial(int n, long long trials, std::uint64_t seed);

}  // namespace qelect::trials
