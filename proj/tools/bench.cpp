#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qelect/core.hpp"
#include "qelect/protocol_quantum.hpp"
#include "qelect/trials.hpp"

using namespace qelect;

namespace {

template <typename F>
double time_ms(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

ElectionConfig make_bench_config(int n, int biased, std::uint64_t seed) {
    std::vector<AgentBehavior> behaviors(static_cast<std::size_t>(n), AgentBehavior::honest());
    for (int i = 0; i < biased; ++i)
        behaviors[static_cast<std::size_t>(i)] = AgentBehavior::biased(1.0);
    return make_config(n, AgentId{1}, std::move(behaviors), seed);
}

int report(const char* name, long long trials, double serial_ms, double parallel_ms,
           bool match) {
    std::printf("%-34s %9lld %12.1f %12.1f %9.2fx   %s\n", name, trials, serial_ms, parallel_ms,
                serial_ms / parallel_ms, match ? "ok" : "MISMATCH");
    return match ? 0 : 1;
}

}  // namespace

int main() {
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("trial kernels, serial reference vs OpenMP (%d threads)\n\n", threads);
    std::printf("%-34s %9s %12s %12s %10s   %s\n", "kernel", "trials", "serial_ms",
                "parallel_ms", "speedup", "tallies");

    int failures = 0;

    {
        const long long trials = 100000;
        const ElectionConfig cfg = make_bench_config(16, 0, 42);
        trials::ElectionTally serial, parallel;
        const double ts =
            time_ms([&] { serial = trials::run_election_trials_serial(Protocol::Quantum, cfg, trials); });
        const double tp =
            time_ms([&] { parallel = trials::run_election_trials(Protocol::Quantum, cfg, trials); });
        failures += report("elections quantum n=16", trials, ts, tp,
                           serial.leader_counts == parallel.leader_counts &&
                               serial.avoided == parallel.avoided);
    }

    {
        const long long trials = 100000;
        const ElectionConfig cfg = make_bench_config(16, 8, 42);
        trials::ElectionTally serial, parallel;
        const double ts = time_ms(
            [&] { serial = trials::run_election_trials_serial(Protocol::Randomized, cfg, trials); });
        const double tp =
            time_ms([&] { parallel = trials::run_election_trials(Protocol::Randomized, cfg, trials); });
        failures += report("elections random n=16 k=8", trials, ts, tp,
                           serial.leader_counts == parallel.leader_counts &&
                               serial.avoided == parallel.avoided);
    }

    {
        const long long trials = 400000;
        long long serial = 0, parallel = 0;
        const double ts =
            time_ms([&] { serial = trials::count_avoided_samples_serial(1024, 10, trials, 42); });
        const double tp =
            time_ms([&] { parallel = trials::count_avoided_samples(1024, 10, trials, 42); });
        failures += report("avoided samples n=1024 k=10", trials, ts, tp, serial == parallel);
    }

    {
        const long long trials = 100000;
        long long serial = 0, parallel = 0;
        const double ts = time_ms(
            [&] { serial = trials::count_correlation_violations_serial(16, trials, 42); });
        const double tp =
            time_ms([&] { parallel = trials::count_correlation_violations(16, trials, 42); });
        failures += report("correlation checks n=16", trials, ts, tp, serial == parallel);
    }

    {
        const long long trials = 100000;
        trials::SharedStringTally serial, parallel;
        const double ts =
            time_ms([&] { serial = trials::run_shared_string_trials_serial(8, trials, 42); });
        const double tp =
            time_ms([&] { parallel = trials::run_shared_string_trials(8, trials, 42); });
        failures += report("shared strings n=8", trials, ts, tp,
                           serial.counts == parallel.counts &&
                               serial.mismatches == parallel.mismatches);
    }

    if (failures > 0) std::printf("\n%d kernel(s) disagreed with the serial reference\n", failures);
    return failures == 0 ? 0 : 1;
}
