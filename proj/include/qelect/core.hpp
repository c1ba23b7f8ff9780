#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "qelect/errors.hpp"
#include "qelect/rng.hpp"

namespace qelect {

// 1-based agent index in [1, n].
struct AgentId {
    int index = 0;
    auto operator<=>(const AgentId&) const = default;
};

enum class BehaviorKind { Honest, Biased };

// Honest agents vote with a fair coin (bias exactly 1/2); biased agents
// vote 1 with a fixed probability != 1/2. Declaring a biased agent with
// bias 1/2 is rejected at config time: it would be indistinguishable from
// an honest agent and corrupt the biased-agent count k.
struct AgentBehavior {
    BehaviorKind kind = BehaviorKind::Honest;
    double bias_value = 0.5;

    static AgentBehavior honest() { return {BehaviorKind::Honest, 0.5}; }
    static AgentBehavior biased(double p);

    double bias() const { return bias_value; }
    bool operator==(const AgentBehavior&) const = default;
};

struct ElectionConfig {
    int n = 0;
    int address_len = 0;  // L = log2(n)
    AgentId referee;
    std::vector<AgentBehavior> behaviors;  // agent i at index i-1
    std::uint64_t master_seed = 0;
    bool audit_enabled = false;  // protocol I only
    int biased_count = 0;        // k

    bool operator==(const ElectionConfig&) const = default;
};

bool is_power_of_two(long long n);
// n must be a power of two >= 1.
int log2_exact(long long n);

ElectionConfig make_config(int n, AgentId referee, std::vector<AgentBehavior> behaviors,
                           std::uint64_t master_seed, bool audit_enabled = false);

// Same config under a different master seed; used by the trial drivers.
ElectionConfig with_seed(ElectionConfig cfg, std::uint64_t seed);

}  // namespace qelect
