#include "qelect/core.hpp"

#include <string>

namespace qelect {

AgentBehavior AgentBehavior::biased(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("bias must lie in [0,1]");
    return {BehaviorKind::Biased, p};
}

bool is_power_of_two(long long n) {
    return n >= 1 && (n & (n - 1)) == 0;
}

int log2_exact(long long n) {
    int l = 0;
    while ((1LL << l) < n) ++l;
    return l;
}

ElectionConfig make_config(int n, AgentId referee, std::vector<AgentBehavior> behaviors,
                           std::uint64_t master_seed, bool audit_enabled) {
    if (n < 2 || !is_power_of_two(n))
        throw NotPowerOfTwo("agent count must be a power of two >= 2, got " + std::to_string(n));
    if (static_cast<int>(behaviors.size()) != n)
        throw BehaviorCountMismatch("expected " + std::to_string(n) + " behaviors, got " +
                                    std::to_string(behaviors.size()));
    if (referee.index < 1 || referee.index > n)
        throw RefereeOutOfRange("referee index " + std::to_string(referee.index) +
                                " outside [1," + std::to_string(n) + "]");

    int biased = 0;
    for (const AgentBehavior& b : behaviors) {
        if (b.kind == BehaviorKind::Biased) {
            if (b.bias_value == 0.5)
                throw HalfBias("a biased agent with bias 1/2 is indistinguishable from honest");
            ++biased;
        }
    }

    ElectionConfig cfg;
    cfg.n = n;
    cfg.address_len = log2_exact(n);
    cfg.referee = referee;
    cfg.behaviors = std::move(behaviors);
    cfg.master_seed = master_seed;
    cfg.audit_enabled = audit_enabled;
    cfg.biased_count = biased;
    return cfg;
}

ElectionConfig with_seed(ElectionConfig cfg, std::uint64_t seed) {
    cfg.master_seed = seed;
    return cfg;
}

}  // namespace qelect
