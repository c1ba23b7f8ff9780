#include "qelect/protocol_quantum.hpp"

#include <string>

#include "qelect/errors.hpp"
#include "qelect/rng.hpp"

namespace qelect {

AgentId index_from_bits(std::span<const int> bits, int address_len) {
    if (static_cast<int>(bits.size()) != address_len)
        throw WrongLength("address has " + std::to_string(bits.size()) + " bits, expected " +
                          std::to_string(address_len));
    int value = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) throw WrongLength("address bits must be 0 or 1");
        value = value * 2 + b;
    }
    return AgentId{1 + value};
}

AuditVerdict audit_report(EbitRegistry& reg, AgentId referee, AgentId agent, int k, int reported) {
    AuditVerdict v;
    v.agent = agent;
    v.state_index = k;
    v.reported = reported;
    v.truth = measure(reg, referee, k);
    v.lied = (v.reported != v.truth);
    return v;
}

namespace detail {

void inform_and_agree(ElectionOutcome& out, const ElectionConfig& cfg,
                      const AgreementPolicy& agrees) {
    const AgentId leader = out.leader;
    const AgentId referee = cfg.referee;

    send(out.transcript, referee, leader, "1", "inform-leader");

    for (int i = 1; i <= cfg.n; ++i) {
        if (i == leader.index) continue;
        send(out.transcript, leader, AgentId{i}, "1", "agreement-request");
    }

    out.agreements.assign(static_cast<std::size_t>(cfg.n), 1);
    for (int i = 1; i <= cfg.n; ++i) {
        bool ok = true;
        if (i != leader.index && agrees) ok = agrees(AgentId{i}, leader);
        out.agreements[static_cast<std::size_t>(i - 1)] = ok ? 1 : 0;
        if (!ok) out.discarded.insert(i);
        send(out.transcript, AgentId{i}, referee, ok ? "1" : "0", "agreement");
    }
}

}  // namespace detail

ElectionOutcome run_protocol_one(const ElectionConfig& cfg, EbitRegistry& registry,
                                 const AgreementPolicy& agrees) {
    if (registry.n != cfg.n)
        throw BehaviorCountMismatch("registry built for n=" + std::to_string(registry.n) +
                                    ", config has n=" + std::to_string(cfg.n));
    ElectionOutcome out;
    out.protocol = Protocol::Quantum;

    broadcast_start(out.transcript, cfg.referee, cfg.n);

    // Every agent measures all L of its qubits; only the referee's bits
    // form the address. Measurement is local, so no cbits move here.
    std::vector<std::vector<int>> bits(static_cast<std::size_t>(cfg.n));
    for (int i = 1; i <= cfg.n; ++i) {
        auto& row = bits[static_cast<std::size_t>(i - 1)];
        row.reserve(static_cast<std::size_t>(cfg.address_len));
        for (int k = 1; k <= cfg.address_len; ++k) row.push_back(measure(registry, AgentId{i}, k));
    }

    out.address_bits = bits[static_cast<std::size_t>(cfg.referee.index - 1)];
    out.leader = index_from_bits(out.address_bits, cfg.address_len);

    detail::inform_and_agree(out, cfg, agrees);

    if (cfg.audit_enabled) {
        for (int i = 1; i <= cfg.n; ++i) {
            if (i == cfg.referee.index) continue;
            bool biased = cfg.behaviors[static_cast<std::size_t>(i - 1)].kind == BehaviorKind::Biased;
            for (int k = 1; k <= cfg.address_len; ++k) {
                int truth = bits[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)];
                int reported = biased ? 1 - truth : truth;
                out.audits.push_back(audit_report(registry, cfg.referee, AgentId{i}, k, reported));
            }
        }
    }

    return out;
}

ElectionOutcome run_protocol_one(const ElectionConfig& cfg, const AgreementPolicy& agrees) {
    EbitRegistry registry = create_registry(cfg.n, derive_stream(cfg.master_seed, "ebits"));
    return run_protocol_one(cfg, registry, agrees);
}

}  // namespace qelect
