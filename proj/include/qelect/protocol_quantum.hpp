#pragma once

#include <functional>
#include <set>
#include <span>
#include <vector>

#include "qelect/entanglement.hpp"
#include "qelect/netsim.hpp"

namespace qelect {

enum class Protocol { Quantum, Randomized };

// Referee's check of one claimed measurement against its own qubit of the
// same state. False claims are flagged and ignored; they never feed the
// leader address.
struct AuditVerdict {
    AgentId agent;
    int state_index = 0;
    int reported = 0;
    int truth = 0;
    bool lied = false;
};

struct ElectionOutcome {
    Protocol protocol = Protocol::Quantum;
    AgentId leader;
    std::vector<int> address_bits;  // length L, most significant bit first
    std::vector<int> agreements;    // n entries, agent i at index i-1
    std::set<int> discarded;        // agents whose agreement bit is 0
    Transcript transcript;

    // Randomized protocol only: the sampled vote positions in sampled
    // order, and whether any of them belonged to a biased agent.
    std::vector<int> sample_positions;
    bool touched_biased = false;

    // Quantum protocol with auditing enabled.
    std::vector<AuditVerdict> audits;
};

// Leader address encoding: most significant bit first, agent = 1 + value.
// Bijection between {0,1}^L and [1, 2^L].
AgentId index_from_bits(std::span<const int> bits, int address_len);

// Per-agent agreement override used to exercise the discard semantics in
// tests. Without a policy every agent agrees; the elected leader is
// committed and always agrees.
using AgreementPolicy = std::function<bool(AgentId agent, AgentId leader)>;

// Entanglement-based election. The referee broadcasts a 1-cbit start, all
// agents measure their L qubits locally (no communication), the referee
// forms the address from its own measured bits, informs the leader, and the
// agreement round follows. Exactly 3n-3 cbits, plus one when the leader is
// not the referee.
ElectionOutcome run_protocol_one(const ElectionConfig& cfg, const AgreementPolicy& agrees = {});

// Same election driven over a caller-supplied registry; lets tests preset
// state outcomes and sweep every address.
ElectionOutcome run_protocol_one(const ElectionConfig& cfg, EbitRegistry& registry,
                                 const AgreementPolicy& agrees = {});

AuditVerdict audit_report(EbitRegistry& reg, AgentId referee, AgentId agent, int k, int reported);

namespace detail {
// Inform-leader and agreement phases shared by both protocols: 1 cbit to
// the leader (free if the leader is the referee), a 1-cbit agreement
// request from the leader to each other agent, and a 1-cbit agreement from
// every agent to the referee (the referee's own is local).
void inform_and_agree(ElectionOutcome& out, const ElectionConfig& cfg,
                      const AgreementPolicy& agrees);
}  // namespace detail

}  // namespace qelect
