#pragma once

#include <vector>

#include "qelect/protocol_quantum.hpp"
#include "qelect/rng.hpp"

namespace qelect {

struct VoteRecord {
    AgentId agent;
    int bit = 0;
    BehaviorKind behavior_kind = BehaviorKind::Honest;
};

// Which vote positions the referee reads, in the order they enter the
// address, and whether any sampled position belongs to a biased agent.
struct SampleSelection {
    std::vector<int> positions;
    bool touched_biased = false;
};

int cast_vote(AgentId agent, const AgentBehavior& behavior, RandomSource& rng);

// L distinct positions drawn uniformly from [1, n], in uniform random
// order. The draw depends only on the rng, never on the votes;
// touched_biased is filled in once the votes are read.
SampleSelection referee_sample(int n, int address_len, RandomSource& rng);

// Classical election: every agent sends one vote bit to the referee, the
// referee samples L of the n votes and concatenates them into the leader
// address. Biased agents vote with their own bias; the election is fair
// whenever the sample misses all of them. Exactly 4n-4 cbits, plus one when
// the leader is not the referee.
ElectionOutcome run_protocol_two(const ElectionConfig& cfg, const AgreementPolicy& agrees = {});

// True when the sampled positions avoided every biased agent, making the
// drawn address uniform. Only meaningful for the randomized protocol.
bool avoided_bias(const ElectionOutcome& outcome);

}  // namespace qelect
