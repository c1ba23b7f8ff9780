#pragma once

#include <string>
#include <vector>

#include "qelect/core.hpp"

namespace qelect {

// One classical message. Moving a bit between distinct agents costs one
// cbit per payload bit, independent of any network topology; delivering to
// oneself is free. The sender address rides along as metadata and is never
// billed.
struct MessageRecord {
    AgentId from;
    AgentId to;
    std::string payload;  // '0'/'1' characters
    long long cost_cbits = 0;
    std::string phase_label;
};

// Ordered message ledger for one election run. total always equals the sum
// of the per-record costs.
struct Transcript {
    std::vector<MessageRecord> records;
    long long total = 0;
};

const MessageRecord& send(Transcript& t, AgentId from, AgentId to, std::string payload,
                          std::string phase_label);

// One 1-bit start signal from the referee to each of the other n-1 agents.
void broadcast_start(Transcript& t, AgentId referee, int n);

long long total_cbits(const Transcript& t);

// Debug rendering, one "from,to,bits,cost,phase" line per record.
std::string to_text(const Transcript& t);

}  // namespace qelect
