#include "qelect/netsim.hpp"

namespace qelect {

const MessageRecord& send(Transcript& t, AgentId from, AgentId to, std::string payload,
                          std::string phase_label) {
    MessageRecord rec;
    rec.from = from;
    rec.to = to;
    rec.cost_cbits = (from == to) ? 0 : static_cast<long long>(payload.size());
    rec.payload = std::move(payload);
    rec.phase_label = std::move(phase_label);
    t.total += rec.cost_cbits;
    t.records.push_back(std::move(rec));
    return t.records.back();
}

void broadcast_start(Transcript& t, AgentId referee, int n) {
    for (int i = 1; i <= n; ++i) {
        if (i == referee.index) continue;
        send(t, referee, AgentId{i}, "1", "start");
    }
}

long long total_cbits(const Transcript& t) {
    return t.total;
}

std::string to_text(const Transcript& t) {
    std::string out;
    for (const MessageRecord& r : t.records) {
        out += std::to_string(r.from.index);
        out += ',';
        out += std::to_string(r.to.index);
        out += ',';
        out += r.payload;
        out += ',';
        out += std::to_string(r.cost_cbits);
        out += ',';
        out += r.phase_label;
        out += '\n';
    }
    return out;
}

}  // namespace qelect
