#include "qelect/protocol_random.hpp"

#include <string>
#include <utility>

#include "qelect/errors.hpp"

namespace qelect {

int cast_vote(AgentId agent, const AgentBehavior& behavior, RandomSource& rng) {
    (void)agent;
    return rng.bernoulli(behavior.bias()) ? 1 : 0;
}

SampleSelection referee_sample(int n, int address_len, RandomSource& rng) {
    if (address_len > n)
        throw SampleTooLarge("cannot sample " + std::to_string(address_len) + " of " +
                             std::to_string(n) + " votes");
    // Floyd's algorithm gives a uniform L-subset in O(L) draws; the shuffle
    // then makes every arrangement of that subset equally likely.
    std::vector<int> picked;
    picked.reserve(static_cast<std::size_t>(address_len));
    for (int j = n - address_len + 1; j <= n; ++j) {
        int t = 1 + static_cast<int>(rng.index_below(static_cast<std::uint64_t>(j)));
        bool taken = false;
        for (int p : picked) {
            if (p == t) {
                taken = true;
                break;
            }
        }
        picked.push_back(taken ? j : t);
    }
    for (std::size_t i = picked.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.index_below(i));
        std::swap(picked[i - 1], picked[j]);
    }
    SampleSelection selection;
    selection.positions = std::move(picked);
    return selection;
}

ElectionOutcome run_protocol_two(const ElectionConfig& cfg, const AgreementPolicy& agrees) {
    ElectionOutcome out;
    out.protocol = Protocol::Randomized;

    broadcast_start(out.transcript, cfg.referee, cfg.n);

    // The sample is fixed before any vote is read so that vote values can
    // never influence which positions get read.
    RandomSource sample_rng = derive_stream(cfg.master_seed, "sample");
    SampleSelection selection = referee_sample(cfg.n, cfg.address_len, sample_rng);
    out.sample_positions = std::move(selection.positions);

    std::vector<VoteRecord> votes;
    votes.reserve(static_cast<std::size_t>(cfg.n));
    for (int i = 1; i <= cfg.n; ++i) {
        const AgentBehavior& behavior = cfg.behaviors[static_cast<std::size_t>(i - 1)];
        RandomSource vote_rng = derive_stream(cfg.master_seed, "vote-" + std::to_string(i));
        VoteRecord rec;
        rec.agent = AgentId{i};
        rec.behavior_kind = behavior.kind;
        rec.bit = cast_vote(rec.agent, behavior, vote_rng);
        votes.push_back(rec);
        send(out.transcript, rec.agent, cfg.referee, rec.bit ? "1" : "0", "vote");
    }

    out.address_bits.reserve(static_cast<std::size_t>(cfg.address_len));
    for (int pos : out.sample_positions) {
        const VoteRecord& rec = votes[static_cast<std::size_t>(pos - 1)];
        out.address_bits.push_back(rec.bit);
        if (rec.behavior_kind == BehaviorKind::Biased) out.touched_biased = true;
    }
    out.leader = index_from_bits(out.address_bits, cfg.address_len);

    detail::inform_and_agree(out, cfg, agrees);

    return out;
}

bool avoided_bias(const ElectionOutcome& outcome) {
    if (outcome.protocol != Protocol::Randomized)
        throw WrongProtocol("avoided_bias applies to the randomized protocol only");
    return !outcome.touched_biased;
}

}  // namespace qelect
