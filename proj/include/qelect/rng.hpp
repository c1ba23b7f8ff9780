#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace qelect {

// splitmix64 finalizer; turns (seed, label) and (seed, index) pairs into
// well-separated engine seeds.
std::uint64_t splitmix64(std::uint64_t x);

// FNV-1a over the label bytes.
std::uint64_t hash_label(std::string_view label);

// Seed of the index-th substream of `seed`. Monte Carlo drivers give trial t
// the seed derive_seed(master, t), so a trial's randomness depends only on
// (master, t) and never on how the loop was scheduled.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// A labeled deterministic bit stream. The same (seed, label) pair always
// reproduces the same stream; distinct labels give streams that are usable
// as statistically independent.
class RandomSource {
  public:
    RandomSource(std::uint64_t seed, std::string label);

    std::uint64_t next_u64();
    // One fair bit.
    int bit();
    // Uniform on the 2^-53 grid in [0,1).
    double unit_double();
    // True with probability p. p = 0.5 compares against the top mantissa
    // bit, so honest coin flips are exactly fair.
    bool bernoulli(double p);
    // Uniform in [0, bound) by rejection; unbiased for every bound.
    std::uint64_t index_below(std::uint64_t bound);

    // Child stream labeled "<label>/<sublabel>" on the same seed.
    RandomSource derive(std::string_view sublabel) const;

    std::uint64_t seed() const { return seed_; }
    const std::string& label() const { return label_; }

  private:
    std::uint64_t seed_;
    std::string label_;
    std::mt19937_64 engine_;
};

RandomSource derive_stream(std::uint64_t seed, std::string_view label);

}  // namespace qelect
