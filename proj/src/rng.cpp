#include "qelect/rng.hpp"

#include <stdexcept>

namespace qelect {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t hash_label(std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

RandomSource::RandomSource(std::uint64_t seed, std::string label)
    : seed_(seed),
      label_(std::move(label)),
      engine_(splitmix64(splitmix64(seed) ^ hash_label(label_))) {}

std::uint64_t RandomSource::next_u64() {
    return engine_();
}

int RandomSource::bit() {
    return static_cast<int>(next_u64() >> 63);
}

double RandomSource::unit_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool RandomSource::bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return unit_double() < p;
}

std::uint64_t RandomSource::index_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("index_below: bound must be positive");
    // threshold = 2^64 mod bound; accepted draws cover a whole number of
    // copies of [0, bound).
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = next_u64();
        if (r >= threshold) return r % bound;
    }
}

RandomSource RandomSource::derive(std::string_view sublabel) const {
    std::string child = label_;
    child += '/';
    child += sublabel;
    return RandomSource(seed_, std::move(child));
}

RandomSource derive_stream(std::uint64_t seed, std::string_view label) {
    return RandomSource(seed, std::string(label));
}

}  // namespace qelect
