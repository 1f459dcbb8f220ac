#pragma once

#include <cstdint>

namespace cip {

/// Counter-based seeded generator (SplitMix64 finalizer over seed + counter).
/// The k-th draw depends only on (seed, k), so any sequence replays
/// bit-exactly from its seed, and derived streams are cheap to fork.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    /// Deterministic sub-stream seed, for per-trial / per-attempt forks.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        return mix(seed ^ (0x9E3779B97F4A7C15ULL + mix(stream + 0x632BE59BD9B4E019ULL)));
    }

    std::uint64_t next_u64() {
        std::uint64_t z = seed_ + ++counter_ * 0x9E3779B97F4A7C15ULL;
        return mix(z);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// One Bernoulli(p) trial; always consumes exactly one draw.
    bool bernoulli(double p) { return uniform() < p; }

    std::uint64_t draws_consumed() const { return counter_; }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace cip
