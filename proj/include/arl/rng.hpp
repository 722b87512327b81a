#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace arl {

/// Deterministic seeded generator (xoshiro256** with splitmix64 seeding).
/// Every random choice in the library flows through one of these so that a
/// run is a pure function of its seed; nothing reads OS entropy.
class Rng {
  public:
    explicit Rng(uint64_t seed);

    uint64_t next();

    /// Uniform in [0, bound), unbiased. bound must be > 0.
    uint64_t below(uint64_t bound);

    /// Uniform in [lo, hi] inclusive.
    uint64_t range(uint64_t lo, uint64_t hi) { return lo + below(hi - lo + 1); }

    void fill(std::span<uint8_t> out);
    std::array<uint8_t, 32> bytes32();

    /// Independent substream derived from a base seed and a stream id.
    /// Deterministic regardless of draw order on other streams.
    static Rng derive(uint64_t seed, uint64_t stream_id);

  private:
    uint64_t s_[4];
};

}  // namespace arl
