#include "arl/rng.hpp"

#include <cstring>

namespace arl {

namespace {

uint64_t splitmix64(uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(uint64_t seed) {
    uint64_t x = seed;
    for (auto& s : s_) s = splitmix64(x);
}

uint64_t Rng::next() {
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

uint64_t Rng::below(uint64_t bound) {
    // rejection sampling on the top of the range
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        uint64_t r = next();
        if (r >= threshold) return r % bound;
    }
}

void Rng::fill(std::span<uint8_t> out) {
    size_t i = 0;
    while (i < out.size()) {
        uint64_t v = next();
        size_t take = std::min<size_t>(8, out.size() - i);
        for (size_t k = 0; k < take; ++k) out[i + k] = static_cast<uint8_t>(v >> (8 * k));
        i += take;
    }
}

std::array<uint8_t, 32> Rng::bytes32() {
    std::array<uint8_t, 32> out;
    fill(out);
    return out;
}

Rng Rng::derive(uint64_t seed, uint64_t stream_id) {
    uint64_t x = seed;
    uint64_t a = splitmix64(x);
    x ^= stream_id * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL;
    uint64_t b = splitmix64(x);
    return Rng(a ^ rotl(b, 23) ^ stream_id);
}

}  // namespace arl
