#include "arl/sha256.hpp"

#include <cassert>
#include <cstring>

namespace arl {

namespace {

constexpr uint32_t kInit[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                               0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};

constexpr uint32_t kRound[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4, 0xab1c5ed5,
    0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174,
    0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967,
    0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
    0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

inline uint32_t rotr(uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

}  // namespace

Sha256::Sha256() { reset(); }

void Sha256::reset() {
    std::memcpy(state_, kInit, sizeof(state_));
    buf_len_ = 0;
    total_len_ = 0;
}

void Sha256::compress(const uint8_t* block) {
    uint32_t w[64];
    for (int t = 0; t < 16; ++t) w[t] = read_be32(block + 4 * t);
    for (int t = 16; t < 64; ++t) {
        uint32_t s0 = rotr(w[t - 15], 7) ^ rotr(w[t - 15], 18) ^ (w[t - 15] >> 3);
        uint32_t s1 = rotr(w[t - 2], 17) ^ rotr(w[t - 2], 19) ^ (w[t - 2] >> 10);
        w[t] = w[t - 16] + s0 + w[t - 7] + s1;
    }

    uint32_t a = state_[0], b = state_[1], c = state_[2], d = state_[3];
    uint32_t e = state_[4], f = state_[5], g = state_[6], h = state_[7];

    for (int t = 0; t < 64; ++t) {
        uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
        uint32_t ch = (e & f) ^ (~e & g);
        uint32_t t1 = h + s1 + ch + kRound[t] + w[t];
        uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
        uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
        uint32_t t2 = s0 + maj;
        h = g;
        g = f;
        f = e;
        e = d + t1;
        d = c;
        c = b;
        b = a;
        a = t1 + t2;
    }

    state_[0] += a;
    state_[1] += b;
    state_[2] += c;
    state_[3] += d;
    state_[4] += e;
    state_[5] += f;
    state_[6] += g;
    state_[7] += h;
}

void Sha256::update(ByteView data) {
    total_len_ += data.size();
    size_t off = 0;
    if (buf_len_ > 0) {
        size_t take = std::min(data.size(), size_t(64) - buf_len_);
        std::memcpy(buf_ + buf_len_, data.data(), take);
        buf_len_ += take;
        off = take;
        if (buf_len_ == 64) {
            compress(buf_);
            buf_len_ = 0;
        }
    }
    while (off + 64 <= data.size()) {
        compress(data.data() + off);
        off += 64;
    }
    if (off < data.size()) {
        std::memcpy(buf_, data.data() + off, data.size() - off);
        buf_len_ = data.size() - off;
    }
}

Digest Sha256::finish() {
    uint64_t bit_len = total_len_ * 8;
    uint8_t pad = 0x80;
    update(ByteView(&pad, 1));
    uint8_t zero = 0;
    while (buf_len_ != 56) update(ByteView(&zero, 1));
    auto len_bytes = be64(bit_len);
    update(ByteView(len_bytes.data(), len_bytes.size()));
    assert(buf_len_ == 0);  // terminal until reset()

    Digest out;
    for (int i = 0; i < 8; ++i) {
        auto word = be32(state_[i]);
        std::memcpy(out.data() + 4 * i, word.data(), 4);
    }
    return out;
}

Digest sha256(ByteView data) {
    Sha256 h;
    h.update(data);
    return h.finish();
}

Digest sha256_concat(const Digest& a, const Digest& b) {
    Sha256 h;
    h.update(a.view());
    h.update(b.view());
    return h.finish();
}

// ---------------------------------------------------------------------------
// Batch paths

namespace {

#if defined(__x86_64__) || defined(_M_X64)
bool runtime_avx2() { return __builtin_cpu_supports("avx2"); }
#else
bool runtime_avx2() { return false; }
#endif

HashBackend g_backend = runtime_avx2() ? HashBackend::avx2 : HashBackend::scalar;

// Pads `msg` (msg_len <= 119) into one or two 64-byte SHA-256 blocks.
size_t pad_message(const uint8_t* msg, size_t msg_len, uint8_t* blocks) {
    size_t nblocks = msg_len <= 55 ? 1 : 2;
    std::memset(blocks, 0, nblocks * 64);
    std::memcpy(blocks, msg, msg_len);
    blocks[msg_len] = 0x80;
    auto len_bytes = be64(msg_len * 8);
    std::memcpy(blocks + nblocks * 64 - 8, len_bytes.data(), 8);
    return nblocks;
}

#if defined(__x86_64__) || defined(_M_X64)
void extract_states(const uint32_t* states, std::span<Digest> out, size_t base, size_t n) {
    for (size_t j = 0; j < n; ++j) {
        for (int v = 0; v < 8; ++v) {
            auto word = be32(states[v * 8 + j]);
            std::memcpy(out[base + j].data() + 4 * v, word.data(), 4);
        }
    }
}

// Runs groups of eight equal-shape messages through the 8-way kernel.
// `fill` writes message i's raw bytes; msg_len fixes the shape.
template <typename Fill>
void batch_avx2(size_t count, size_t msg_len, std::span<Digest> out, Fill&& fill) {
    const size_t nblocks = msg_len <= 55 ? 1 : 2;
    alignas(32) uint8_t blocks[8 * 128];
    alignas(32) uint32_t states[64];
    uint8_t msg[128];

    size_t i = 0;
    for (; i + 8 <= count; i += 8) {
        for (size_t j = 0; j < 8; ++j) {
            fill(i + j, msg);
            pad_message(msg, msg_len, blocks + j * nblocks * 64);
        }
        for (int v = 0; v < 8; ++v)
            for (int j = 0; j < 8; ++j) states[v * 8 + j] = kInit[v];
        detail::sha256_x8_blocks_avx2(states, blocks, nblocks, nblocks * 64);
        extract_states(states, out, i, 8);
    }
    for (; i < count; ++i) {
        fill(i, msg);
        out[i] = sha256(ByteView(msg, msg_len));
    }
}
#endif

}  // namespace

HashBackend active_hash_backend() { return g_backend; }

bool hash_backend_supported(HashBackend b) {
    return b == HashBackend::scalar || (b == HashBackend::avx2 && runtime_avx2());
}

bool select_hash_backend(HashBackend b) {
    if (!hash_backend_supported(b)) return false;
    g_backend = b;
    return true;
}

const char* hash_backend_name(HashBackend b) {
    return b == HashBackend::avx2 ? "avx2" : "scalar";
}

void sha256_batch_prefixed(uint8_t prefix, std::span<const Digest> a, std::span<Digest> out) {
    assert(a.size() == out.size());
#if defined(__x86_64__) || defined(_M_X64)
    if (g_backend == HashBackend::avx2 && a.size() >= 8) {
        batch_avx2(a.size(), 33, out, [&](size_t i, uint8_t* msg) {
            msg[0] = prefix;
            std::memcpy(msg + 1, a[i].data(), 32);
        });
        return;
    }
#endif
    uint8_t msg[33];
    msg[0] = prefix;
    for (size_t i = 0; i < a.size(); ++i) {
        std::memcpy(msg + 1, a[i].data(), 32);
        out[i] = sha256(ByteView(msg, sizeof(msg)));
    }
}

void sha256_batch_prefixed_pairs(uint8_t prefix, std::span<const Digest> l,
                                 std::span<const Digest> r, std::span<Digest> out) {
    assert(l.size() == r.size() && l.size() == out.size());
#if defined(__x86_64__) || defined(_M_X64)
    if (g_backend == HashBackend::avx2 && l.size() >= 8) {
        batch_avx2(l.size(), 65, out, [&](size_t i, uint8_t* msg) {
            msg[0] = prefix;
            std::memcpy(msg + 1, l[i].data(), 32);
            std::memcpy(msg + 33, r[i].data(), 32);
        });
        return;
    }
#endif
    uint8_t msg[65];
    msg[0] = prefix;
    for (size_t i = 0; i < l.size(); ++i) {
        std::memcpy(msg + 1, l[i].data(), 32);
        std::memcpy(msg + 33, r[i].data(), 32);
        out[i] = sha256(ByteView(msg, sizeof(msg)));
    }
}

}  // namespace arl
