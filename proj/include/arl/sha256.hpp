#pragma once

#include <cstdint>
#include <span>

#include "arl/bytes.hpp"

namespace arl {

/// Incremental SHA-256 (FIPS 180-4). Scalar reference implementation; the
/// batch entry points below additionally dispatch to a runtime-selected SIMD
/// kernel when many independent messages are hashed at once.
class Sha256 {
  public:
    Sha256();
    void update(ByteView data);
    Digest finish();
    void reset();

  private:
    void compress(const uint8_t* block);

    uint32_t state_[8];
    uint8_t buf_[64];
    size_t buf_len_;
    uint64_t total_len_;
};

Digest sha256(ByteView data);

/// H(a || b) over two 32-byte digests (order-sensitive, no domain prefix).
Digest sha256_concat(const Digest& a, const Digest& b);

// ---------------------------------------------------------------------------
// Batch hashing of independent fixed-shape messages. These are the arithmetic
// inner loops of tree construction: every message in a call has the same
// length, so a SIMD backend can run eight SHA-256 streams in lockstep.

/// out[i] = H(prefix || a[i])  (33-byte messages, one block each)
void sha256_batch_prefixed(uint8_t prefix, std::span<const Digest> a, std::span<Digest> out);

/// out[i] = H(prefix || l[i] || r[i])  (65-byte messages, two blocks each)
void sha256_batch_prefixed_pairs(uint8_t prefix, std::span<const Digest> l,
                                 std::span<const Digest> r, std::span<Digest> out);

// ---------------------------------------------------------------------------
// Backend selection. The scalar kernel is always available; the AVX2 kernel
// is compiled on x86-64 and chosen at startup when the CPU supports it.

enum class HashBackend { scalar, avx2 };

HashBackend active_hash_backend();
bool hash_backend_supported(HashBackend b);

/// Forces a backend (used by tests and the CLI's --hash-backend flag).
/// Returns false and leaves the selection unchanged if `b` is unsupported.
bool select_hash_backend(HashBackend b);

const char* hash_backend_name(HashBackend b);

namespace detail {
// 8 interleaved SHA-256 streams; blocks laid out message-major with a 64-byte
// stride. Defined in the AVX2 translation unit.
#if defined(__x86_64__) || defined(_M_X64)
void sha256_x8_blocks_avx2(uint32_t* states, const uint8_t* blocks, size_t nblocks, size_t stride);
#endif
}  // namespace detail

}  // namespace arl
