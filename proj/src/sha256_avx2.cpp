// Eight-way SHA-256 message-parallel kernel. Each __m256i lane carries one of
// eight independent streams; the caller guarantees all streams have the same
// block count. Compiled with -mavx2 and reached only after a runtime CPUID
// check, so no code here may run on unsupported hardware.

#include "arl/sha256.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace arl::detail {

namespace {

alignas(32) constexpr uint32_t kRound[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4, 0xab1c5ed5,
    0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174,
    0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967,
    0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
    0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

inline __m256i rotr(__m256i x, int n) {
    return _mm256_or_si256(_mm256_srli_epi32(x, n), _mm256_slli_epi32(x, 32 - n));
}

inline __m256i big_sigma0(__m256i x) {
    return _mm256_xor_si256(_mm256_xor_si256(rotr(x, 2), rotr(x, 13)), rotr(x, 22));
}

inline __m256i big_sigma1(__m256i x) {
    return _mm256_xor_si256(_mm256_xor_si256(rotr(x, 6), rotr(x, 11)), rotr(x, 25));
}

inline __m256i small_sigma0(__m256i x) {
    return _mm256_xor_si256(_mm256_xor_si256(rotr(x, 7), rotr(x, 18)), _mm256_srli_epi32(x, 3));
}

inline __m256i small_sigma1(__m256i x) {
    return _mm256_xor_si256(_mm256_xor_si256(rotr(x, 17), rotr(x, 19)), _mm256_srli_epi32(x, 10));
}

inline __m256i choose(__m256i e, __m256i f, __m256i g) {
    return _mm256_xor_si256(g, _mm256_and_si256(e, _mm256_xor_si256(f, g)));
}

inline __m256i majority(__m256i a, __m256i b, __m256i c) {
    return _mm256_or_si256(_mm256_and_si256(a, b), _mm256_and_si256(c, _mm256_or_si256(a, b)));
}

inline int load32(const uint8_t* p) {
    int v;
    __builtin_memcpy(&v, p, 4);
    return v;
}

// Word t of the current block for all eight streams, byte-swapped to the
// big-endian word order the compression function works in.
inline __m256i load_word(const uint8_t* blocks, size_t stride, size_t block, int t) {
    const uint8_t* p = blocks + block * 64 + 4 * t;
    __m256i v = _mm256_set_epi32(load32(p + 7 * stride), load32(p + 6 * stride),
                                 load32(p + 5 * stride), load32(p + 4 * stride),
                                 load32(p + 3 * stride), load32(p + 2 * stride),
                                 load32(p + 1 * stride), load32(p + 0 * stride));
    const __m256i bswap32 = _mm256_set_epi8(12, 13, 14, 15, 8, 9, 10, 11, 4, 5, 6, 7, 0, 1, 2, 3,
                                            12, 13, 14, 15, 8, 9, 10, 11, 4, 5, 6, 7, 0, 1, 2, 3);
    return _mm256_shuffle_epi8(v, bswap32);
}

}  // namespace

void sha256_x8_blocks_avx2(uint32_t* states, const uint8_t* blocks, size_t nblocks, size_t stride) {
    __m256i s[8];
    for (int v = 0; v < 8; ++v)
        s[v] = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(states + 8 * v));

    for (size_t blk = 0; blk < nblocks; ++blk) {
        __m256i w[16];
        for (int t = 0; t < 16; ++t) w[t] = load_word(blocks, stride, blk, t);

        __m256i a = s[0], b = s[1], c = s[2], d = s[3];
        __m256i e = s[4], f = s[5], g = s[6], h = s[7];

        for (int t = 0; t < 64; ++t) {
            __m256i wt;
            if (t < 16) {
                wt = w[t];
            } else {
                wt = _mm256_add_epi32(
                    _mm256_add_epi32(w[(t - 16) & 15], small_sigma0(w[(t - 15) & 15])),
                    _mm256_add_epi32(w[(t - 7) & 15], small_sigma1(w[(t - 2) & 15])));
                w[t & 15] = wt;
            }
            __m256i t1 = _mm256_add_epi32(
                _mm256_add_epi32(h, big_sigma1(e)),
                _mm256_add_epi32(choose(e, f, g),
                                 _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(kRound[t])), wt)));
            __m256i t2 = _mm256_add_epi32(big_sigma0(a), majority(a, b, c));
            h = g;
            g = f;
            f = e;
            e = _mm256_add_epi32(d, t1);
            d = c;
            c = b;
            b = a;
            a = _mm256_add_epi32(t1, t2);
        }

        s[0] = _mm256_add_epi32(s[0], a);
        s[1] = _mm256_add_epi32(s[1], b);
        s[2] = _mm256_add_epi32(s[2], c);
        s[3] = _mm256_add_epi32(s[3], d);
        s[4] = _mm256_add_epi32(s[4], e);
        s[5] = _mm256_add_epi32(s[5], f);
        s[6] = _mm256_add_epi32(s[6], g);
        s[7] = _mm256_add_epi32(s[7], h);
    }

    for (int v = 0; v < 8; ++v)
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(states + 8 * v), s[v]);
}

}  // namespace arl::detail

#endif  // x86-64
