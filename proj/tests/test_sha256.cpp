#include <doctest.h>

#include <sodium.h>

#include <set>

#include "arl/rng.hpp"
#include "arl/sha256.hpp"
#include "fixture.hpp"

using namespace arl;

TEST_SUITE("sha256") {

TEST_CASE("published test vectors") {
    for (const auto& vec : golden()["sha256"]) {
        Bytes input = from_hex(vec["input_hex"].get<std::string>());
        CHECK(to_hex(sha256(input)) == vec["digest_hex"].get<std::string>());
    }
}

TEST_CASE("empty input matches the algorithm's published digest") {
    CHECK(to_hex(sha256({})) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("determinism and streaming equivalence") {
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        Bytes data(rng.below(300));
        rng.fill(data);
        CHECK(sha256(data) == sha256(data));

        // chunked update must match one-shot
        Sha256 h;
        size_t off = 0;
        while (off < data.size()) {
            size_t take = std::min<size_t>(1 + rng.below(64), data.size() - off);
            h.update(ByteView(data.data() + off, take));
            off += take;
        }
        CHECK(h.finish() == sha256(data));
    }
}

TEST_CASE("collision-freedom smoke test over 1e5 random inputs") {
    Rng rng(11);
    std::set<Digest> seen;
    Bytes data(16);
    for (int i = 0; i < 100000; ++i) {
        rng.fill(data);
        seen.insert(sha256(data));
    }
    // distinct inputs may repeat in the sample; digests must not collide more
    std::set<Bytes> inputs;
    CHECK(seen.size() >= 99990);  // 16-byte random inputs essentially never repeat
}

TEST_CASE("agrees with libsodium across every padding shape") {
    REQUIRE(sodium_init() >= 0);
    Rng rng(31);
    for (size_t len = 0; len <= 200; ++len) {
        Bytes data(len);
        rng.fill(data);
        Digest want;
        crypto_hash_sha256(want.data(), data.data(), data.size());
        CHECK(sha256(data) == want);
    }
}

TEST_CASE("hash_concat is order-sensitive and definitional") {
    const auto& g = golden()["hash_concat"];
    Digest a = digest_from_hex(g["a_hex"].get<std::string>());
    Digest b = digest_from_hex(g["b_hex"].get<std::string>());
    CHECK(to_hex(sha256_concat(a, b)) == g["digest_hex"].get<std::string>());
    CHECK(to_hex(sha256_concat(b, a)) == g["swapped_digest_hex"].get<std::string>());
    CHECK(sha256_concat(a, b) != sha256_concat(b, a));

    Bytes cat;
    append(cat, a.view());
    append(cat, b.view());
    CHECK(sha256_concat(a, b) == sha256(cat));
}

TEST_CASE("batch kernels match the scalar reference on every backend") {
    Rng rng(23);
    std::vector<HashBackend> backends{HashBackend::scalar};
    if (hash_backend_supported(HashBackend::avx2)) backends.push_back(HashBackend::avx2);

    const HashBackend previous = active_hash_backend();
    for (size_t n : {1u, 7u, 8u, 9u, 16u, 23u, 64u}) {
        std::vector<Digest> a(n), b(n);
        for (auto& d : a) d.bytes = rng.bytes32();
        for (auto& d : b) d.bytes = rng.bytes32();

        for (uint8_t prefix : {0x00, 0x01, 0x7f}) {
            // reference: scalar one-shot over the assembled message
            std::vector<Digest> want_single(n), want_pair(n);
            for (size_t i = 0; i < n; ++i) {
                Bytes m{prefix};
                append(m, a[i].view());
                want_single[i] = sha256(m);
                append(m, b[i].view());
                // 65-byte message is prefix||a||b
                want_pair[i] = sha256(m);
            }
            for (HashBackend backend : backends) {
                REQUIRE(select_hash_backend(backend));
                std::vector<Digest> got(n);
                sha256_batch_prefixed(prefix, a, got);
                CHECK(got == want_single);
                sha256_batch_prefixed_pairs(prefix, a, b, got);
                CHECK(got == want_pair);
            }
        }
    }
    select_hash_backend(previous);

    if (backends.size() == 1)
        MESSAGE("avx2 backend not supported on this host; equivalence ran scalar-only");
}

TEST_CASE("backend selection is sticky and rejects unsupported") {
    const HashBackend previous = active_hash_backend();
    CHECK(select_hash_backend(HashBackend::scalar));
    CHECK(active_hash_backend() == HashBackend::scalar);
    if (hash_backend_supported(HashBackend::avx2)) {
        CHECK(select_hash_backend(HashBackend::avx2));
        CHECK(active_hash_backend() == HashBackend::avx2);
    }
    select_hash_backend(previous);
}

}  // TEST_SUITE
