#include <doctest.h>

#include "arl/ed25519.hpp"
#include "arl/rng.hpp"
#include "fixture.hpp"

using namespace arl;

TEST_SUITE("ed25519") {

TEST_CASE("RFC 8032 test 1 vector") {
    const auto& g = golden()["ed25519_rfc8032_test1"];
    Bytes seed_bytes = from_hex(g["seed_hex"].get<std::string>());
    std::array<uint8_t, 32> seed;
    std::copy(seed_bytes.begin(), seed_bytes.end(), seed.begin());

    KeyPair kp = KeyPair::from_seed(seed);
    CHECK(to_hex(kp.pk.view()) == g["public_key_hex"].get<std::string>());

    Signature sig = sign(kp.sk, {});
    CHECK(to_hex(sig.view()) == g["signature_hex"].get<std::string>());
    CHECK(verify_signature(kp.pk, {}, sig));
}

TEST_CASE("sign/verify round trip and wrong key") {
    Rng rng(99);
    KeyPair kp = KeyPair::generate(rng);
    KeyPair other = KeyPair::generate(rng);
    Bytes msg(40);
    rng.fill(msg);

    Signature sig = sign(kp.sk, msg);
    CHECK(verify_signature(kp.pk, msg, sig));
    CHECK_FALSE(verify_signature(other.pk, msg, sig));
}

TEST_CASE("randomized single-bit mutations are rejected") {
    Rng rng(123);
    KeyPair kp = KeyPair::generate(rng);
    for (int trial = 0; trial < 64; ++trial) {
        Bytes msg(32);
        rng.fill(msg);
        Signature sig = sign(kp.sk, msg);

        Bytes bad_msg = msg;
        bad_msg[rng.below(bad_msg.size())] ^= uint8_t(1 << rng.below(8));
        CHECK_FALSE(verify_signature(kp.pk, bad_msg, sig));

        Signature bad_sig = sig;
        bad_sig.bytes[rng.below(64)] ^= uint8_t(1 << rng.below(8));
        CHECK_FALSE(verify_signature(kp.pk, msg, bad_sig));

        PublicKey bad_pk = kp.pk;
        bad_pk.bytes[rng.below(32)] ^= uint8_t(1 << rng.below(8));
        CHECK_FALSE(verify_signature(bad_pk, msg, sig));
    }
}

}  // TEST_SUITE
