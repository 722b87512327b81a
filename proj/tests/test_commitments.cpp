#include <doctest.h>

#include "arl/commitments.hpp"
#include "fixture.hpp"

using namespace arl;

TEST_SUITE("commitments") {

TEST_CASE("pinned commitment from fixed entry and salt") {
    const auto& g = golden()["shc"];
    Entry entry = Entry::from_content(from_hex(g["entry_content_hex"].get<std::string>()));
    CHECK(to_hex(entry.digest) == g["entry_digest_hex"].get<std::string>());

    Bytes secret_bytes = from_hex(g["salt_secret_hex"].get<std::string>());
    std::array<uint8_t, 32> secret;
    std::copy(secret_bytes.begin(), secret_bytes.end(), secret.begin());
    Salt salt = Salt::from_secret(secret);
    CHECK(to_hex(salt.digest) == g["salt_digest_hex"].get<std::string>());

    SaltedHashCommitment c = shc_from_parts(entry.digest, salt.digest);
    CHECK(to_hex(c.root) == g["root_hex"].get<std::string>());
    CHECK(open_shc(c, entry.digest, salt.digest));
}

TEST_CASE("fresh salts give distinct roots for the same leaf") {
    Rng rng(1);
    Digest leaf = sha256(Bytes{1, 2, 3});
    auto [c1, s1] = make_shc(leaf, rng);
    auto [c2, s2] = make_shc(leaf, rng);
    CHECK(c1.root != c2.root);
    CHECK(s1.digest != s2.digest);
    CHECK(c1.root == sha256_concat(leaf, s1.digest));
}

TEST_CASE("open_shc rejects wrong leaf and wrong salt digest") {
    Rng rng(2);
    Digest leaf = sha256(Bytes{9});
    auto [c, salt] = make_shc(leaf, rng);
    CHECK(open_shc(c, leaf, salt.digest));

    Digest other_leaf = sha256(Bytes{10});
    CHECK_FALSE(open_shc(c, other_leaf, salt.digest));

    for (int i = 0; i < 100; ++i) {
        Digest wrong_salt;
        wrong_salt.bytes = rng.bytes32();
        CHECK_FALSE(open_shc(c, leaf, wrong_salt));
    }
}

TEST_CASE("binding: random alternative leaves never open the commitment") {
    Rng rng(3);
    Digest leaf = sha256(Bytes{42});
    auto [c, salt] = make_shc(leaf, rng);
    for (int i = 0; i < 1000; ++i) {
        Digest alt;
        alt.bytes = rng.bytes32();
        if (alt == leaf) continue;
        CHECK_FALSE(open_shc(c, alt, salt.digest));
    }
}

TEST_CASE("pinned timestamped approval root") {
    const auto& g = golden()["timestamped_approval"];
    Digest c_root = digest_from_hex(g["commitment_root_hex"].get<std::string>());
    uint64_t ts = g["timestamp"].get<uint64_t>();
    CHECK(to_hex(approval_root_for(c_root, ts)) == g["approval_root_hex"].get<std::string>());

    // integer encoding rule: 8-byte big-endian
    auto enc = be64(ts);
    CHECK(to_hex(ByteView(enc.data(), enc.size())) == g["timestamp_be64_hex"].get<std::string>());
}

TEST_CASE("timestamped approval invariants hold constructively") {
    Rng rng(4);
    KeyPair limiter = KeyPair::generate(rng);
    Digest c_root = sha256(Bytes{7, 7, 7});
    TimestampedApproval a = make_timestamped_approval(c_root, 1234, limiter);

    CHECK(a.timestamp == 1234);
    CHECK(a.approval_root == approval_root_for(c_root, 1234));
    CHECK(verify_signature(limiter.pk, a.approval_root.view(), a.signature));
    CHECK(check_timestamped_approval(a));

    TimestampedApproval tampered = a;
    tampered.timestamp++;
    CHECK_FALSE(check_timestamped_approval(tampered));
}

TEST_CASE("nonce leaves") {
    Rng rng(5);
    Nonce q = Nonce::random(rng);
    Digest expected;
    expected.bytes = q.value;
    CHECK(q.leaf() == expected);  // random nonces are spent by value

    KeyPair user = KeyPair::generate(rng);
    Nonce keyed = Nonce::keyed(user.pk);
    CHECK(keyed.leaf() == sha256(user.pk.view()));
    CHECK(keyed.leaf() != q.leaf());
}

}  // TEST_SUITE
