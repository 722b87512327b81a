#include "arl/commitments.hpp"

namespace arl {

Salt Salt::from_secret(const std::array<uint8_t, 32>& secret) {
    Salt s;
    s.secret = secret;
    s.digest = sha256(ByteView(secret.data(), secret.size()));
    return s;
}

Salt Salt::random(Rng& rng) { return from_secret(rng.bytes32()); }

Digest Nonce::leaf() const {
    if (kind == Kind::keyed) return sha256(ByteView(value.data(), value.size()));
    Digest d;
    d.bytes = value;
    return d;
}

Nonce Nonce::random(Rng& rng) { return Nonce{Kind::random_value, rng.bytes32()}; }

Nonce Nonce::keyed(const PublicKey& pk) { return Nonce{Kind::keyed, pk.bytes}; }

SaltedHashCommitment shc_from_parts(const Digest& leaf, const Digest& salt_digest) {
    return SaltedHashCommitment{sha256_concat(leaf, salt_digest), leaf, salt_digest};
}

std::pair<SaltedHashCommitment, Salt> make_shc(const Digest& leaf, Rng& rng) {
    Salt salt = Salt::random(rng);
    return {shc_from_parts(leaf, salt.digest), salt};
}

bool open_shc(const SaltedHashCommitment& c, const Digest& leaf, const Digest& salt_digest) {
    return sha256_concat(leaf, salt_digest) == c.root;
}

Digest approval_root_for(const Digest& commitment_root, uint64_t timestamp) {
    auto t = be64(timestamp);
    Digest t_digest = sha256(ByteView(t.data(), t.size()));
    return sha256_concat(commitment_root, t_digest);
}

TimestampedApproval make_timestamped_approval(const Digest& commitment_root, uint64_t now,
                                              const KeyPair& limiter) {
    TimestampedApproval a;
    a.commitment_root = commitment_root;
    a.timestamp = now;
    a.approval_root = approval_root_for(commitment_root, now);
    a.signature = sign(limiter.sk, a.approval_root.view());
    a.limiter_key = limiter.pk;
    return a;
}

bool check_timestamped_approval(const TimestampedApproval& a) {
    return a.approval_root == approval_root_for(a.commitment_root, a.timestamp) &&
           verify_signature(a.limiter_key, a.approval_root.view(), a.signature);
}

}  // namespace arl
