#pragma once

#include <cstdint>
#include <utility>

#include "arl/bytes.hpp"
#include "arl/ed25519.hpp"
#include "arl/rng.hpp"
#include "arl/sha256.hpp"

namespace arl {

/// Opaque content plus its cached digest; everything downstream addresses an
/// entry by digest only.
struct Entry {
    Bytes content;
    Digest digest;

    static Entry from_content(Bytes content) {
        Digest d = sha256(content);
        return Entry{std::move(content), d};
    }
};

/// 32-byte secret; only its digest ever leaves the owner.
struct Salt {
    std::array<uint8_t, 32> secret{};
    Digest digest;

    static Salt random(Rng& rng);
    static Salt from_secret(const std::array<uint8_t, 32>& secret);
};

/// Two-leaf tree root binding a leaf digest to a salt: root = H(leaf || H(S)).
/// Only `root` is ever shown to a limiter or collector.
struct SaltedHashCommitment {
    Digest root;
    Digest leaf;         // entry digest, or the nonce leaf in token mode
    Digest salt_digest;  // H(S)
};

/// Fungible-approval nonce. Either 32 random bytes spent by value, or an
/// ephemeral public key whose hash is spent (the matching secret key then
/// signs the entry at publication).
struct Nonce {
    enum class Kind : uint8_t { random_value, keyed };
    Kind kind = Kind::random_value;
    std::array<uint8_t, 32> value{};  // raw nonce bytes, or the public key

    /// The commitment leaf: the nonce itself, or H(public key) when keyed.
    Digest leaf() const;

    static Nonce random(Rng& rng);
    static Nonce keyed(const PublicKey& pk);
};

/// Limiter-issued credential: A = H(C || H(T)) signed by the limiter. Carries
/// only the commitment root; the holder pairs it with their own commitment.
struct TimestampedApproval {
    Digest approval_root;    // A
    Digest commitment_root;  // C
    uint64_t timestamp = 0;  // T
    Signature signature;     // over A
    PublicKey limiter_key;
};

SaltedHashCommitment shc_from_parts(const Digest& leaf, const Digest& salt_digest);
std::pair<SaltedHashCommitment, Salt> make_shc(const Digest& leaf, Rng& rng);
bool open_shc(const SaltedHashCommitment& c, const Digest& leaf, const Digest& salt_digest);

/// A = H(C || H(be64(T)))
Digest approval_root_for(const Digest& commitment_root, uint64_t timestamp);

TimestampedApproval make_timestamped_approval(const Digest& commitment_root, uint64_t now,
                                              const KeyPair& limiter);

/// Both structural invariants: the root equation and the signature.
bool check_timestamped_approval(const TimestampedApproval& a);

}  // namespace arl
