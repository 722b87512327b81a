#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <variant>

#include "arl/bytes.hpp"
#include "arl/ed25519.hpp"
#include "arl/merkle.hpp"

namespace arl {

/// The five verification relations. Wire ids are fixed.
enum class RelationId : uint8_t {
    sig = 1,         // commitment opens to the entry digest and is limiter-signed
    time = 2,        // sig plus a signed timestamp within dt of the public one
    token_hash = 3,  // time over a nonce leaf; entry digest bound as a public input
    token_key = 4,   // time over H(nonce public key); entry bound by signature outside
    inclusion = 5,   // commitment included in an anchored collector tree
};

const char* relation_name(RelationId id);

// --- public inputs: everything a verifier (and the whole network) sees -------

struct SigPublic {
    Digest entry_digest;
    PublicKey limiter_key;
    bool operator==(const SigPublic&) const = default;
};

struct TimePublic {
    Digest entry_digest;
    PublicKey limiter_key;
    uint64_t public_timestamp = 0;  // T'
    uint64_t dt_bound = 0;          // dT
    bool operator==(const TimePublic&) const = default;
};

struct TokenHashPublic {
    Digest nonce_leaf;  // Q
    PublicKey limiter_key;
    uint64_t public_timestamp = 0;
    uint64_t dt_bound = 0;
    Digest entry_digest;  // bound into the proof, not constrained by the relation
    bool operator==(const TokenHashPublic&) const = default;
};

struct TokenKeyPublic {
    PublicKey nonce_key;
    PublicKey limiter_key;
    uint64_t public_timestamp = 0;
    uint64_t dt_bound = 0;
    bool operator==(const TokenKeyPublic&) const = default;
};

struct InclusionPublic {
    Digest entry_digest;
    Digest collector_root;  // R
    uint32_t tree_depth = 0;
    bool operator==(const InclusionPublic&) const = default;
};

using PublicInputs =
    std::variant<SigPublic, TimePublic, TokenHashPublic, TokenKeyPublic, InclusionPublic>;

RelationId relation_of(const PublicInputs& pub);

// --- witnesses: never serialized into any peer- or limiter-facing message ----

struct SigWitness {
    Digest salt_digest;
    Digest commitment_root;
    Signature signature;  // over C
};

/// Shared by the three timestamped relations.
struct TimedWitness {
    Digest salt_digest;
    Digest commitment_root;
    Digest approval_root;
    uint64_t approved_at = 0;  // T, the limiter's private timestamp
    Signature signature;       // over A
};

struct InclusionWitness {
    Digest salt_digest;
    MerklePath path;
};

using Witness = std::variant<SigWitness, TimedWitness, InclusionWitness>;

/// Pure predicate for each relation over (public, witness).
/// Throws Error(shape_mismatch) when the witness kind does not fit the
/// relation; all other failures return false.
bool relation_holds(const PublicInputs& pub, const Witness& wit);

// --- proofs ------------------------------------------------------------------

struct ApprovalProof {
    PublicInputs public_inputs;
    Bytes blob;  // backend-defined, opaque

    RelationId relation() const { return relation_of(public_inputs); }
    bool operator==(const ApprovalProof&) const = default;
};

/// Canonical encodings. Wire layout: relation id byte, u32-BE length-prefixed
/// public fields in declaration order, u32-BE length-prefixed blob. Integers
/// are 8-byte big-endian.
Bytes encode_public_inputs(const PublicInputs& pub);
Bytes encode_witness(const Witness& wit);
Bytes serialize_proof(const ApprovalProof& proof);
ApprovalProof parse_proof(ByteView wire);  // throws Error(parse_error)

class ProofBackend {
  public:
    virtual ~ProofBackend() = default;

    /// Requires relation_holds(pub, wit); throws Error(relation_unsatisfied)
    /// otherwise — the prover refuses to prove falsehoods.
    virtual ApprovalProof prove(const PublicInputs& pub, const Witness& wit) = 0;

    /// Deterministic; malformed blobs return false, never throw.
    virtual bool verify(const ApprovalProof& proof) const = 0;
};

/// Development backend. The blob is a hash binding over (relation, public
/// inputs, witness); acceptance is membership in this oracle's registry of
/// issued blobs with matching relation and public inputs. Not cryptographic:
/// it reproduces the message flow, binding, and non-leakage properties so the
/// protocol around it can be tested, and a real zero-knowledge backend slots
/// behind the same interface.
class DevProofBackend final : public ProofBackend {
  public:
    ApprovalProof prove(const PublicInputs& pub, const Witness& wit) override;
    bool verify(const ApprovalProof& proof) const override;

    size_t issued_count() const;

    /// Registry persistence, for tooling that proves and verifies in
    /// separate processes.
    void save_registry(const std::string& path) const;
    void load_registry(const std::string& path);

  private:
    struct Issued {
        RelationId relation;
        Bytes public_encoding;
    };

    mutable std::shared_mutex mutex_;
    std::map<Bytes, Issued> issued_;
};

}  // namespace arl
