#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "arl/commitments.hpp"
#include "arl/ledger.hpp"
#include "arl/limiter.hpp"
#include "arl/proof.hpp"

namespace arl {

/// Self-contained publication: verifiable without contacting the limiter.
struct IncomingMessage {
    uint64_t id = 0;  // assigned by the transport; unique per delivery
    Entry entry;
    std::variant<PlainApproval, ApprovalProof> approval;
    std::optional<Signature> entry_signature;  // token-key mode only
};

enum class DecisionKind : uint8_t { accepted, rejected, queued };

enum class RejectReason : uint8_t {
    bad_proof,
    digest_mismatch,
    stale_timestamp,
    duplicate_nonce,
    unknown_root,
    queue_overflow,
    bad_entry_signature,
};

const char* decision_kind_name(DecisionKind k);
const char* reject_reason_name(RejectReason r);

struct AcceptDecision {
    DecisionKind kind = DecisionKind::rejected;
    std::optional<RejectReason> reason;
    bool operator==(const AcceptDecision&) const = default;
};

enum class DoubleSpendPolicy : uint8_t { first_wins, greater_hash_wins, annihilate };

/// How a peer treats messages whose public timestamp is older than max_age:
/// a feed store rejects them outright, a queue store retains them at lowest
/// priority.
enum class StalenessMode : uint8_t { reject, retain };

struct PeerConfig {
    size_t queue_capacity = 64;
    uint32_t tick_budget = 4;  // dequeues per tick; bounded processing
    DoubleSpendPolicy double_spend = DoubleSpendPolicy::first_wins;
    StalenessMode staleness = StalenessMode::retain;
    uint64_t max_age = 600;
    /// Off models the token scheme before its front-running fix: peers do
    /// not compare the proof's bound entry digest against the entry.
    bool token_entry_binding = true;
};

struct AcceptedRecord {
    uint64_t message_id = 0;
    Digest entry_digest;
    uint64_t public_timestamp = 0;
    uint64_t accepted_at = 0;
    std::optional<Digest> nonce;
};

struct DecisionRecord {
    uint64_t message_id = 0;
    uint64_t at = 0;
    AcceptDecision decision;
};

enum class DoubleSpendResolution : uint8_t { keep_existing, replace_with_incoming, drop_both };

/// Pure policy step for two verified messages spending one nonce. Identical
/// digests are the same message and never trigger a double spend.
DoubleSpendResolution resolve_double_spend(const Digest& existing, const Digest& incoming,
                                           DoubleSpendPolicy policy);

/// Deterministic single-threaded peer: verifies incoming messages, enforces
/// nonce uniqueness, prioritizes the acceptance queue by public timestamp,
/// and exposes its accepted view for cross-peer consistency checks.
class Peer {
  public:
    Peer(PeerConfig config, std::shared_ptr<const ProofBackend> proof_oracle);

    void trust_limiter_key(const PublicKey& key) { trusted_keys_.insert(key); }

    /// Replays one ledger event into the local replica of D.
    void apply_ledger_event(const LedgerEvent& event, uint64_t block_timestamp);

    AcceptDecision receive(const IncomingMessage& msg, uint64_t now);

    /// Dequeues up to tick_budget messages, most recent public timestamp
    /// first; returns the newly accepted records.
    std::vector<AcceptedRecord> queue_tick(uint64_t now);

    const std::vector<AcceptedRecord>& accepted() const { return accepted_; }
    std::set<Digest> accepted_digest_set() const;
    const std::vector<DecisionRecord>& decision_log() const { return decision_log_; }
    size_t queue_size() const { return queue_.size(); }
    const PeerConfig& config() const { return config_; }

  private:
    struct Pending {
        uint64_t priority_ts = 0;
        Digest entry_digest;
        uint64_t id = 0;
        std::optional<Digest> nonce;

        // dequeue order: newest timestamp, then digest, then id
        bool operator<(const Pending& other) const {
            if (priority_ts != other.priority_ts) return priority_ts > other.priority_ts;
            if (entry_digest != other.entry_digest) return entry_digest < other.entry_digest;
            return id < other.id;
        }
    };

    enum class NonceUse : uint8_t { queued, accepted, burned };
    struct NonceState {
        NonceUse use = NonceUse::queued;
        uint64_t message_id = 0;
        Digest entry_digest;
    };

    void record(uint64_t id, uint64_t now, AcceptDecision d);
    AcceptDecision reject(uint64_t id, uint64_t now, RejectReason reason);
    bool remove_message(uint64_t id);  // from queue or accepted list
    AcceptDecision admit(const IncomingMessage& msg, uint64_t now, uint64_t priority_ts,
                         std::optional<Digest> nonce);

    PeerConfig config_;
    std::shared_ptr<const ProofBackend> oracle_;
    std::set<PublicKey> trusted_keys_;
    std::map<Digest, uint64_t> anchored_;  // replica of D with block timestamps
    std::set<Pending> queue_;
    std::map<Digest, NonceState> nonces_;
    std::vector<AcceptedRecord> accepted_;
    std::vector<DecisionRecord> decision_log_;
};

/// Replays an observed proof with the attacker's own entry. The proof is
/// forwarded verbatim; `forged_signature` stands in for the entry signature
/// the attacker cannot produce in token-key mode.
AcceptDecision front_run_attempt(Peer& peer, const ApprovalProof& stolen_proof,
                                 const Entry& attacker_entry, uint64_t now, uint64_t message_id,
                                 std::optional<Signature> forged_signature = std::nullopt);

}  // namespace arl
