#include "arl/peer.hpp"

#include <algorithm>

namespace arl {

const char* decision_kind_name(DecisionKind k) {
    switch (k) {
        case DecisionKind::accepted: return "accepted";
        case DecisionKind::rejected: return "rejected";
        case DecisionKind::queued: return "queued";
    }
    return "unknown";
}

const char* reject_reason_name(RejectReason r) {
    switch (r) {
        case RejectReason::bad_proof: return "bad_proof";
        case RejectReason::digest_mismatch: return "digest_mismatch";
        case RejectReason::stale_timestamp: return "stale_timestamp";
        case RejectReason::duplicate_nonce: return "duplicate_nonce";
        case RejectReason::unknown_root: return "unknown_root";
        case RejectReason::queue_overflow: return "queue_overflow";
        case RejectReason::bad_entry_signature: return "bad_entry_signature";
    }
    return "unknown";
}

DoubleSpendResolution resolve_double_spend(const Digest& existing, const Digest& incoming,
                                           DoubleSpendPolicy policy) {
    if (existing == incoming) return DoubleSpendResolution::keep_existing;  // idempotent redelivery
    switch (policy) {
        case DoubleSpendPolicy::first_wins:
            return DoubleSpendResolution::keep_existing;
        case DoubleSpendPolicy::greater_hash_wins:
            return incoming > existing ? DoubleSpendResolution::replace_with_incoming
                                       : DoubleSpendResolution::keep_existing;
        case DoubleSpendPolicy::annihilate:
            return DoubleSpendResolution::drop_both;
    }
    return DoubleSpendResolution::keep_existing;
}

Peer::Peer(PeerConfig config, std::shared_ptr<const ProofBackend> proof_oracle)
    : config_(config), oracle_(std::move(proof_oracle)) {}

void Peer::apply_ledger_event(const LedgerEvent& event, uint64_t block_timestamp) {
    anchored_.emplace(event.digest, block_timestamp);
}

void Peer::record(uint64_t id, uint64_t now, AcceptDecision d) {
    decision_log_.push_back({id, now, d});
}

AcceptDecision Peer::reject(uint64_t id, uint64_t now, RejectReason reason) {
    AcceptDecision d{DecisionKind::rejected, reason};
    record(id, now, d);
    return d;
}

bool Peer::remove_message(uint64_t id) {
    for (auto it = queue_.begin(); it != queue_.end(); ++it) {
        if (it->id == id) {
            queue_.erase(it);
            return true;
        }
    }
    auto it = std::find_if(accepted_.begin(), accepted_.end(),
                           [&](const AcceptedRecord& r) { return r.message_id == id; });
    if (it != accepted_.end()) {
        accepted_.erase(it);
        return true;
    }
    return false;
}

AcceptDecision Peer::admit(const IncomingMessage& msg, uint64_t now, uint64_t priority_ts,
                           std::optional<Digest> nonce) {
    if (config_.staleness == StalenessMode::reject && config_.max_age < now &&
        priority_ts < now - config_.max_age) {
        if (nonce) nonces_.erase(*nonce);  // never admitted, nonce stays spendable
        return reject(msg.id, now, RejectReason::stale_timestamp);
    }

    Pending pending{priority_ts, msg.entry.digest, msg.id, nonce};
    if (queue_.size() >= config_.queue_capacity) {
        // oldest (lowest-priority) item gives way; an incoming message that
        // would itself be the oldest is dropped instead
        auto oldest = std::prev(queue_.end());
        if (pending < *oldest) {
            if (oldest->nonce) nonces_.erase(*oldest->nonce);
            record(oldest->id, now, {DecisionKind::rejected, RejectReason::queue_overflow});
            queue_.erase(oldest);
        } else {
            if (nonce) nonces_.erase(*nonce);  // was registered by caller
            return reject(msg.id, now, RejectReason::queue_overflow);
        }
    }
    queue_.insert(pending);
    AcceptDecision d{DecisionKind::queued, std::nullopt};
    record(msg.id, now, d);
    return d;
}

AcceptDecision Peer::receive(const IncomingMessage& msg, uint64_t now) {
    // 1. the approval itself
    uint64_t priority_ts = now;
    std::optional<Digest> nonce;

    if (const auto* plain = std::get_if<PlainApproval>(&msg.approval)) {
        if (!trusted_keys_.contains(plain->limiter_key) ||
            !verify_signature(plain->limiter_key, plain->signed_digest.view(), plain->signature))
            return reject(msg.id, now, RejectReason::bad_proof);
        // 2. the signature must cover this entry
        if (plain->signed_digest != msg.entry.digest)
            return reject(msg.id, now, RejectReason::digest_mismatch);
    } else {
        const auto& proof = std::get<ApprovalProof>(msg.approval);
        const PublicInputs& pub = proof.public_inputs;

        const PublicKey* limiter_key = std::visit(
            [](const auto& p) -> const PublicKey* {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, InclusionPublic>)
                    return nullptr;  // the ledger is the authority
                else
                    return &p.limiter_key;
            },
            pub);
        if (limiter_key && !trusted_keys_.contains(*limiter_key))
            return reject(msg.id, now, RejectReason::bad_proof);
        if (!oracle_->verify(proof)) return reject(msg.id, now, RejectReason::bad_proof);

        // 2. entry binding
        if (const auto* p = std::get_if<SigPublic>(&pub)) {
            if (p->entry_digest != msg.entry.digest)
                return reject(msg.id, now, RejectReason::digest_mismatch);
        } else if (const auto* p = std::get_if<TimePublic>(&pub)) {
            if (p->entry_digest != msg.entry.digest)
                return reject(msg.id, now, RejectReason::digest_mismatch);
            priority_ts = p->public_timestamp;
        } else if (const auto* p = std::get_if<TokenHashPublic>(&pub)) {
            if (config_.token_entry_binding && p->entry_digest != msg.entry.digest)
                return reject(msg.id, now, RejectReason::digest_mismatch);
            priority_ts = p->public_timestamp;
            nonce = p->nonce_leaf;
        } else if (const auto* p = std::get_if<TokenKeyPublic>(&pub)) {
            // 3. entry signature under the nonce key, before any nonce
            // bookkeeping so forgeries cannot trigger double-spend handling
            if (!msg.entry_signature ||
                !verify_signature(p->nonce_key, msg.entry.digest.view(), *msg.entry_signature))
                return reject(msg.id, now, RejectReason::bad_entry_signature);
            priority_ts = p->public_timestamp;
            nonce = sha256(p->nonce_key.view());
        } else {
            const auto& inc = std::get<InclusionPublic>(pub);
            if (inc.entry_digest != msg.entry.digest)
                return reject(msg.id, now, RejectReason::digest_mismatch);
            auto it = anchored_.find(inc.collector_root);
            if (it == anchored_.end()) return reject(msg.id, now, RejectReason::unknown_root);
            priority_ts = it->second;
        }
    }

    // 3. nonce uniqueness and double-spend policy
    if (nonce) {
        auto it = nonces_.find(*nonce);
        if (it != nonces_.end()) {
            NonceState& state = it->second;
            if (state.use == NonceUse::burned)
                return reject(msg.id, now, RejectReason::duplicate_nonce);
            switch (resolve_double_spend(state.entry_digest, msg.entry.digest,
                                         config_.double_spend)) {
                case DoubleSpendResolution::keep_existing:
                    return reject(msg.id, now, RejectReason::duplicate_nonce);
                case DoubleSpendResolution::replace_with_incoming:
                    remove_message(state.message_id);
                    record(state.message_id, now,
                           {DecisionKind::rejected, RejectReason::duplicate_nonce});
                    nonces_.erase(it);
                    break;
                case DoubleSpendResolution::drop_both:
                    remove_message(state.message_id);
                    record(state.message_id, now,
                           {DecisionKind::rejected, RejectReason::duplicate_nonce});
                    state.use = NonceUse::burned;  // nonce is spent forever
                    return reject(msg.id, now, RejectReason::duplicate_nonce);
            }
        }
        nonces_[*nonce] = NonceState{NonceUse::queued, msg.id, msg.entry.digest};
    }

    // 4. queue admission
    return admit(msg, now, priority_ts, nonce);
}

std::vector<AcceptedRecord> Peer::queue_tick(uint64_t now) {
    std::vector<AcceptedRecord> out;
    for (uint32_t i = 0; i < config_.tick_budget && !queue_.empty(); ++i) {
        Pending next = *queue_.begin();
        queue_.erase(queue_.begin());
        AcceptedRecord rec{next.id, next.entry_digest, next.priority_ts, now, next.nonce};
        accepted_.push_back(rec);
        if (next.nonce) {
            auto it = nonces_.find(*next.nonce);
            if (it != nonces_.end() && it->second.message_id == next.id)
                it->second.use = NonceUse::accepted;
        }
        record(next.id, now, {DecisionKind::accepted, std::nullopt});
        out.push_back(std::move(rec));
    }
    return out;
}

std::set<Digest> Peer::accepted_digest_set() const {
    std::set<Digest> out;
    for (const auto& r : accepted_) out.insert(r.entry_digest);
    return out;
}

AcceptDecision front_run_attempt(Peer& peer, const ApprovalProof& stolen_proof,
                                 const Entry& attacker_entry, uint64_t now, uint64_t message_id,
                                 std::optional<Signature> forged_signature) {
    IncomingMessage msg;
    msg.id = message_id;
    msg.entry = attacker_entry;
    msg.approval = stolen_proof;
    msg.entry_signature = forged_signature;
    return peer.receive(msg, now);
}

}  // namespace arl
