#include "arl/simulator.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <queue>

#include <nlohmann/json.hpp>

#include "arl/errors.hpp"
#include "arl/rng.hpp"

namespace arl {

namespace {

using nlohmann::ordered_json;

constexpr uint64_t kVictimId = 999'999;  // front-run target, distinct from regular users

uint8_t request_mode_byte(const std::string& mode) {
    if (mode == "naive") return 0;
    if (mode == "shc") return 1;
    if (mode == "timestamped") return 2;
    if (mode == "token") return 3;
    return 4;  // collector
}

class Simulation {
  public:
    explicit Simulation(const Scenario& sc)
        : sc_(sc),
          backend_(std::make_shared<DevProofBackend>()),
          key_rng_(Rng::derive(sc.seed, 1)),
          jitter_rng_(Rng::derive(sc.seed, 2)) {
        sc_.validate();
        if (sc_.attacker.script == AttackScript::flood && !flood_mode_supported())
            throw Error(Errc::bad_config, "flood script needs shc, timestamped or token mode");

        out_.scenario = sc_;

        std::vector<KeyPair> keys;
        for (uint32_t v = 0; v < sc_.validators; ++v) keys.push_back(KeyPair::generate(key_rng_));
        RatePolicy policy{sc_.t_l, sc_.capacity, sc_.global_cap};
        federation_.emplace(keys, policy, sc_.coordination);

        if (sc_.mode == ScenarioMode::collector) {
            ledger_.emplace(sc_.ledger);
            collector_.emplace(sc_.collector, *ledger_);
        }

        for (uint32_t p = 0; p < sc_.peer_count; ++p) {
            peers_.emplace_back(sc_.peer, backend_);
            for (const auto& k : federation_->keys()) peers_.back().trust_limiter_key(k);
        }
        peer_log_cursor_.assign(sc_.peer_count, 0);
    }

    RunTranscript execute() {
        for (uint64_t t = 0; t < sc_.duration; ++t) step(t, /*drain=*/false);

        // drain: no new actions, but in-flight work completes so every
        // message reaches a terminal decision
        uint64_t t = sc_.duration;
        const uint64_t cutoff = sc_.duration + 100'000;
        while (t < cutoff && (!scheduled_.empty() || pending_queue_items() || pending_receipts())) {
            step(t, /*drain=*/true);
            ++t;
        }

        for (auto& peer : peers_) {
            std::vector<std::string> set;
            for (const auto& rec : peer.accepted()) set.push_back(to_hex(rec.entry_digest));
            out_.peer_accepted.push_back(std::move(set));
        }
        return std::move(out_);
    }

  private:
    // --- per-tick phases -----------------------------------------------------

    void step(uint64_t t, bool drain) {
        if (ledger_) {
            ledger_->advance(t);
            collector_->tick(t);
            note_seals(t);
            sync_ledger_events(t);
        }
        if (!drain) {
            act_users(t);
            act_attacker(t);
        } else if (ledger_) {
            redeem_and_publish(t);  // users may still be waiting on a seal
        }
        deliver_due(t);
        for (auto& peer : peers_) peer.queue_tick(t);
        harvest_decisions(t);
    }

    bool flood_mode_supported() const {
        switch (sc_.mode) {
            case ScenarioMode::shc:
            case ScenarioMode::timestamped:
            case ScenarioMode::token_h:
            case ScenarioMode::token_k:
                return true;
            default:
                return false;
        }
    }

    bool pending_queue_items() const {
        for (const auto& p : peers_)
            if (p.queue_size() > 0) return true;
        return false;
    }

    bool pending_receipts() const { return !waiting_.empty(); }

    Rng& user_rng(uint64_t user) {
        auto it = user_rngs_.find(user);
        if (it == user_rngs_.end())
            it = user_rngs_.emplace(user, Rng::derive(sc_.seed, 0x1000 + user)).first;
        return it->second;
    }

    Entry fresh_entry(Rng& rng) {
        Bytes content(24);
        rng.fill(content);
        return Entry::from_content(std::move(content));
    }

    uint64_t pick_public_timestamp(Rng& rng, uint64_t approved_at) {
        uint64_t lo = approved_at >= sc_.dt ? approved_at - sc_.dt : 0;
        return rng.range(lo, approved_at + sc_.dt);
    }

    // --- limiter interaction ---------------------------------------------------

    ApprovalOutcome request(uint64_t requester, uint32_t validator, const Digest& submitted,
                            LimiterMode mode, uint64_t t) {
        ApprovalOutcome outcome =
            federation_->request(validator, RequesterId{requester}, submitted, mode, t);
        Bytes wire;
        auto req = be64(requester);
        append(wire, ByteView(req.data(), req.size()));
        wire.push_back(request_mode_byte(limiter_mode_name(mode)));
        append(wire, submitted.view());
        out_.requests.push_back({next_seq(), t, requester, validator, limiter_mode_name(mode),
                                 to_hex(submitted), was_granted(outcome), to_hex(wire)});
        return outcome;
    }

    void record_collector_request(uint64_t requester, const Digest& submitted, bool granted,
                                  uint64_t t) {
        Bytes wire;
        auto req = be64(requester);
        append(wire, ByteView(req.data(), req.size()));
        wire.push_back(request_mode_byte("collector"));
        append(wire, submitted.view());
        out_.requests.push_back(
            {next_seq(), t, requester, 0, "collector", to_hex(submitted), granted, to_hex(wire)});
    }

    // --- publication and delivery ----------------------------------------------

    uint64_t publish(uint64_t author, bool attacker, const std::string& relation, Entry entry,
                     std::variant<PlainApproval, ApprovalProof> approval,
                     std::optional<Signature> entry_sig, uint64_t public_ts,
                     const std::string& nonce_hex, uint64_t t,
                     const std::vector<uint64_t>* delays = nullptr) {
        const uint64_t id = next_message_id_++;
        out_.publications.push_back({next_seq(), t, id, author, attacker, relation,
                                     to_hex(entry.digest), to_hex(entry.content), public_ts,
                                     nonce_hex});
        IncomingMessage msg{id, std::move(entry), std::move(approval), entry_sig};
        for (uint32_t p = 0; p < sc_.peer_count; ++p) {
            uint64_t delay = delays ? (*delays)[p]
                                    : sc_.delivery.base_delay +
                                          (sc_.delivery.jitter ? jitter_rng_.below(sc_.delivery.jitter + 1)
                                                               : 0);
            scheduled_.push(Delivery{t + delay, delivery_order_++, p, msg});
        }
        return id;
    }

    void deliver_due(uint64_t t) {
        while (!scheduled_.empty() && scheduled_.top().tick <= t) {
            Delivery d = scheduled_.top();
            scheduled_.pop();
            out_.deliveries.push_back({next_seq(), t, d.msg.id, d.peer});
            peers_[d.peer].receive(d.msg, t);
        }
    }

    void harvest_decisions(uint64_t t) {
        for (uint32_t p = 0; p < peers_.size(); ++p) {
            const auto& log = peers_[p].decision_log();
            for (size_t i = peer_log_cursor_[p]; i < log.size(); ++i) {
                const DecisionRecord& rec = log[i];
                out_.decisions.push_back(
                    {next_seq(), t, p, rec.message_id, decision_kind_name(rec.decision.kind),
                     rec.decision.reason ? reject_reason_name(*rec.decision.reason) : ""});
            }
            peer_log_cursor_[p] = log.size();
        }
    }

    void sync_ledger_events(uint64_t t) {
        const auto& events = ledger_->events();
        for (size_t i = ledger_events_seen_; i < events.size(); ++i) {
            const uint64_t block_ts = ledger_->block_timestamp(events[i].block_index);
            for (auto& peer : peers_) peer.apply_ledger_event(events[i], block_ts);
            out_.ledger_events.push_back(
                {next_seq(), t, events[i].block_index, to_hex(events[i].digest)});
        }
        ledger_events_seen_ = events.size();
    }

    void note_seals(uint64_t t) {
        while (seals_seen_ < collector_->current_batch()) {
            const uint64_t batch = seals_seen_++;
            auto& submitted = submitted_roots_[batch];
            bool paths_ok = !submitted.empty();
            Digest root{};
            uint64_t block = 0;
            for (const auto& [index, shc_root] : submitted) {
                const InclusionGrant& grant = collector_->redeem({batch, index});
                root = grant.root;
                block = grant.block_index;
                paths_ok = paths_ok && merkle_verify(shc_root, grant.path, grant.root) &&
                           ledger_->contains(grant.root);
            }
            out_.seals.push_back({next_seq(), t, batch, static_cast<uint32_t>(submitted.size()),
                                  to_hex(root), block, uint32_t(Digest::size), paths_ok});
        }
    }

    // --- honest users ------------------------------------------------------------

    void act_users(uint64_t t) {
        if (ledger_) redeem_and_publish(t);
        if (sc_.users.count == 0) return;
        for (uint32_t u = 0; u < sc_.users.count; ++u) {
            const uint64_t offset =
                sc_.users.stagger ? (uint64_t(u) * sc_.users.post_period) / sc_.users.count : 0;
            if (t % sc_.users.post_period != offset % sc_.users.post_period) continue;
            post_once(u, t);
        }
    }

    void post_once(uint64_t user, uint64_t t) {
        Rng& rng = user_rng(user);
        Entry entry = fresh_entry(rng);
        const uint32_t validator =
            sc_.mode == ScenarioMode::federated ? uint32_t(user % sc_.validators) : 0;

        switch (sc_.mode) {
            case ScenarioMode::naive: {
                auto outcome = request(user, validator, entry.digest, LimiterMode::naive, t);
                if (const auto* plain = std::get_if<PlainApproval>(&outcome))
                    publish(user, false, "plain", std::move(entry), *plain, {}, t, "", t);
                break;
            }
            case ScenarioMode::shc: {
                auto [c, salt] = make_shc(entry.digest, rng);
                auto outcome = request(user, validator, c.root, LimiterMode::shc, t);
                if (const auto* plain = std::get_if<PlainApproval>(&outcome)) {
                    SigPublic pub{entry.digest, plain->limiter_key};
                    SigWitness wit{salt.digest, c.root, plain->signature};
                    publish(user, false, "sig", std::move(entry), backend_->prove(pub, wit), {}, t,
                            "", t);
                }
                break;
            }
            case ScenarioMode::timestamped:
            case ScenarioMode::federated: {
                auto [c, salt] = make_shc(entry.digest, rng);
                auto outcome = request(user, validator, c.root, LimiterMode::timestamped, t);
                if (const auto* a = std::get_if<TimestampedApproval>(&outcome)) {
                    const uint64_t t_pub = pick_public_timestamp(rng, a->timestamp);
                    TimePublic pub{entry.digest, a->limiter_key, t_pub, sc_.dt};
                    TimedWitness wit{salt.digest, c.root, a->approval_root, a->timestamp,
                                     a->signature};
                    publish(user, false, "time", std::move(entry), backend_->prove(pub, wit), {},
                            t_pub, "", t);
                }
                break;
            }
            case ScenarioMode::token_h: {
                Nonce q = Nonce::random(rng);
                auto [c, salt] = make_shc(q.leaf(), rng);
                auto outcome = request(user, validator, c.root, LimiterMode::token, t);
                if (const auto* a = std::get_if<TimestampedApproval>(&outcome)) {
                    const uint64_t t_pub = pick_public_timestamp(rng, a->timestamp);
                    TokenHashPublic pub{q.leaf(), a->limiter_key, t_pub, sc_.dt, entry.digest};
                    TimedWitness wit{salt.digest, c.root, a->approval_root, a->timestamp,
                                     a->signature};
                    publish(user, false, "token-hash", std::move(entry),
                            backend_->prove(pub, wit), {}, t_pub, to_hex(q.leaf()), t);
                }
                break;
            }
            case ScenarioMode::token_k: {
                KeyPair nonce_key = KeyPair::generate(rng);
                Nonce q = Nonce::keyed(nonce_key.pk);
                auto [c, salt] = make_shc(q.leaf(), rng);
                auto outcome = request(user, validator, c.root, LimiterMode::token, t);
                if (const auto* a = std::get_if<TimestampedApproval>(&outcome)) {
                    const uint64_t t_pub = pick_public_timestamp(rng, a->timestamp);
                    TokenKeyPublic pub{nonce_key.pk, a->limiter_key, t_pub, sc_.dt};
                    TimedWitness wit{salt.digest, c.root, a->approval_root, a->timestamp,
                                     a->signature};
                    Signature entry_sig = sign(nonce_key.sk, entry.digest.view());
                    publish(user, false, "token-key", std::move(entry), backend_->prove(pub, wit),
                            entry_sig, t_pub, to_hex(q.leaf()), t);
                }
                break;
            }
            case ScenarioMode::collector: {
                auto [c, salt] = make_shc(entry.digest, rng);
                try {
                    SubmitReceipt receipt = collector_->submit(c.root, t);
                    record_collector_request(user, c.root, true, t);
                    submitted_roots_[receipt.batch].emplace_back(receipt.index, c.root);
                    waiting_.push_back({user, receipt, std::move(entry), salt});
                } catch (const Error& e) {
                    if (e.code() != Errc::batch_full) throw;
                    record_collector_request(user, c.root, false, t);
                }
                break;
            }
        }
    }

    void redeem_and_publish(uint64_t t) {
        std::vector<WaitingSubmission> still_waiting;
        for (auto& w : waiting_) {
            if (collector_->current_batch() <= w.receipt.batch) {
                still_waiting.push_back(std::move(w));
                continue;
            }
            const InclusionGrant& grant = collector_->redeem(w.receipt);
            InclusionPublic pub{w.entry.digest, grant.root, grant.depth};
            InclusionWitness wit{w.salt.digest, grant.path};
            const uint64_t block_ts = ledger_->block_timestamp(grant.block_index);
            publish(w.user, w.user == kAttackerId, "inclusion", std::move(w.entry),
                    backend_->prove(pub, Witness{wit}), {}, block_ts, "", t);
        }
        waiting_ = std::move(still_waiting);
    }

    // --- adversary ---------------------------------------------------------------

    void act_attacker(uint64_t t) {
        switch (sc_.attacker.script) {
            case AttackScript::none:
                return;
            case AttackScript::flood:
                attacker_flood(t);
                return;
            case AttackScript::rotation:
                attacker_rotation(t);
                return;
            case AttackScript::double_spend:
                if (t == sc_.attacker.burst_tick) attacker_double_spend(t);
                return;
            case AttackScript::front_run:
                if (t == sc_.attacker.burst_tick) attacker_front_run(t);
                return;
        }
    }

    struct HoardedCredential {
        Entry entry;               // pre-composed except in token modes
        Salt salt;
        Digest commitment_root;
        std::optional<PlainApproval> plain;
        std::optional<TimestampedApproval> timed;
        std::optional<Nonce> nonce;
        std::optional<KeyPair> nonce_key;
    };

    void attacker_flood(uint64_t t) {
        Rng& rng = user_rng(kAttackerId);
        if (t < sc_.attacker.hoard_window) {
            HoardedCredential cred{fresh_entry(rng), Salt::random(rng), {}, {}, {}, {}, {}};
            LimiterMode mode = LimiterMode::shc;
            Digest leaf = cred.entry.digest;
            if (sc_.mode == ScenarioMode::token_h) {
                cred.nonce = Nonce::random(rng);
                leaf = cred.nonce->leaf();
                mode = LimiterMode::token;
            } else if (sc_.mode == ScenarioMode::token_k) {
                cred.nonce_key = KeyPair::generate(rng);
                cred.nonce = Nonce::keyed(cred.nonce_key->pk);
                leaf = cred.nonce->leaf();
                mode = LimiterMode::token;
            } else if (sc_.mode == ScenarioMode::timestamped) {
                mode = LimiterMode::timestamped;
            }
            cred.commitment_root = sha256_concat(leaf, cred.salt.digest);

            auto outcome = request(kAttackerId, 0, cred.commitment_root, mode, t);
            if (const auto* plain = std::get_if<PlainApproval>(&outcome)) {
                cred.plain = *plain;
                hoard_.push_back(std::move(cred));
            } else if (const auto* timed = std::get_if<TimestampedApproval>(&outcome)) {
                cred.timed = *timed;
                hoard_.push_back(std::move(cred));
            }
            return;
        }
        if (t != sc_.attacker.burst_tick) return;

        for (auto& cred : hoard_) {
            if (sc_.mode == ScenarioMode::shc) {
                SigPublic pub{cred.entry.digest, cred.plain->limiter_key};
                SigWitness wit{cred.salt.digest, cred.commitment_root, cred.plain->signature};
                publish(kAttackerId, true, "sig", std::move(cred.entry),
                        backend_->prove(pub, wit), {}, t, "", t);
                continue;
            }
            const TimestampedApproval& a = *cred.timed;
            // spoof forward as far as the window allows
            const uint64_t t_pub = a.timestamp + sc_.dt;
            TimedWitness wit{cred.salt.digest, cred.commitment_root, a.approval_root, a.timestamp,
                             a.signature};
            if (sc_.mode == ScenarioMode::timestamped) {
                TimePublic pub{cred.entry.digest, a.limiter_key, t_pub, sc_.dt};
                publish(kAttackerId, true, "time", std::move(cred.entry),
                        backend_->prove(pub, wit), {}, t_pub, "", t);
            } else if (sc_.mode == ScenarioMode::token_h) {
                TokenHashPublic pub{cred.nonce->leaf(), a.limiter_key, t_pub, sc_.dt,
                                    cred.entry.digest};
                publish(kAttackerId, true, "token-hash", std::move(cred.entry),
                        backend_->prove(pub, wit), {}, t_pub, to_hex(cred.nonce->leaf()), t);
            } else {
                TokenKeyPublic pub{cred.nonce_key->pk, a.limiter_key, t_pub, sc_.dt};
                Signature entry_sig = sign(cred.nonce_key->sk, cred.entry.digest.view());
                publish(kAttackerId, true, "token-key", std::move(cred.entry),
                        backend_->prove(pub, wit), entry_sig, t_pub, to_hex(cred.nonce->leaf()),
                        t);
            }
        }
        hoard_.clear();
    }

    void attacker_rotation(uint64_t t) {
        Rng& rng = user_rng(kAttackerId);
        Digest c_root;
        c_root.bytes = rng.bytes32();
        const uint32_t validator = uint32_t(rotation_counter_++ % sc_.validators);
        request(kAttackerId, validator, c_root, LimiterMode::timestamped, t);
    }

    /// One token, two entries, opposite delivery orders per peer.
    void attacker_double_spend(uint64_t t) {
        Rng& rng = user_rng(kAttackerId);
        const bool keyed = sc_.mode == ScenarioMode::token_k;
        std::optional<KeyPair> nonce_key;
        Nonce q = keyed ? (nonce_key = KeyPair::generate(rng), Nonce::keyed(nonce_key->pk))
                        : Nonce::random(rng);
        auto [c, salt] = make_shc(q.leaf(), rng);
        auto outcome = request(kAttackerId, 0, c.root, LimiterMode::token, t);
        const auto* a = std::get_if<TimestampedApproval>(&outcome);
        if (!a) return;

        Entry ea = fresh_entry(rng);
        Entry eb = fresh_entry(rng);
        TimedWitness wit{salt.digest, c.root, a->approval_root, a->timestamp, a->signature};
        const uint64_t t_pub = a->timestamp;

        auto build = [&](const Entry& e) -> std::pair<ApprovalProof, std::optional<Signature>> {
            if (keyed) {
                TokenKeyPublic pub{nonce_key->pk, a->limiter_key, t_pub, sc_.dt};
                return {backend_->prove(pub, wit), sign(nonce_key->sk, e.digest.view())};
            }
            TokenHashPublic pub{q.leaf(), a->limiter_key, t_pub, sc_.dt, e.digest};
            return {backend_->prove(pub, wit), std::nullopt};
        };
        auto [proof_a, sig_a] = build(ea);
        auto [proof_b, sig_b] = build(eb);

        // per-peer delivery orders from the scenario, cycled
        std::vector<uint64_t> delay_a(sc_.peer_count), delay_b(sc_.peer_count);
        for (uint32_t p = 0; p < sc_.peer_count; ++p) {
            const std::string& order =
                sc_.attacker.ds_orders[p % sc_.attacker.ds_orders.size()];
            delay_a[p] = order == "ab" ? 1 : 2;
            delay_b[p] = order == "ab" ? 2 : 1;
        }
        publish(kAttackerId, true, keyed ? "token-key" : "token-hash", std::move(ea), proof_a,
                sig_a, t_pub, to_hex(q.leaf()), t, &delay_a);
        publish(kAttackerId, true, keyed ? "token-key" : "token-hash", std::move(eb), proof_b,
                sig_b, t_pub, to_hex(q.leaf()), t, &delay_b);
    }

    /// A victim publishes; the attacker reuses the observed proof for its own
    /// entry and races the victim's delivery.
    void attacker_front_run(uint64_t t) {
        Rng& victim_rng = user_rng(kVictimId);
        Rng& rng = user_rng(kAttackerId);
        const bool keyed = sc_.mode == ScenarioMode::token_k;

        std::optional<KeyPair> nonce_key;
        Nonce q = keyed ? (nonce_key = KeyPair::generate(victim_rng), Nonce::keyed(nonce_key->pk))
                        : Nonce::random(victim_rng);
        auto [c, salt] = make_shc(q.leaf(), victim_rng);
        auto outcome = request(kVictimId, 0, c.root, LimiterMode::token, t);
        const auto* a = std::get_if<TimestampedApproval>(&outcome);
        if (!a) return;

        Entry honest_entry = fresh_entry(victim_rng);
        TimedWitness wit{salt.digest, c.root, a->approval_root, a->timestamp, a->signature};
        const uint64_t t_pub = a->timestamp;

        ApprovalProof honest_proof;
        std::optional<Signature> honest_sig;
        if (keyed) {
            TokenKeyPublic pub{nonce_key->pk, a->limiter_key, t_pub, sc_.dt};
            honest_proof = backend_->prove(pub, wit);
            honest_sig = sign(nonce_key->sk, honest_entry.digest.view());
        } else {
            TokenHashPublic pub{q.leaf(), a->limiter_key, t_pub, sc_.dt, honest_entry.digest};
            honest_proof = backend_->prove(pub, wit);
        }

        const uint64_t honest_delay = sc_.attacker.attacker_first ? 2 : 1;
        const uint64_t attack_delay = sc_.attacker.attacker_first ? 1 : 2;
        std::vector<uint64_t> honest_delays(sc_.peer_count, honest_delay);
        std::vector<uint64_t> attack_delays(sc_.peer_count, attack_delay);

        Entry attacker_entry = fresh_entry(rng);
        if (keyed) {
            // proof reused verbatim; the attacker signs with its own key
            KeyPair attacker_key = KeyPair::generate(rng);
            Signature forged = sign(attacker_key.sk, attacker_entry.digest.view());
            publish(kAttackerId, true, "token-key", attacker_entry, honest_proof, forged, t_pub,
                    to_hex(q.leaf()), t, &attack_delays);
        } else if (sc_.peer.token_entry_binding) {
            // verbatim replay (bound digest mismatches the entry) ...
            publish(kAttackerId, true, "token-hash", attacker_entry, honest_proof, {}, t_pub,
                    to_hex(q.leaf()), t, &attack_delays);
            // ... and a rebound copy (public inputs no longer match the proof)
            ApprovalProof rebound = honest_proof;
            std::get<TokenHashPublic>(rebound.public_inputs).entry_digest = attacker_entry.digest;
            publish(kAttackerId, true, "token-hash", attacker_entry, rebound, {}, t_pub,
                    to_hex(q.leaf()), t, &attack_delays);
        } else {
            // unfixed scheme: the stolen proof is simply valid for any entry
            publish(kAttackerId, true, "token-hash", attacker_entry, honest_proof, {}, t_pub,
                    to_hex(q.leaf()), t, &attack_delays);
        }

        publish(kVictimId, false, keyed ? "token-key" : "token-hash", std::move(honest_entry),
                honest_proof, honest_sig, t_pub, to_hex(q.leaf()), t, &honest_delays);
    }

    // --- bookkeeping ---------------------------------------------------------------

    uint64_t next_seq() { return seq_++; }

    struct Delivery {
        uint64_t tick = 0;
        uint64_t order = 0;
        uint32_t peer = 0;
        IncomingMessage msg;

        bool operator>(const Delivery& other) const {
            if (tick != other.tick) return tick > other.tick;
            return order > other.order;
        }
    };

    struct WaitingSubmission {
        uint64_t user = 0;
        SubmitReceipt receipt;
        Entry entry;
        Salt salt;
    };

    Scenario sc_;
    std::shared_ptr<DevProofBackend> backend_;
    Rng key_rng_;
    Rng jitter_rng_;
    std::map<uint64_t, Rng> user_rngs_;

    std::optional<Federation> federation_;
    std::optional<Ledger> ledger_;
    std::optional<Collector> collector_;
    std::vector<Peer> peers_;

    std::priority_queue<Delivery, std::vector<Delivery>, std::greater<>> scheduled_;
    std::vector<WaitingSubmission> waiting_;
    std::map<uint64_t, std::vector<std::pair<uint32_t, Digest>>> submitted_roots_;
    std::vector<HoardedCredential> hoard_;
    uint64_t rotation_counter_ = 0;

    uint64_t seq_ = 0;
    uint64_t next_message_id_ = 1;
    uint64_t delivery_order_ = 0;
    size_t ledger_events_seen_ = 0;
    uint64_t seals_seen_ = 0;
    std::vector<size_t> peer_log_cursor_;

    RunTranscript out_;
};

}  // namespace

RunTranscript run(const Scenario& scenario) { return Simulation(scenario).execute(); }

std::string RunTranscript::to_jsonl() const {
    std::vector<std::pair<uint64_t, std::string>> lines;
    auto add = [&](uint64_t seq, ordered_json j) { lines.emplace_back(seq, j.dump()); };

    for (const auto& r : requests)
        add(r.seq, {{"seq", r.seq},
                    {"tick", r.tick},
                    {"type", "request"},
                    {"requester", r.requester},
                    {"validator", r.validator},
                    {"mode", r.mode},
                    {"submitted", r.submitted_hex},
                    {"granted", r.granted},
                    {"wire", r.wire_hex}});
    for (const auto& p : publications)
        add(p.seq, {{"seq", p.seq},
                    {"tick", p.tick},
                    {"type", "publication"},
                    {"id", p.message_id},
                    {"author", p.author},
                    {"attacker", p.attacker},
                    {"relation", p.relation},
                    {"entry_digest", p.entry_digest_hex},
                    {"content", p.content_hex},
                    {"public_timestamp", p.public_timestamp},
                    {"nonce", p.nonce_hex}});
    for (const auto& d : deliveries)
        add(d.seq, {{"seq", d.seq},
                    {"tick", d.tick},
                    {"type", "delivery"},
                    {"id", d.message_id},
                    {"peer", d.peer}});
    for (const auto& d : decisions)
        add(d.seq, {{"seq", d.seq},
                    {"tick", d.tick},
                    {"type", "decision"},
                    {"peer", d.peer},
                    {"id", d.message_id},
                    {"decision", d.decision},
                    {"reason", d.reason}});
    for (const auto& e : ledger_events)
        add(e.seq, {{"seq", e.seq},
                    {"tick", e.tick},
                    {"type", "ledger_event"},
                    {"block", e.block},
                    {"digest", e.digest_hex}});
    for (const auto& s : seals)
        add(s.seq, {{"seq", s.seq},
                    {"tick", s.tick},
                    {"type", "seal"},
                    {"batch", s.batch},
                    {"size", s.size},
                    {"root", s.root_hex},
                    {"block", s.block},
                    {"bytes", s.bytes_appended},
                    {"paths_ok", s.paths_ok}});

    std::sort(lines.begin(), lines.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::string out;
    out += ordered_json{{"type", "scenario"}, {"config", scenario_to_json(scenario)}}.dump();
    out += '\n';
    for (auto& [_, line] : lines) {
        out += line;
        out += '\n';
    }
    for (size_t p = 0; p < peer_accepted.size(); ++p) {
        out += ordered_json{{"type", "peer_summary"}, {"peer", p}, {"accepted", peer_accepted[p]}}
                   .dump();
        out += '\n';
    }
    return out;
}

}  // namespace arl
