#include <doctest.h>

#include <algorithm>

#include "arl/peer.hpp"
#include "arl/rng.hpp"

using namespace arl;

namespace {

struct World {
    Rng rng{42};
    std::shared_ptr<DevProofBackend> backend = std::make_shared<DevProofBackend>();
    KeyPair limiter = KeyPair::generate(rng);

    Peer peer(PeerConfig cfg) {
        Peer p(cfg, backend);
        p.trust_limiter_key(limiter.pk);
        return p;
    }

    IncomingMessage time_msg(uint64_t id, Bytes content, uint64_t t, uint64_t t_pub, uint64_t dt) {
        Entry entry = Entry::from_content(std::move(content));
        auto [c, salt] = make_shc(entry.digest, rng);
        TimestampedApproval appr = make_timestamped_approval(c.root, t, limiter);
        TimedWitness wit{salt.digest, c.root, appr.approval_root, t, appr.signature};
        TimePublic pub{entry.digest, limiter.pk, t_pub, dt};
        return IncomingMessage{id, std::move(entry), backend->prove(pub, wit), std::nullopt};
    }

    IncomingMessage token_h_msg(uint64_t id, Bytes content, const Nonce& q, uint64_t t,
                                uint64_t t_pub, uint64_t dt) {
        Entry entry = Entry::from_content(std::move(content));
        auto [c, salt] = make_shc(q.leaf(), rng);
        TimestampedApproval appr = make_timestamped_approval(c.root, t, limiter);
        TimedWitness wit{salt.digest, c.root, appr.approval_root, t, appr.signature};
        TokenHashPublic pub{q.leaf(), limiter.pk, t_pub, dt, entry.digest};
        return IncomingMessage{id, std::move(entry), backend->prove(pub, wit), std::nullopt};
    }

    IncomingMessage token_k_msg(uint64_t id, Bytes content, const KeyPair& nonce_key, uint64_t t,
                                uint64_t t_pub, uint64_t dt) {
        Entry entry = Entry::from_content(std::move(content));
        Nonce q = Nonce::keyed(nonce_key.pk);
        auto [c, salt] = make_shc(q.leaf(), rng);
        TimestampedApproval appr = make_timestamped_approval(c.root, t, limiter);
        TimedWitness wit{salt.digest, c.root, appr.approval_root, t, appr.signature};
        TokenKeyPublic pub{nonce_key.pk, limiter.pk, t_pub, dt};
        Signature entry_sig = sign(nonce_key.sk, entry.digest.view());
        return IncomingMessage{id, std::move(entry), backend->prove(pub, wit), entry_sig};
    }
};

void drain(Peer& p, uint64_t now) {
    while (!p.queue_tick(now).empty()) {
    }
}

}  // namespace

TEST_SUITE("peer") {

TEST_CASE("honest timestamped message is queued then accepted") {
    World w;
    Peer p = w.peer({});
    auto msg = w.time_msg(1, {'a'}, 100, 110, 60);

    AcceptDecision d = p.receive(msg, 111);
    CHECK(d.kind == DecisionKind::queued);
    auto accepted = p.queue_tick(112);
    REQUIRE(accepted.size() == 1);
    CHECK(accepted[0].entry_digest == msg.entry.digest);
    CHECK(accepted[0].public_timestamp == 110);
}

TEST_CASE("plain approvals: naive mode verification") {
    World w;
    Peer p = w.peer({});
    Entry entry = Entry::from_content(Bytes{'n'});
    PlainApproval appr{entry.digest, sign(w.limiter.sk, entry.digest.view()), w.limiter.pk};

    CHECK(p.receive({1, entry, appr, {}}, 5).kind == DecisionKind::queued);

    Entry other = Entry::from_content(Bytes{'m'});
    AcceptDecision mismatch = p.receive({2, other, appr, {}}, 5);
    CHECK(mismatch.reason == RejectReason::digest_mismatch);

    Rng rng(9);
    KeyPair stranger = KeyPair::generate(rng);
    PlainApproval untrusted{entry.digest, sign(stranger.sk, entry.digest.view()), stranger.pk};
    CHECK(p.receive({3, entry, untrusted, {}}, 5).reason == RejectReason::bad_proof);
}

TEST_CASE("queue dequeues most recent public timestamp first") {
    World w;
    PeerConfig cfg;
    cfg.tick_budget = 1;
    Peer p = w.peer(cfg);

    p.receive(w.time_msg(1, {'1'}, 10, 10, 60), 50);
    p.receive(w.time_msg(2, {'2'}, 50, 50, 60), 50);
    p.receive(w.time_msg(3, {'3'}, 30, 30, 60), 50);

    auto first = p.queue_tick(51);
    REQUIRE(first.size() == 1);
    CHECK(first[0].public_timestamp == 50);
    CHECK(p.queue_tick(52)[0].public_timestamp == 30);
    CHECK(p.queue_tick(53)[0].public_timestamp == 10);
    CHECK(p.queue_tick(54).empty());
}

TEST_CASE("overflow drops the oldest items") {
    World w;
    PeerConfig cfg;
    cfg.queue_capacity = 2;
    Peer p = w.peer(cfg);

    auto m1 = w.time_msg(1, {'1'}, 10, 10, 600);
    auto m2 = w.time_msg(2, {'2'}, 20, 20, 600);
    auto m3 = w.time_msg(3, {'3'}, 30, 30, 600);
    p.receive(m1, 30);
    p.receive(m2, 30);
    CHECK(p.receive(m3, 30).kind == DecisionKind::queued);
    CHECK(p.queue_size() == 2);

    drain(p, 31);
    auto set = p.accepted_digest_set();
    CHECK(set.contains(m2.entry.digest));
    CHECK(set.contains(m3.entry.digest));
    CHECK_FALSE(set.contains(m1.entry.digest));  // t=10 was dropped

    // the eviction shows up in the decision log as a terminal overflow
    bool evicted_logged = false;
    for (const auto& rec : p.decision_log())
        if (rec.message_id == 1 && rec.decision.reason == RejectReason::queue_overflow)
            evicted_logged = true;
    CHECK(evicted_logged);
}

TEST_CASE("an incoming message older than a full queue is itself dropped") {
    World w;
    PeerConfig cfg;
    cfg.queue_capacity = 2;
    Peer p = w.peer(cfg);
    p.receive(w.time_msg(1, {'1'}, 20, 20, 600), 30);
    p.receive(w.time_msg(2, {'2'}, 30, 30, 600), 30);
    AcceptDecision d = p.receive(w.time_msg(3, {'3'}, 5, 5, 600), 30);
    CHECK(d.kind == DecisionKind::rejected);
    CHECK(d.reason == RejectReason::queue_overflow);
}

TEST_CASE("staleness: feed mode rejects, queue mode retains at the back") {
    World w;
    PeerConfig feed;
    feed.staleness = StalenessMode::reject;
    feed.max_age = 100;
    Peer p1 = w.peer(feed);
    AcceptDecision d = p1.receive(w.time_msg(1, {'s'}, 500, 500, 60), 1000);
    CHECK(d.reason == RejectReason::stale_timestamp);
    CHECK(p1.receive(w.time_msg(2, {'f'}, 950, 950, 60), 1000).kind == DecisionKind::queued);

    PeerConfig retain;
    retain.staleness = StalenessMode::retain;
    retain.max_age = 100;
    retain.tick_budget = 1;
    Peer p2 = w.peer(retain);
    CHECK(p2.receive(w.time_msg(3, {'s'}, 500, 500, 60), 1000).kind == DecisionKind::queued);
    p2.receive(w.time_msg(4, {'f'}, 950, 950, 60), 1000);
    CHECK(p2.queue_tick(1001)[0].public_timestamp == 950);  // fresh first
    CHECK(p2.queue_tick(1002)[0].public_timestamp == 500);
}

TEST_CASE("token double spend: first-wins keeps the earlier arrival") {
    World w;
    Nonce q = Nonce::random(w.rng);
    auto m1 = w.token_h_msg(1, {'a'}, q, 100, 100, 60);
    auto m2 = w.token_h_msg(2, {'b'}, q, 100, 101, 60);

    PeerConfig cfg;
    cfg.double_spend = DoubleSpendPolicy::first_wins;
    Peer p = w.peer(cfg);
    CHECK(p.receive(m1, 101).kind == DecisionKind::queued);
    AcceptDecision d = p.receive(m2, 101);
    CHECK(d.reason == RejectReason::duplicate_nonce);
    drain(p, 102);
    CHECK(p.accepted_digest_set() == std::set<Digest>{m1.entry.digest});
}

TEST_CASE("token double spend: greater hash wins in either arrival order") {
    World w;
    Nonce q = Nonce::random(w.rng);
    auto ma = w.token_h_msg(1, {'a'}, q, 100, 100, 60);
    auto mb = w.token_h_msg(2, {'b'}, q, 100, 101, 60);
    const Digest greater = std::max(ma.entry.digest, mb.entry.digest);

    for (bool a_first : {true, false}) {
        PeerConfig cfg;
        cfg.double_spend = DoubleSpendPolicy::greater_hash_wins;
        Peer p = w.peer(cfg);
        p.receive(a_first ? ma : mb, 101);
        drain(p, 102);  // first arrival even reaches the accepted set
        p.receive(a_first ? mb : ma, 103);
        drain(p, 104);
        CHECK(p.accepted_digest_set() == std::set<Digest>{greater});
    }
}

TEST_CASE("token double spend: annihilate burns the nonce for good") {
    World w;
    Nonce q = Nonce::random(w.rng);
    auto m1 = w.token_h_msg(1, {'a'}, q, 100, 100, 60);
    auto m2 = w.token_h_msg(2, {'b'}, q, 100, 101, 60);
    auto m3 = w.token_h_msg(3, {'c'}, q, 100, 102, 60);

    PeerConfig cfg;
    cfg.double_spend = DoubleSpendPolicy::annihilate;
    Peer p = w.peer(cfg);
    p.receive(m1, 101);
    drain(p, 102);
    CHECK(p.accepted_digest_set().size() == 1);
    CHECK(p.receive(m2, 103).reason == RejectReason::duplicate_nonce);
    CHECK(p.accepted_digest_set().empty());
    CHECK(p.receive(m3, 104).reason == RejectReason::duplicate_nonce);
    drain(p, 105);
    CHECK(p.accepted_digest_set().empty());
}

TEST_CASE("identical redelivery is idempotent under every policy") {
    World w;
    for (auto policy : {DoubleSpendPolicy::first_wins, DoubleSpendPolicy::greater_hash_wins,
                        DoubleSpendPolicy::annihilate}) {
        Nonce q = Nonce::random(w.rng);
        auto m = w.token_h_msg(1, {'i'}, q, 100, 100, 60);
        PeerConfig cfg;
        cfg.double_spend = policy;
        Peer p = w.peer(cfg);
        p.receive(m, 101);
        drain(p, 102);
        auto again = m;
        again.id = 2;
        CHECK(p.receive(again, 103).reason == RejectReason::duplicate_nonce);
        drain(p, 104);
        CHECK(p.accepted_digest_set() == std::set<Digest>{m.entry.digest});
    }
}

TEST_CASE("determinism: accepted sets agree across all delivery permutations") {
    World w;
    Nonce q = Nonce::random(w.rng);
    std::vector<IncomingMessage> msgs{
        w.token_h_msg(1, {'a'}, q, 100, 100, 60),
        w.token_h_msg(2, {'b'}, q, 100, 101, 60),
        w.token_h_msg(3, {'c'}, Nonce::random(w.rng), 100, 102, 60),
    };

    for (auto policy : {DoubleSpendPolicy::greater_hash_wins, DoubleSpendPolicy::annihilate}) {
        std::vector<size_t> order{0, 1, 2};
        std::optional<std::set<Digest>> reference;
        do {
            PeerConfig cfg;
            cfg.double_spend = policy;
            Peer p = w.peer(cfg);
            uint64_t now = 200;
            for (size_t i : order) {
                auto m = msgs[i];
                m.id = 10 + i;
                p.receive(m, now);
                drain(p, ++now);
            }
            if (!reference)
                reference = p.accepted_digest_set();
            else
                CHECK(p.accepted_digest_set() == *reference);
        } while (std::next_permutation(order.begin(), order.end()));
    }
}

TEST_CASE("first-wins diverges between peers with opposite delivery orders") {
    World w;
    Nonce q = Nonce::random(w.rng);
    auto m1 = w.token_h_msg(1, {'a'}, q, 100, 100, 60);
    auto m2 = w.token_h_msg(2, {'b'}, q, 100, 101, 60);

    PeerConfig cfg;
    cfg.double_spend = DoubleSpendPolicy::first_wins;
    Peer pa = w.peer(cfg);
    Peer pb = w.peer(cfg);
    pa.receive(m1, 200);
    pa.receive(m2, 201);
    pb.receive(m2, 200);
    pb.receive(m1, 201);
    drain(pa, 202);
    drain(pb, 202);
    CHECK(pa.accepted_digest_set() != pb.accepted_digest_set());
}

TEST_CASE("front-running fails under token-hash binding") {
    World w;
    Nonce q = Nonce::random(w.rng);
    auto honest = w.token_h_msg(1, {'h'}, q, 100, 100, 60);
    Entry attacker_entry = Entry::from_content(Bytes{'e', 'v', 'i', 'l'});
    const auto& stolen = std::get<ApprovalProof>(honest.approval);

    Peer p = w.peer({});
    // verbatim replay: the bound digest no longer matches the entry
    AcceptDecision verbatim = front_run_attempt(p, stolen, attacker_entry, 101, 50);
    CHECK(verbatim.reason == RejectReason::digest_mismatch);

    // rebinding the public input invalidates the proof
    ApprovalProof rebound = stolen;
    std::get<TokenHashPublic>(rebound.public_inputs).entry_digest = attacker_entry.digest;
    AcceptDecision mutated = front_run_attempt(p, rebound, attacker_entry, 102, 51);
    CHECK(mutated.reason == RejectReason::bad_proof);

    // the honest message still goes through
    CHECK(p.receive(honest, 103).kind == DecisionKind::queued);
}

TEST_CASE("front-running fails under token-key signatures") {
    World w;
    KeyPair nonce_key = KeyPair::generate(w.rng);
    auto honest = w.token_k_msg(1, {'h'}, nonce_key, 100, 100, 60);
    Entry attacker_entry = Entry::from_content(Bytes{'e'});
    const auto& stolen = std::get<ApprovalProof>(honest.approval);

    KeyPair attacker_key = KeyPair::generate(w.rng);
    Signature forged = sign(attacker_key.sk, attacker_entry.digest.view());

    Peer p = w.peer({});
    AcceptDecision d = front_run_attempt(p, stolen, attacker_entry, 101, 50, forged);
    CHECK(d.reason == RejectReason::bad_entry_signature);
    AcceptDecision missing = front_run_attempt(p, stolen, attacker_entry, 102, 51);
    CHECK(missing.reason == RejectReason::bad_entry_signature);

    CHECK(p.receive(honest, 103).kind == DecisionKind::queued);
}

TEST_CASE("without entry binding a stolen proof becomes a double-spend race") {
    World w;
    Nonce q = Nonce::random(w.rng);
    auto honest = w.token_h_msg(1, {'h'}, q, 100, 100, 60);
    Entry attacker_entry = Entry::from_content(Bytes{'e'});
    const auto& stolen = std::get<ApprovalProof>(honest.approval);

    PeerConfig cfg;
    cfg.token_entry_binding = false;
    cfg.double_spend = DoubleSpendPolicy::first_wins;
    Peer p = w.peer(cfg);

    // attacker delivers first and wins on this peer
    AcceptDecision d = front_run_attempt(p, stolen, attacker_entry, 101, 50);
    CHECK(d.kind == DecisionKind::queued);
    CHECK(p.receive(honest, 102).reason == RejectReason::duplicate_nonce);
    drain(p, 103);
    CHECK(p.accepted_digest_set() == std::set<Digest>{attacker_entry.digest});
}

TEST_CASE("inclusion messages need the root in the local ledger view") {
    World w;
    Entry entry = Entry::from_content(Bytes{'i'});
    auto [c, salt] = make_shc(entry.digest, w.rng);
    std::vector<Digest> batch{c.root};
    MerkleTree tree = merkle_build(batch, 3);
    InclusionPublic pub{entry.digest, tree.root, 3};
    InclusionWitness wit{salt.digest, tree.paths[0]};
    IncomingMessage msg{1, entry, w.backend->prove(pub, Witness{wit}), std::nullopt};

    Peer p = w.peer({});
    CHECK(p.receive(msg, 10).reason == RejectReason::unknown_root);

    p.apply_ledger_event(LedgerEvent{0, tree.root}, 12);
    auto redelivery = msg;
    redelivery.id = 2;
    CHECK(p.receive(redelivery, 13).kind == DecisionKind::queued);
    auto accepted = p.queue_tick(14);
    REQUIRE(accepted.size() == 1);
    CHECK(accepted[0].public_timestamp == 12);  // the block timestamp
}

TEST_CASE("flood resilience: honest messages clear the queue within the bound") {
    World w;
    PeerConfig cfg;
    cfg.queue_capacity = 16;
    cfg.tick_budget = 4;
    cfg.staleness = StalenessMode::retain;
    Peer p = w.peer(cfg);

    // burst of 30 hoarded messages with old timestamps
    uint64_t id = 100;
    for (int i = 0; i < 30; ++i)
        p.receive(w.time_msg(id++, {uint8_t(i), 'x'}, 10 + uint64_t(i), 10 + uint64_t(i), 600), 1000);

    const uint64_t bound = cfg.queue_capacity / cfg.tick_budget + 1;
    for (uint64_t t = 1000; t < 1008; ++t) {
        auto honest = w.time_msg(id++, {uint8_t(t & 0xff), 'h'}, t, t, 600);
        p.receive(honest, t);
        bool accepted = false;
        for (uint64_t dt = 0; dt <= bound && !accepted; ++dt)
            for (const auto& rec : p.queue_tick(t + dt))
                if (rec.message_id == honest.id) accepted = true;
        CHECK(accepted);
    }
}

TEST_CASE("every delivered message ends in exactly one terminal decision") {
    World w;
    PeerConfig cfg;
    cfg.queue_capacity = 4;
    cfg.tick_budget = 2;
    Peer p = w.peer(cfg);

    std::set<uint64_t> ids;
    uint64_t now = 100;
    for (uint64_t i = 0; i < 12; ++i) {
        auto m = w.time_msg(i, {uint8_t(i)}, now - 50 + i, now - 50 + i, 600);
        ids.insert(i);
        p.receive(m, now);
        if (i % 3 == 2) p.queue_tick(++now);
    }
    for (int i = 0; i < 10; ++i) p.queue_tick(++now);

    std::map<uint64_t, DecisionKind> final_state;
    for (const auto& rec : p.decision_log()) final_state[rec.message_id] = rec.decision.kind;
    for (uint64_t i : ids) {
        REQUIRE(final_state.count(i));
        CHECK(final_state[i] != DecisionKind::queued);
    }
}

}  // TEST_SUITE
