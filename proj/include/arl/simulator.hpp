#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arl/scenario.hpp"

namespace arl {

/// Requester id the scripted adversary uses with limiters.
inline constexpr uint64_t kAttackerId = 1'000'000;

// Transcript records. `seq` is a global monotone counter, so sorting by seq
// reproduces the exact interleaving; every metric derives from these records
// alone.

/// One limiter (or collector) interaction — this doubles as the limiter's
/// observation record. `wire_hex` is the exact byte stream the requester
/// sent, kept for the information-flow audit.
struct RequestRecord {
    uint64_t seq = 0;
    uint64_t tick = 0;
    uint64_t requester = 0;
    uint32_t validator = 0;
    std::string mode;
    std::string submitted_hex;
    bool granted = false;
    std::string wire_hex;
};

struct PublicationRecord {
    uint64_t seq = 0;
    uint64_t tick = 0;
    uint64_t message_id = 0;
    uint64_t author = 0;
    bool attacker = false;
    std::string relation;  // "plain" for naive-mode signatures
    std::string entry_digest_hex;
    std::string content_hex;
    uint64_t public_timestamp = 0;
    std::string nonce_hex;  // empty outside token modes
};

struct DeliveryRecord {
    uint64_t seq = 0;
    uint64_t tick = 0;
    uint64_t message_id = 0;
    uint32_t peer = 0;
};

struct DecisionEventRecord {
    uint64_t seq = 0;
    uint64_t tick = 0;
    uint32_t peer = 0;
    uint64_t message_id = 0;
    std::string decision;
    std::string reason;  // empty unless rejected
};

struct LedgerEventRecord {
    uint64_t seq = 0;
    uint64_t tick = 0;
    uint64_t block = 0;
    std::string digest_hex;
};

struct SealRecord {
    uint64_t seq = 0;
    uint64_t tick = 0;
    uint64_t batch = 0;
    uint32_t size = 0;
    std::string root_hex;
    uint64_t block = 0;
    uint32_t bytes_appended = 0;
    bool paths_ok = false;  // every distributed path verified against the root
};

struct RunTranscript {
    Scenario scenario;
    std::vector<RequestRecord> requests;
    std::vector<PublicationRecord> publications;
    std::vector<DeliveryRecord> deliveries;
    std::vector<DecisionEventRecord> decisions;
    std::vector<LedgerEventRecord> ledger_events;
    std::vector<SealRecord> seals;
    /// Final accepted entry digests per peer, in acceptance order.
    std::vector<std::vector<std::string>> peer_accepted;

    /// Line-delimited structured text; byte-identical for identical scenarios.
    std::string to_jsonl() const;
};

/// Executes the scenario: a single-threaded discrete event loop (1 tick = 1
/// second of model time) over users, limiters or collector+ledger, peers, and
/// the scripted adversary. Pure function of the scenario, seed included.
RunTranscript run(const Scenario& scenario);

}  // namespace arl
