#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arl/simulator.hpp"

namespace arl {

struct ConsistencyReport {
    bool consistent = true;  // all peers hold the same accepted set
    std::vector<size_t> set_sizes;
};

/// The limiter-side adversary's view. Digest joins link publications whose
/// entry digest appeared verbatim in a request; timing links count the
/// distinct requesters approved within +/- dt of each publication's public
/// timestamp (the entry's anonymity set).
struct AnonymityReport {
    uint32_t publications = 0;
    double digest_join_rate = 0.0;
    std::vector<uint32_t> set_sizes;      // per publication, timestamped modes only
    uint32_t min_set_size = 0;
    uint32_t certain_links = 0;           // anonymity set of exactly one
    double certain_linkage_rate = 0.0;
    double expected_guess_accuracy = 0.0;  // mean of 1/set_size
};

struct FloodReport {
    uint64_t attacker_published = 0;
    uint64_t attacker_fully_accepted = 0;  // accepted by every peer
    uint64_t stale_accepted = 0;  // acceptances of attacker messages older than max_age
    uint64_t honest_published_after_burst = 0;
    uint64_t honest_fully_accepted_after_burst = 0;
    uint64_t max_honest_latency = 0;  // delivery-to-acceptance, worst peer
    uint64_t latency_bound = 0;       // queue_capacity / tick_budget + 1
};

struct RotationReport {
    uint64_t attacker_grants = 0;
    uint64_t periods = 0;
    double amplification = 0.0;  // grants per period over the single-validator allowance
};

struct CollectorReport {
    uint64_t seals = 0;
    uint32_t max_entries_per_seal = 0;
    uint64_t max_anchored_per_block = 0;
    uint64_t anchored_per_block_bound = 0;  // appends_per_block * 2^depth
    bool constant_footprint = true;         // 32 bytes per seal, every seal
    bool all_paths_ok = true;
};

struct MetricsReport {
    ConsistencyReport consistency;
    AnonymityReport anonymity;
    bool rate_sound = true;
    bool info_flow_clean = true;
    std::optional<FloodReport> flood;
    std::optional<RotationReport> rotation;
    std::optional<CollectorReport> collector;

    nlohmann::ordered_json to_json() const;
};

ConsistencyReport consistency_report(const RunTranscript& t);
AnonymityReport linkage_report(const RunTranscript& t);

/// Sliding-window audit of the limiter log: within any window of length t_l,
/// no requester exceeds capacity at a validator (nor the union of validators
/// under shared coordination), and no validator exceeds its global cap.
bool audit_rate_soundness(const RunTranscript& t);

/// Byte-scans every request wire for entry content or entry digest bytes.
bool audit_info_flow(const RunTranscript& t);

FloodReport flood_report(const RunTranscript& t);
RotationReport rotation_report(const RunTranscript& t);
CollectorReport collector_report(const RunTranscript& t);

MetricsReport compute_metrics(const RunTranscript& t);

/// Evaluates a scenario-declared assertion name against the report.
bool evaluate_assertion(const std::string& name, const MetricsReport& report);

}  // namespace arl
