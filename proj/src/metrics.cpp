#include "arl/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace arl {

namespace {

bool timestamped_mode(ScenarioMode m) {
    return m == ScenarioMode::timestamped || m == ScenarioMode::federated ||
           m == ScenarioMode::token_h || m == ScenarioMode::token_k;
}

// grant times must be >= t_l apart once `capacity` of them stack up
bool window_sound(const std::vector<uint64_t>& times, uint32_t capacity, uint64_t t_l) {
    for (size_t i = 0; i + capacity < times.size(); ++i)
        if (times[i + capacity] - times[i] < t_l) return false;
    return true;
}

}  // namespace

ConsistencyReport consistency_report(const RunTranscript& t) {
    ConsistencyReport report;
    std::vector<std::set<std::string>> sets;
    for (const auto& accepted : t.peer_accepted) {
        sets.emplace_back(accepted.begin(), accepted.end());
        report.set_sizes.push_back(sets.back().size());
    }
    for (size_t i = 1; i < sets.size(); ++i)
        if (sets[i] != sets[0]) report.consistent = false;
    return report;
}

AnonymityReport linkage_report(const RunTranscript& t) {
    AnonymityReport report;

    std::set<std::string> granted_digests;
    for (const auto& r : t.requests)
        if (r.granted) granted_digests.insert(r.submitted_hex);

    uint32_t joined = 0;
    double guess_sum = 0.0;
    for (const auto& p : t.publications) {
        ++report.publications;
        if (granted_digests.contains(p.entry_digest_hex)) ++joined;

        if (!timestamped_mode(t.scenario.mode)) continue;
        const uint64_t dt = t.scenario.dt;
        const uint64_t lo = p.public_timestamp >= dt ? p.public_timestamp - dt : 0;
        const uint64_t hi = p.public_timestamp + dt;
        std::set<uint64_t> candidates;
        for (const auto& r : t.requests)
            if (r.granted && r.tick >= lo && r.tick <= hi) candidates.insert(r.requester);
        const auto size = static_cast<uint32_t>(candidates.size());
        report.set_sizes.push_back(size);
        if (size == 1) ++report.certain_links;
        if (size > 0) guess_sum += 1.0 / size;
    }

    if (report.publications > 0)
        report.digest_join_rate = double(joined) / report.publications;
    if (!report.set_sizes.empty()) {
        report.min_set_size = *std::min_element(report.set_sizes.begin(), report.set_sizes.end());
        report.certain_linkage_rate = double(report.certain_links) / report.set_sizes.size();
        report.expected_guess_accuracy = guess_sum / report.set_sizes.size();
    }
    return report;
}

bool audit_rate_soundness(const RunTranscript& t) {
    const uint64_t t_l = t.scenario.t_l;
    std::map<std::pair<uint32_t, uint64_t>, std::vector<uint64_t>> per_validator;
    std::map<uint64_t, std::vector<uint64_t>> per_requester_union;
    std::map<uint32_t, std::vector<uint64_t>> per_validator_all;

    for (const auto& r : t.requests) {
        if (!r.granted || r.mode == "collector") continue;
        per_validator[{r.validator, r.requester}].push_back(r.tick);
        per_requester_union[r.requester].push_back(r.tick);
        per_validator_all[r.validator].push_back(r.tick);
    }

    for (auto& [_, times] : per_validator)
        if (!window_sound(times, t.scenario.capacity, t_l)) return false;

    if (t.scenario.coordination == Coordination::shared)
        for (auto& [_, times] : per_requester_union) {
            std::sort(times.begin(), times.end());
            if (!window_sound(times, t.scenario.capacity, t_l)) return false;
        }

    if (t.scenario.global_cap)
        for (auto& [_, times] : per_validator_all)
            if (!window_sound(times, *t.scenario.global_cap, t_l)) return false;

    return true;
}

bool audit_info_flow(const RunTranscript& t) {
    for (const auto& p : t.publications) {
        Bytes content = from_hex(p.content_hex);
        Bytes digest = from_hex(p.entry_digest_hex);
        for (const auto& r : t.requests) {
            Bytes wire = from_hex(r.wire_hex);
            if (contains_bytes(wire, content) || contains_bytes(wire, digest)) return false;
        }
    }
    return true;
}

FloodReport flood_report(const RunTranscript& t) {
    FloodReport report;
    report.latency_bound = t.scenario.peer.queue_capacity / t.scenario.peer.tick_budget + 1;
    const uint64_t max_age = t.scenario.peer.max_age;
    const uint64_t burst = t.scenario.attacker.burst_tick;
    const uint32_t peers = t.scenario.peer_count;

    std::map<uint64_t, const PublicationRecord*> by_id;
    for (const auto& p : t.publications) by_id[p.message_id] = &p;

    // (message, peer) -> delivery tick
    std::map<std::pair<uint64_t, uint32_t>, uint64_t> delivered_at;
    for (const auto& d : t.deliveries) delivered_at[{d.message_id, d.peer}] = d.tick;

    std::map<uint64_t, uint32_t> accept_count;
    for (const auto& d : t.decisions) {
        if (d.decision != "accepted") continue;
        const auto* pub = by_id.at(d.message_id);
        ++accept_count[d.message_id];
        if (pub->attacker) {
            if (pub->public_timestamp + max_age < d.tick) ++report.stale_accepted;
        } else if (pub->tick >= burst) {
            const uint64_t delivered = delivered_at.at({d.message_id, d.peer});
            const uint64_t latency = d.tick - delivered;
            report.max_honest_latency = std::max(report.max_honest_latency, latency);
        }
    }

    for (const auto& p : t.publications) {
        if (p.attacker) {
            ++report.attacker_published;
            if (accept_count[p.message_id] == peers) ++report.attacker_fully_accepted;
        } else if (p.tick >= burst) {
            ++report.honest_published_after_burst;
            if (accept_count[p.message_id] == peers) ++report.honest_fully_accepted_after_burst;
        }
    }
    return report;
}

RotationReport rotation_report(const RunTranscript& t) {
    RotationReport report;
    for (const auto& r : t.requests)
        if (r.granted && r.requester == kAttackerId) ++report.attacker_grants;
    report.periods = t.scenario.duration / t.scenario.t_l;
    if (report.periods > 0 && t.scenario.capacity > 0)
        report.amplification =
            double(report.attacker_grants) / double(report.periods * t.scenario.capacity);
    return report;
}

CollectorReport collector_report(const RunTranscript& t) {
    CollectorReport report;
    report.anchored_per_block_bound = uint64_t(t.scenario.ledger.max_appends_per_block)
                                      << t.scenario.collector.depth;
    std::map<uint64_t, uint64_t> per_block;
    for (const auto& s : t.seals) {
        ++report.seals;
        report.max_entries_per_seal = std::max(report.max_entries_per_seal, s.size);
        per_block[s.block] += s.size;
        if (s.bytes_appended != Digest::size) report.constant_footprint = false;
        if (!s.paths_ok) report.all_paths_ok = false;
    }
    for (const auto& [_, anchored] : per_block)
        report.max_anchored_per_block = std::max(report.max_anchored_per_block, anchored);
    return report;
}

MetricsReport compute_metrics(const RunTranscript& t) {
    MetricsReport report;
    report.consistency = consistency_report(t);
    report.anonymity = linkage_report(t);
    report.rate_sound = audit_rate_soundness(t);
    report.info_flow_clean = audit_info_flow(t);
    if (t.scenario.attacker.script == AttackScript::flood) report.flood = flood_report(t);
    if (t.scenario.attacker.script == AttackScript::rotation)
        report.rotation = rotation_report(t);
    if (t.scenario.mode == ScenarioMode::collector) report.collector = collector_report(t);
    return report;
}

nlohmann::ordered_json MetricsReport::to_json() const {
    nlohmann::ordered_json j;
    j["consistency"] = {{"consistent", consistency.consistent},
                        {"set_sizes", consistency.set_sizes}};
    j["anonymity"] = {{"publications", anonymity.publications},
                      {"digest_join_rate", anonymity.digest_join_rate},
                      {"min_set_size", anonymity.min_set_size},
                      {"certain_links", anonymity.certain_links},
                      {"certain_linkage_rate", anonymity.certain_linkage_rate},
                      {"expected_guess_accuracy", anonymity.expected_guess_accuracy},
                      {"set_sizes", anonymity.set_sizes}};
    j["rate_sound"] = rate_sound;
    j["info_flow_clean"] = info_flow_clean;
    if (flood)
        j["flood"] = {{"attacker_published", flood->attacker_published},
                      {"attacker_fully_accepted", flood->attacker_fully_accepted},
                      {"stale_accepted", flood->stale_accepted},
                      {"honest_published_after_burst", flood->honest_published_after_burst},
                      {"honest_fully_accepted_after_burst",
                       flood->honest_fully_accepted_after_burst},
                      {"max_honest_latency", flood->max_honest_latency},
                      {"latency_bound", flood->latency_bound}};
    if (rotation)
        j["rotation"] = {{"attacker_grants", rotation->attacker_grants},
                         {"periods", rotation->periods},
                         {"amplification", rotation->amplification}};
    if (collector)
        j["collector"] = {{"seals", collector->seals},
                          {"max_entries_per_seal", collector->max_entries_per_seal},
                          {"max_anchored_per_block", collector->max_anchored_per_block},
                          {"anchored_per_block_bound", collector->anchored_per_block_bound},
                          {"constant_footprint", collector->constant_footprint},
                          {"all_paths_ok", collector->all_paths_ok}};
    return j;
}

bool evaluate_assertion(const std::string& name, const MetricsReport& report) {
    if (name == "consistency") return report.consistency.consistent;
    if (name == "rate_soundness") return report.rate_sound;
    if (name == "info_flow") return report.info_flow_clean;
    if (name == "no_stale_accepted") return !report.flood || report.flood->stale_accepted == 0;
    return false;
}

}  // namespace arl
