#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arl/collector.hpp"
#include "arl/ledger.hpp"
#include "arl/limiter.hpp"
#include "arl/peer.hpp"

namespace arl {

enum class ScenarioMode : uint8_t {
    naive,
    shc,
    timestamped,
    token_h,
    token_k,
    federated,
    collector,
};

const char* scenario_mode_name(ScenarioMode m);

enum class AttackScript : uint8_t { none, flood, rotation, double_spend, front_run };

const char* attack_script_name(AttackScript s);

struct UserSpec {
    uint32_t count = 10;
    uint64_t post_period = 60;  // each user attempts one post per period
    bool stagger = true;        // spread users across the period; false = synchronized
};

struct AttackerSpec {
    AttackScript script = AttackScript::none;
    uint64_t hoard_window = 0;  // flood: accumulate approvals for this many ticks
    uint64_t burst_tick = 0;    // flood/double-spend/front-run: act at this tick
    bool attacker_first = true; // front-run: attacker's copy arrives before the honest one
    std::vector<std::string> ds_orders;  // double-spend: per-peer "ab"/"ba", cycled
};

struct DeliverySpec {
    uint64_t base_delay = 1;
    uint64_t jitter = 0;  // extra seeded delay in [0, jitter]
};

struct Scenario {
    std::string name = "unnamed";
    uint64_t seed = 1;
    ScenarioMode mode = ScenarioMode::timestamped;
    uint64_t duration = 300;
    uint64_t dt = 60;   // dT
    uint64_t t_l = 60;  // rate-limit period

    UserSpec users;
    uint32_t capacity = 1;
    std::optional<uint32_t> global_cap;
    uint32_t validators = 1;
    Coordination coordination = Coordination::independent;

    uint32_t peer_count = 3;
    PeerConfig peer;

    LedgerConfig ledger;
    CollectorConfig collector;
    DeliverySpec delivery;
    AttackerSpec attacker;

    std::vector<std::string> assertions;

    /// Throws Error(bad_config) on inconsistent settings.
    void validate() const;
};

/// Strict parse: unknown keys and malformed values are errors.
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);
nlohmann::ordered_json scenario_to_json(const Scenario& s);

}  // namespace arl
