#include "arl/scenario.hpp"

#include <fstream>
#include <map>
#include <set>

#include "arl/errors.hpp"

namespace arl {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& what) { throw Error(Errc::bad_config, what); }

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
    if (!j.is_object()) config_error(where + " must be an object");
    for (const auto& [key, _] : j.items())
        if (!allowed.contains(key)) config_error("unknown key '" + key + "' in " + where);
}

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        config_error("bad value for '" + key + "'");
    }
}

const std::map<std::string, ScenarioMode>& mode_names() {
    static const std::map<std::string, ScenarioMode> m = {
        {"naive", ScenarioMode::naive},           {"shc", ScenarioMode::shc},
        {"timestamped", ScenarioMode::timestamped}, {"token-h", ScenarioMode::token_h},
        {"token-k", ScenarioMode::token_k},       {"federated", ScenarioMode::federated},
        {"collector", ScenarioMode::collector},
    };
    return m;
}

const std::map<std::string, AttackScript>& script_names() {
    static const std::map<std::string, AttackScript> m = {
        {"none", AttackScript::none},
        {"flood", AttackScript::flood},
        {"rotation", AttackScript::rotation},
        {"double-spend", AttackScript::double_spend},
        {"front-run", AttackScript::front_run},
    };
    return m;
}

}  // namespace

const char* scenario_mode_name(ScenarioMode m) {
    for (const auto& [name, mode] : mode_names())
        if (mode == m) return name.c_str();
    return "unknown";
}

const char* attack_script_name(AttackScript s) {
    for (const auto& [name, script] : script_names())
        if (script == s) return name.c_str();
    return "unknown";
}

void Scenario::validate() const {
    if (duration == 0) config_error("duration must be > 0");
    if (t_l == 0) config_error("t_l must be > 0");
    if (capacity == 0) config_error("limiter capacity must be >= 1");
    if (validators == 0) config_error("validator count must be >= 1");
    if (mode != ScenarioMode::federated && validators != 1)
        config_error("multiple validators require federated mode");
    if (users.count > 0 && users.post_period == 0) config_error("post_period must be > 0");
    if (peer.tick_budget == 0) config_error("peer tick budget must be >= 1");
    if (peer.queue_capacity == 0) config_error("peer queue capacity must be >= 1");
    if (attacker.script == AttackScript::rotation && mode != ScenarioMode::federated)
        config_error("rotation attack requires federated mode");
    if (attacker.script == AttackScript::flood && attacker.burst_tick < attacker.hoard_window)
        config_error("flood burst_tick must not precede the hoard window");
    const bool token_mode = mode == ScenarioMode::token_h || mode == ScenarioMode::token_k;
    if ((attacker.script == AttackScript::double_spend ||
         attacker.script == AttackScript::front_run) &&
        !token_mode)
        config_error("double-spend and front-run attacks require a token mode");
}

Scenario scenario_from_json(const json& j) {
    check_keys(j, "scenario",
               {"name", "seed", "mode", "duration", "dt", "t_l", "users", "limiter", "peers",
                "ledger", "collector", "delivery", "attacker", "assertions"});

    Scenario s;
    s.name = get_or<std::string>(j, "name", "unnamed");
    s.seed = get_or<uint64_t>(j, "seed", 1);
    s.duration = get_or<uint64_t>(j, "duration", 300);
    s.dt = get_or<uint64_t>(j, "dt", 60);
    s.t_l = get_or<uint64_t>(j, "t_l", 60);

    const std::string mode = get_or<std::string>(j, "mode", "timestamped");
    auto mode_it = mode_names().find(mode);
    if (mode_it == mode_names().end()) config_error("unknown mode '" + mode + "'");
    s.mode = mode_it->second;

    if (j.contains("users")) {
        const json& u = j.at("users");
        check_keys(u, "users", {"count", "post_period", "stagger"});
        s.users.count = get_or<uint32_t>(u, "count", 10);
        s.users.post_period = get_or<uint64_t>(u, "post_period", 60);
        s.users.stagger = get_or<bool>(u, "stagger", true);
    }

    if (j.contains("limiter")) {
        const json& l = j.at("limiter");
        check_keys(l, "limiter", {"capacity", "global_cap", "validators", "coordination"});
        s.capacity = get_or<uint32_t>(l, "capacity", 1);
        uint32_t global_cap = get_or<uint32_t>(l, "global_cap", 0);
        if (global_cap > 0) s.global_cap = global_cap;
        s.validators = get_or<uint32_t>(l, "validators", 1);
        const std::string coord = get_or<std::string>(l, "coordination", "independent");
        if (coord == "independent")
            s.coordination = Coordination::independent;
        else if (coord == "shared")
            s.coordination = Coordination::shared;
        else
            config_error("coordination must be 'independent' or 'shared'");
    }

    if (j.contains("peers")) {
        const json& p = j.at("peers");
        check_keys(p, "peers",
                   {"count", "queue_capacity", "tick_budget", "double_spend", "staleness",
                    "max_age", "token_entry_binding"});
        s.peer_count = get_or<uint32_t>(p, "count", 3);
        s.peer.queue_capacity = get_or<size_t>(p, "queue_capacity", 64);
        s.peer.tick_budget = get_or<uint32_t>(p, "tick_budget", 4);
        const std::string ds = get_or<std::string>(p, "double_spend", "first-wins");
        if (ds == "first-wins")
            s.peer.double_spend = DoubleSpendPolicy::first_wins;
        else if (ds == "greater-hash")
            s.peer.double_spend = DoubleSpendPolicy::greater_hash_wins;
        else if (ds == "annihilate")
            s.peer.double_spend = DoubleSpendPolicy::annihilate;
        else
            config_error("double_spend must be 'first-wins', 'greater-hash' or 'annihilate'");
        const std::string st = get_or<std::string>(p, "staleness", "retain");
        if (st == "reject")
            s.peer.staleness = StalenessMode::reject;
        else if (st == "retain")
            s.peer.staleness = StalenessMode::retain;
        else
            config_error("staleness must be 'reject' or 'retain'");
        s.peer.max_age = get_or<uint64_t>(p, "max_age", 0);
        s.peer.token_entry_binding = get_or<bool>(p, "token_entry_binding", true);
    }
    if (s.peer.max_age == 0) s.peer.max_age = 10 * s.dt;  // the recommended default

    if (j.contains("ledger")) {
        const json& l = j.at("ledger");
        check_keys(l, "ledger", {"block_interval", "appends_per_block"});
        s.ledger.block_interval = get_or<uint64_t>(l, "block_interval", 12);
        s.ledger.max_appends_per_block = get_or<uint32_t>(l, "appends_per_block", 8);
    }

    if (j.contains("collector")) {
        const json& c = j.at("collector");
        check_keys(c, "collector", {"depth", "seal_timeout"});
        s.collector.depth = get_or<uint32_t>(c, "depth", 3);
        s.collector.seal_timeout = get_or<uint64_t>(c, "seal_timeout", 30);
    }

    if (j.contains("delivery")) {
        const json& d = j.at("delivery");
        check_keys(d, "delivery", {"base_delay", "jitter"});
        s.delivery.base_delay = get_or<uint64_t>(d, "base_delay", 1);
        s.delivery.jitter = get_or<uint64_t>(d, "jitter", 0);
    }

    if (j.contains("attacker")) {
        const json& a = j.at("attacker");
        check_keys(a, "attacker",
                   {"script", "hoard_window", "burst_tick", "attacker_first", "ds_orders"});
        const std::string script = get_or<std::string>(a, "script", "none");
        auto script_it = script_names().find(script);
        if (script_it == script_names().end()) config_error("unknown attacker script '" + script + "'");
        s.attacker.script = script_it->second;
        s.attacker.hoard_window = get_or<uint64_t>(a, "hoard_window", 0);
        s.attacker.burst_tick = get_or<uint64_t>(a, "burst_tick", s.attacker.hoard_window);
        s.attacker.attacker_first = get_or<bool>(a, "attacker_first", true);
        s.attacker.ds_orders = get_or<std::vector<std::string>>(a, "ds_orders", {"ab", "ba"});
        for (const auto& o : s.attacker.ds_orders)
            if (o != "ab" && o != "ba") config_error("ds_orders entries must be 'ab' or 'ba'");
    }

    if (j.contains("assertions")) {
        s.assertions = get_or<std::vector<std::string>>(j, "assertions", {});
        const std::set<std::string> known{"consistency", "rate_soundness", "info_flow",
                                          "no_stale_accepted"};
        for (const auto& a : s.assertions)
            if (!known.contains(a)) config_error("unknown assertion '" + a + "'");
    }

    s.validate();
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::bad_config, "cannot open scenario file: " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw Error(Errc::parse_error, "scenario file is not valid JSON");
    return scenario_from_json(j);
}

nlohmann::ordered_json scenario_to_json(const Scenario& s) {
    nlohmann::ordered_json j;
    j["name"] = s.name;
    j["seed"] = s.seed;
    j["mode"] = scenario_mode_name(s.mode);
    j["duration"] = s.duration;
    j["dt"] = s.dt;
    j["t_l"] = s.t_l;
    j["users"] = {{"count", s.users.count},
                  {"post_period", s.users.post_period},
                  {"stagger", s.users.stagger}};
    j["limiter"] = {{"capacity", s.capacity},
                    {"global_cap", s.global_cap.value_or(0)},
                    {"validators", s.validators},
                    {"coordination",
                     s.coordination == Coordination::shared ? "shared" : "independent"}};
    const char* ds = s.peer.double_spend == DoubleSpendPolicy::first_wins      ? "first-wins"
                     : s.peer.double_spend == DoubleSpendPolicy::greater_hash_wins ? "greater-hash"
                                                                               : "annihilate";
    j["peers"] = {{"count", s.peer_count},
                  {"queue_capacity", s.peer.queue_capacity},
                  {"tick_budget", s.peer.tick_budget},
                  {"double_spend", ds},
                  {"staleness", s.peer.staleness == StalenessMode::reject ? "reject" : "retain"},
                  {"max_age", s.peer.max_age},
                  {"token_entry_binding", s.peer.token_entry_binding}};
    j["ledger"] = {{"block_interval", s.ledger.block_interval},
                   {"appends_per_block", s.ledger.max_appends_per_block}};
    j["collector"] = {{"depth", s.collector.depth}, {"seal_timeout", s.collector.seal_timeout}};
    j["delivery"] = {{"base_delay", s.delivery.base_delay}, {"jitter", s.delivery.jitter}};
    j["attacker"] = {{"script", attack_script_name(s.attacker.script)},
                     {"hoard_window", s.attacker.hoard_window},
                     {"burst_tick", s.attacker.burst_tick},
                     {"attacker_first", s.attacker.attacker_first},
                     {"ds_orders", s.attacker.ds_orders}};
    j["assertions"] = s.assertions;
    return j;
}

}  // namespace arl
