// arl: anonymous rate limiting for permissionless content indexes.
// Subcommands: run (scenario execution), attack (canned adversarial suites),
// commit/prove/verify (credential utilities), vectors (pinned test vectors).
// Exit codes: 0 success, 1 assertion or verification failure, 2 usage or
// configuration error.

#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "arl/errors.hpp"
#include "arl/metrics.hpp"
#include "arl/sha256.hpp"
#include "arl/simulator.hpp"

namespace {

using arl::Errc;
using arl::Error;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::bad_config, "cannot open file: " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::bad_config, "cannot write file: " + path);
    out << data;
}

arl::Rng entropy_rng() {
    std::random_device rd;  // utility commands only; simulations never touch this
    uint64_t seed = (uint64_t(rd()) << 32) ^ rd();
    return arl::Rng(seed);
}

std::array<uint8_t, 32> bytes32_from_hex(const std::string& hex, const char* what) {
    arl::Bytes raw = arl::from_hex(hex);
    if (raw.size() != 32) throw Error(Errc::parse_error, std::string(what) + " must be 32 bytes");
    std::array<uint8_t, 32> out;
    std::copy(raw.begin(), raw.end(), out.begin());
    return out;
}

// --- run -----------------------------------------------------------------------

struct RunArgs {
    std::string scenario_path;
    std::string out_dir;
    int64_t seed_override = -1;
};

int cmd_run(const RunArgs& args) {
    arl::Scenario scenario = arl::load_scenario(args.scenario_path);
    if (args.seed_override >= 0) scenario.seed = uint64_t(args.seed_override);

    arl::RunTranscript transcript = arl::run(scenario);
    arl::MetricsReport metrics = arl::compute_metrics(transcript);

    if (!args.out_dir.empty()) {
        std::filesystem::create_directories(args.out_dir);
        write_file(args.out_dir + "/transcript.jsonl", transcript.to_jsonl());
        write_file(args.out_dir + "/metrics.json", metrics.to_json().dump(2) + "\n");
    }

    bool all_passed = true;
    ordered_json assertion_results = ordered_json::array();
    for (const auto& name : scenario.assertions) {
        const bool ok = arl::evaluate_assertion(name, metrics);
        all_passed = all_passed && ok;
        assertion_results.push_back({{"assertion", name}, {"passed", ok}});
    }

    ordered_json out = {{"scenario", scenario.name},
                        {"seed", scenario.seed},
                        {"publications", metrics.anonymity.publications},
                        {"metrics", metrics.to_json()},
                        {"assertions", assertion_results}};
    std::cout << out.dump() << "\n";

    std::cerr << "scenario '" << scenario.name << "' seed " << scenario.seed << ": "
              << metrics.anonymity.publications << " publications, "
              << transcript.decisions.size() << " peer decisions";
    if (!scenario.assertions.empty())
        std::cerr << ", assertions " << (all_passed ? "passed" : "FAILED");
    std::cerr << "\n";
    return all_passed ? kExitOk : kExitFailed;
}

// --- attack ---------------------------------------------------------------------

struct Expectation {
    std::string name;
    bool passed;
};

arl::Scenario canned_base(arl::ScenarioMode mode, uint64_t seed) {
    arl::Scenario s;
    s.seed = seed;
    s.mode = mode;
    s.duration = 100;
    s.dt = 10;
    s.t_l = 20;
    s.users = {4, 20, true};
    s.peer_count = 3;
    return s;
}

void run_flood(uint64_t seed, std::vector<Expectation>& out, ordered_json& detail) {
    arl::Scenario shc = canned_base(arl::ScenarioMode::shc, seed);
    shc.name = "flood-shc";
    shc.t_l = 5;
    shc.users = {2, 10, true};
    shc.duration = 70;
    shc.peer.queue_capacity = 256;
    shc.attacker = {arl::AttackScript::flood, 50, 50, true, {}};
    arl::FloodReport f1 = arl::flood_report(arl::run(shc));
    out.push_back({"shc: every hoarded message lands", f1.attacker_published > 0 &&
                                                           f1.attacker_fully_accepted ==
                                                               f1.attacker_published});
    detail["shc"] = {{"published", f1.attacker_published},
                     {"fully_accepted", f1.attacker_fully_accepted}};

    arl::Scenario ts = canned_base(arl::ScenarioMode::timestamped, seed);
    ts.name = "flood-timestamped";
    ts.t_l = 5;
    ts.dt = 5;
    ts.users = {2, 10, true};
    ts.duration = 80;
    ts.peer.staleness = arl::StalenessMode::reject;
    ts.peer.max_age = 20;
    ts.attacker = {arl::AttackScript::flood, 50, 50, true, {}};
    arl::FloodReport f2 = arl::flood_report(arl::run(ts));
    out.push_back({"timestamped: no stale message accepted", f2.stale_accepted == 0});
    out.push_back({"timestamped: honest stream unharmed",
                   f2.honest_fully_accepted_after_burst == f2.honest_published_after_burst &&
                       f2.max_honest_latency <= f2.latency_bound});
    detail["timestamped"] = {{"stale_accepted", f2.stale_accepted},
                             {"max_honest_latency", f2.max_honest_latency},
                             {"latency_bound", f2.latency_bound}};
}

void run_linkage(uint64_t seed, std::vector<Expectation>& out, ordered_json& detail) {
    arl::Scenario naive = canned_base(arl::ScenarioMode::naive, seed);
    naive.name = "linkage-naive";
    naive.users = {10, 20, true};
    arl::AnonymityReport a1 = arl::linkage_report(arl::run(naive));
    out.push_back({"naive: every entry linked by digest", a1.digest_join_rate == 1.0});

    arl::Scenario shc = canned_base(arl::ScenarioMode::shc, seed);
    shc.name = "linkage-shc";
    shc.users = {10, 20, true};
    arl::RunTranscript t2 = arl::run(shc);
    arl::AnonymityReport a2 = arl::linkage_report(t2);
    out.push_back({"shc: digest joins vanish", a2.digest_join_rate == 0.0});
    out.push_back({"shc: limiter sees no entry bytes", arl::audit_info_flow(t2)});

    arl::Scenario lone = canned_base(arl::ScenarioMode::timestamped, seed);
    lone.name = "linkage-lone-user";
    lone.users = {1, 80, true};
    lone.duration = 80;
    arl::AnonymityReport a3 = arl::linkage_report(arl::run(lone));
    out.push_back({"lone poster: anonymity set collapses to one",
                   a3.min_set_size == 1 && a3.certain_linkage_rate == 1.0});

    arl::Scenario crowd = canned_base(arl::ScenarioMode::timestamped, seed);
    crowd.name = "linkage-crowd";
    crowd.users = {6, 40, false};
    crowd.t_l = 40;
    crowd.duration = 80;
    arl::AnonymityReport a4 = arl::linkage_report(arl::run(crowd));
    out.push_back({"crowd: no certain links, guessing at best",
                   a4.min_set_size >= 2 && a4.certain_links == 0 &&
                       a4.expected_guess_accuracy <= 0.5});

    detail = {{"naive_join_rate", a1.digest_join_rate},
              {"shc_join_rate", a2.digest_join_rate},
              {"lone_min_set", a3.min_set_size},
              {"crowd_min_set", a4.min_set_size},
              {"crowd_guess_accuracy", a4.expected_guess_accuracy}};
}

void run_rotation(uint64_t seed, std::vector<Expectation>& out, ordered_json& detail) {
    for (uint32_t n : {2u, 3u, 5u}) {
        arl::Scenario s = canned_base(arl::ScenarioMode::federated, seed);
        s.name = "rotation";
        s.users = {0, 20, true};
        s.validators = n;
        s.t_l = 30;
        s.duration = 120;
        s.attacker.script = arl::AttackScript::rotation;

        s.coordination = arl::Coordination::independent;
        arl::RotationReport indep = arl::rotation_report(arl::run(s));
        out.push_back({"independent validators amplify x" + std::to_string(n),
                       indep.amplification == double(n)});

        s.coordination = arl::Coordination::shared;
        arl::RotationReport shared = arl::rotation_report(arl::run(s));
        out.push_back({"shared buckets hold x" + std::to_string(n) + " to 1.0",
                       shared.amplification == 1.0});
        detail["n" + std::to_string(n)] = {{"independent", indep.amplification},
                                           {"shared", shared.amplification}};
    }
}

void run_frontrun(uint64_t seed, std::vector<Expectation>& out, ordered_json& detail) {
    auto stolen_entry_accepted = [](const arl::RunTranscript& t, bool& honest_ok) {
        std::set<std::string> attacker, honest;
        for (const auto& p : t.publications)
            (p.attacker ? attacker : honest).insert(p.entry_digest_hex);
        bool stolen_in = false;
        honest_ok = true;
        for (const auto& set : t.peer_accepted) {
            for (const auto& d : attacker)
                if (std::find(set.begin(), set.end(), d) != set.end()) stolen_in = true;
            for (const auto& d : honest)
                if (std::find(set.begin(), set.end(), d) == set.end()) honest_ok = false;
        }
        return stolen_in;
    };

    for (auto [mode, label] : {std::pair{arl::ScenarioMode::token_h, "token-h"},
                               std::pair{arl::ScenarioMode::token_k, "token-k"}}) {
        for (bool attacker_first : {true, false}) {
            arl::Scenario s = canned_base(mode, seed);
            s.name = "frontrun";
            s.users = {0, 20, true};
            s.attacker = {arl::AttackScript::front_run, 0, 5, attacker_first, {}};
            bool honest_ok = false;
            bool stolen = stolen_entry_accepted(arl::run(s), honest_ok);
            out.push_back({std::string(label) + (attacker_first ? " (attacker first)" : " (victim first)") +
                               ": steal blocked",
                           !stolen && honest_ok});
        }
    }

    arl::Scenario unfixed = canned_base(arl::ScenarioMode::token_h, seed);
    unfixed.name = "frontrun-unfixed";
    unfixed.users = {0, 20, true};
    unfixed.peer.token_entry_binding = false;
    unfixed.attacker = {arl::AttackScript::front_run, 0, 5, true, {}};
    bool honest_ok = false;
    bool stolen = stolen_entry_accepted(arl::run(unfixed), honest_ok);
    out.push_back({"unfixed nonce-only scheme: steal succeeds", stolen});
    detail["unfixed_steal_succeeded"] = stolen;
}

void run_doublespend(uint64_t seed, std::vector<Expectation>& out, ordered_json& detail) {
    auto consistent_for_all_orders = [&](arl::DoubleSpendPolicy policy) {
        bool all = true;
        for (int mask = 0; mask < 8; ++mask) {
            arl::Scenario s = canned_base(arl::ScenarioMode::token_h, seed);
            s.name = "doublespend";
            s.users = {2, 50, true};
            s.peer.double_spend = policy;
            s.attacker = {arl::AttackScript::double_spend,
                          0,
                          10,
                          true,
                          {mask & 1 ? "ab" : "ba", mask & 2 ? "ab" : "ba", mask & 4 ? "ab" : "ba"}};
            if (!arl::consistency_report(arl::run(s)).consistent) all = false;
        }
        return all;
    };

    out.push_back({"greater-hash: consistent under every delivery order",
                   consistent_for_all_orders(arl::DoubleSpendPolicy::greater_hash_wins)});
    out.push_back({"annihilate: consistent under every delivery order",
                   consistent_for_all_orders(arl::DoubleSpendPolicy::annihilate)});
    const bool first_wins_all = consistent_for_all_orders(arl::DoubleSpendPolicy::first_wins);
    out.push_back({"first-wins: diverges for some delivery order", !first_wins_all});
    detail["first_wins_always_consistent"] = first_wins_all;
}

int cmd_attack(const std::string& mode, uint64_t seed, const std::string& out_dir) {
    std::vector<Expectation> expectations;
    ordered_json detail;

    if (mode == "flood")
        run_flood(seed, expectations, detail);
    else if (mode == "linkage")
        run_linkage(seed, expectations, detail);
    else if (mode == "rotation")
        run_rotation(seed, expectations, detail);
    else if (mode == "frontrun")
        run_frontrun(seed, expectations, detail);
    else if (mode == "doublespend")
        run_doublespend(seed, expectations, detail);
    else
        throw Error(Errc::bad_config, "unknown attack mode: " + mode);

    bool all = true;
    ordered_json results = ordered_json::array();
    for (const auto& e : expectations) {
        all = all && e.passed;
        results.push_back({{"check", e.name}, {"passed", e.passed}});
        std::cerr << (e.passed ? "  ok  " : " FAIL ") << e.name << "\n";
    }
    ordered_json out = {{"attack", mode}, {"seed", seed}, {"checks", results}, {"detail", detail}};
    std::cout << out.dump() << "\n";
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_file(out_dir + "/attack_" + mode + ".json", out.dump(2) + "\n");
    }
    return all ? kExitOk : kExitFailed;
}

// --- commit / prove / verify -------------------------------------------------------

int cmd_commit(const std::string& entry_path, const std::string& out_path,
               const std::string& salt_hex) {
    std::string content = read_file(entry_path);
    arl::Entry entry = arl::Entry::from_content(
        arl::Bytes(content.begin(), content.end()));

    arl::Salt salt;
    if (!salt_hex.empty()) {
        salt = arl::Salt::from_secret(bytes32_from_hex(salt_hex, "salt"));
    } else {
        arl::Rng rng = entropy_rng();
        salt = arl::Salt::random(rng);
    }
    arl::SaltedHashCommitment c = arl::shc_from_parts(entry.digest, salt.digest);

    ordered_json j = {{"entry_digest", arl::to_hex(entry.digest)},
                      {"salt_secret", arl::to_hex(arl::ByteView(salt.secret.data(), 32))},
                      {"salt_digest", arl::to_hex(salt.digest)},
                      {"root", arl::to_hex(c.root)}};
    write_file(out_path, j.dump(2) + "\n");
    std::cerr << "commitment root " << arl::to_hex(c.root) << " -> " << out_path << "\n";
    return kExitOk;
}

struct ProveArgs {
    std::string commit_path;
    std::string relation = "time";
    std::string limiter_seed_hex;
    std::string nonce_hex;
    uint64_t timestamp = 0;
    int64_t public_timestamp = -1;
    uint64_t dt = 60;
    std::string out_path;
    std::string registry_path;
};

int cmd_prove(const ProveArgs& args) {
    nlohmann::json commit = nlohmann::json::parse(read_file(args.commit_path), nullptr, false);
    if (commit.is_discarded()) throw Error(Errc::parse_error, "commitment file is not valid JSON");
    arl::Digest entry_digest = arl::digest_from_hex(commit.at("entry_digest").get<std::string>());
    arl::Digest salt_digest = arl::digest_from_hex(commit.at("salt_digest").get<std::string>());

    arl::KeyPair limiter =
        args.limiter_seed_hex.empty()
            ? arl::KeyPair::from_seed(std::array<uint8_t, 32>{0x42})
            : arl::KeyPair::from_seed(bytes32_from_hex(args.limiter_seed_hex, "limiter seed"));

    // the proof's commitment leaf: the entry digest, or the nonce in token mode
    arl::Digest leaf = entry_digest;
    std::optional<arl::Digest> nonce;
    if (args.relation == "token-h") {
        if (args.nonce_hex.empty()) throw Error(Errc::bad_config, "token-h needs --nonce");
        nonce = arl::digest_from_hex(args.nonce_hex);
        leaf = *nonce;
    }
    arl::SaltedHashCommitment c = arl::shc_from_parts(leaf, salt_digest);

    arl::DevProofBackend backend;
    arl::ApprovalProof proof;
    const uint64_t t_pub =
        args.public_timestamp >= 0 ? uint64_t(args.public_timestamp) : args.timestamp;

    if (args.relation == "sig") {
        arl::Signature sigma = arl::sign(limiter.sk, c.root.view());
        arl::SigPublic pub{entry_digest, limiter.pk};
        arl::SigWitness wit{salt_digest, c.root, sigma};
        proof = backend.prove(pub, wit);
    } else if (args.relation == "time" || args.relation == "token-h") {
        arl::TimestampedApproval approval =
            arl::make_timestamped_approval(c.root, args.timestamp, limiter);
        arl::TimedWitness wit{salt_digest, c.root, approval.approval_root, approval.timestamp,
                              approval.signature};
        if (args.relation == "time") {
            arl::TimePublic pub{entry_digest, limiter.pk, t_pub, args.dt};
            proof = backend.prove(pub, wit);
        } else {
            arl::TokenHashPublic pub{*nonce, limiter.pk, t_pub, args.dt, entry_digest};
            proof = backend.prove(pub, wit);
        }
    } else {
        throw Error(Errc::bad_config, "relation must be sig, time or token-h");
    }

    if (!args.registry_path.empty()) backend.save_registry(args.registry_path);
    ordered_json j = {{"relation", arl::relation_name(proof.relation())},
                      {"limiter_key", arl::to_hex(limiter.pk.view())},
                      {"wire", arl::to_hex(arl::serialize_proof(proof))}};
    write_file(args.out_path, j.dump(2) + "\n");
    std::cerr << "proof for relation " << arl::relation_name(proof.relation()) << " -> "
              << args.out_path << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& proof_path, const std::string& registry_path,
               const std::string& entry_path) {
    nlohmann::json j = nlohmann::json::parse(read_file(proof_path), nullptr, false);
    if (j.is_discarded()) throw Error(Errc::parse_error, "proof file is not valid JSON");
    arl::Bytes wire = arl::from_hex(j.at("wire").get<std::string>());
    arl::ApprovalProof proof = arl::parse_proof(wire);  // parse errors exit 2

    arl::DevProofBackend backend;
    if (!registry_path.empty()) backend.load_registry(registry_path);
    if (!backend.verify(proof)) {
        std::cerr << "verification failed\n";
        return kExitFailed;
    }

    if (!entry_path.empty()) {
        std::string content = read_file(entry_path);
        arl::Digest digest =
            arl::sha256(arl::ByteView(reinterpret_cast<const uint8_t*>(content.data()),
                                      content.size()));
        const arl::Digest* bound = std::visit(
            [](const auto& p) -> const arl::Digest* {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, arl::TokenKeyPublic>)
                    return nullptr;
                else
                    return &p.entry_digest;
            },
            proof.public_inputs);
        if (bound && *bound != digest) {
            std::cerr << "entry digest does not match the proof's public inputs\n";
            return kExitFailed;
        }
    }
    std::cerr << "proof verified\n";
    std::cout << ordered_json{{"relation", arl::relation_name(proof.relation())},
                              {"verified", true}}
                     .dump()
              << "\n";
    return kExitOk;
}

// --- vectors --------------------------------------------------------------------

int cmd_vectors() {
    ordered_json lines = ordered_json::array();

    auto digest_of = [](const char* s) {
        return arl::sha256(arl::ByteView(reinterpret_cast<const uint8_t*>(s), strlen(s)));
    };

    lines.push_back({{"vector", "sha256-empty"}, {"input", ""}, {"digest", arl::to_hex(arl::sha256({}))}});
    lines.push_back({{"vector", "sha256-abc"},
                     {"input", arl::to_hex(arl::ByteView(reinterpret_cast<const uint8_t*>("abc"), 3))},
                     {"digest", arl::to_hex(digest_of("abc"))}});

    arl::Digest a, b;
    a.bytes.fill(0x11);
    b.bytes.fill(0x22);
    lines.push_back({{"vector", "hash-concat"},
                     {"a", arl::to_hex(a)},
                     {"b", arl::to_hex(b)},
                     {"digest", arl::to_hex(arl::sha256_concat(a, b))}});
    lines.push_back({{"vector", "merkle-empty-leaf"}, {"digest", arl::to_hex(arl::merkle_empty_leaf())}});

    // commitment over a fixed entry and salt
    arl::Entry entry = arl::Entry::from_content({'h', 'e', 'l', 'l', 'o', ' ', 'w', 'o', 'r', 'l', 'd'});
    std::array<uint8_t, 32> secret;
    for (size_t i = 0; i < 32; ++i) secret[i] = uint8_t(i);
    arl::Salt salt = arl::Salt::from_secret(secret);
    arl::SaltedHashCommitment c = arl::shc_from_parts(entry.digest, salt.digest);
    lines.push_back({{"vector", "commitment"},
                     {"entry_digest", arl::to_hex(entry.digest)},
                     {"salt_digest", arl::to_hex(salt.digest)},
                     {"root", arl::to_hex(c.root)}});

    const uint64_t ts = 1'700'000'000;
    lines.push_back({{"vector", "timestamped-approval-root"},
                     {"commitment_root", arl::to_hex(c.root)},
                     {"timestamp", ts},
                     {"approval_root", arl::to_hex(arl::approval_root_for(c.root, ts))}});

    std::vector<arl::Digest> leaves;
    for (uint8_t i = 1; i <= 5; ++i) leaves.push_back(arl::sha256(arl::ByteView(&i, 1)));
    arl::MerkleTree tree = arl::merkle_build(leaves, 3);
    ordered_json path = ordered_json::array();
    for (const auto& step : tree.paths[0])
        path.push_back({{"sibling", arl::to_hex(step.sibling)},
                        {"side", step.side == arl::Side::left ? "left" : "right"}});
    lines.push_back({{"vector", "merkle-depth3"},
                     {"leaves", 5},
                     {"root", arl::to_hex(tree.root)},
                     {"path0", path}});

    for (const auto& line : lines) std::cout << line.dump() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anonymous rate limiting for permissionless content indexes"};
    app.require_subcommand(1);

    std::string hash_backend;
    app.add_option("--hash-backend", hash_backend, "force a hash kernel: scalar or avx2")
        ->check(CLI::IsMember({"scalar", "avx2"}));

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "execute a scenario file");
    run_cmd->add_option("--scenario", run_args.scenario_path, "scenario JSON path")->required();
    run_cmd->add_option("--out", run_args.out_dir, "directory for transcript.jsonl and metrics.json");
    run_cmd->add_option("--seed", run_args.seed_override, "override the scenario seed");

    std::string attack_mode;
    std::string attack_out;
    uint64_t attack_seed = 1;
    auto* attack_cmd = app.add_subcommand("attack", "run a canned adversarial suite");
    attack_cmd->add_option("--mode", attack_mode, "flood|linkage|rotation|frontrun|doublespend")
        ->required()
        ->check(CLI::IsMember({"flood", "linkage", "rotation", "frontrun", "doublespend"}));
    attack_cmd->add_option("--seed", attack_seed, "base seed");
    attack_cmd->add_option("--out", attack_out, "directory for the attack report");

    std::string commit_entry, commit_out, commit_salt;
    auto* commit_cmd = app.add_subcommand("commit", "build a salted commitment for an entry file");
    commit_cmd->add_option("--entry", commit_entry, "entry content file")->required();
    commit_cmd->add_option("--out", commit_out, "commitment JSON output")->required();
    commit_cmd->add_option("--salt", commit_salt, "fixed 32-byte salt secret (hex)");

    ProveArgs prove_args;
    auto* prove_cmd = app.add_subcommand("prove", "issue a local approval and prove a relation");
    prove_cmd->add_option("--commit", prove_args.commit_path, "commitment JSON from 'commit'")
        ->required();
    prove_cmd->add_option("--relation", prove_args.relation, "sig|time|token-h")
        ->check(CLI::IsMember({"sig", "time", "token-h"}));
    prove_cmd->add_option("--limiter-seed", prove_args.limiter_seed_hex,
                          "32-byte limiter key seed (hex)");
    prove_cmd->add_option("--nonce", prove_args.nonce_hex, "32-byte nonce (hex, token-h)");
    prove_cmd->add_option("--timestamp", prove_args.timestamp, "approval timestamp T");
    prove_cmd->add_option("--public-timestamp", prove_args.public_timestamp,
                          "published timestamp T' (default T)");
    prove_cmd->add_option("--dt", prove_args.dt, "allowed |T - T'| bound");
    prove_cmd->add_option("--out", prove_args.out_path, "proof JSON output")->required();
    prove_cmd->add_option("--registry", prove_args.registry_path,
                          "verification oracle registry file to append");

    std::string verify_proof, verify_registry, verify_entry;
    auto* verify_cmd = app.add_subcommand("verify", "verify a proof against an oracle registry");
    verify_cmd->add_option("--proof", verify_proof, "proof JSON from 'prove'")->required();
    verify_cmd->add_option("--registry", verify_registry, "oracle registry file")->required();
    verify_cmd->add_option("--entry", verify_entry, "optionally check the entry binding");

    auto* vectors_cmd = app.add_subcommand("vectors", "print the pinned golden test vectors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (!hash_backend.empty()) {
            arl::HashBackend b =
                hash_backend == "avx2" ? arl::HashBackend::avx2 : arl::HashBackend::scalar;
            if (!arl::select_hash_backend(b)) {
                std::cerr << "hash backend '" << hash_backend << "' not supported on this cpu\n";
                return kExitUsage;
            }
        }
        if (*run_cmd) return cmd_run(run_args);
        if (*attack_cmd) return cmd_attack(attack_mode, attack_seed, attack_out);
        if (*commit_cmd) return cmd_commit(commit_entry, commit_out, commit_salt);
        if (*prove_cmd) return cmd_prove(prove_args);
        if (*verify_cmd) return cmd_verify(verify_proof, verify_registry, verify_entry);
        if (*vectors_cmd) return cmd_vectors();
    } catch (const Error& e) {
        std::cerr << "error (" << arl::errc_name(e.code()) << "): " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
