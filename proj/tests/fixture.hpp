#pragma once

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "arl/bytes.hpp"
#include "arl/merkle.hpp"

// Pinned expected values, generated once by tests/oracle/make_vectors.py with
// an independent implementation of the byte encodings.
inline const nlohmann::json& golden() {
    static const nlohmann::json j = [] {
        std::ifstream in(std::string(ARL_FIXTURE_DIR) + "/golden_vectors.json");
        if (!in) throw std::runtime_error("golden_vectors.json not found");
        return nlohmann::json::parse(in);
    }();
    return j;
}

inline arl::MerklePath path_from_json(const nlohmann::json& steps) {
    arl::MerklePath path;
    for (const auto& s : steps) {
        arl::PathStep step;
        step.sibling = arl::digest_from_hex(s["sibling"].get<std::string>());
        step.side = s["side"].get<std::string>() == "left" ? arl::Side::left : arl::Side::right;
        path.push_back(step);
    }
    return path;
}
