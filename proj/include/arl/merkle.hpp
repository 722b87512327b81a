#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "arl/bytes.hpp"

namespace arl {

/// Which side of the running node the sibling digest sits on.
enum class Side : uint8_t { left = 0, right = 1 };

struct PathStep {
    Digest sibling;
    Side side;
    bool operator==(const PathStep&) const = default;
};

/// Leaf-to-root inclusion path. Its length always equals the tree depth.
using MerklePath = std::vector<PathStep>;

struct MerkleTree {
    Digest root;
    std::vector<MerklePath> paths;  // one per input leaf, same order
    uint32_t depth = 0;
};

/// The digest occupying unfilled leaf slots: H(0x00), a value no 32-byte
/// payload hashes to by construction of the leaf encoding.
const Digest& merkle_empty_leaf();

/// Complete binary tree of exactly `depth` levels over up to 2^depth leaves.
/// Leaves are hashed with a 0x00 prefix and internal nodes with 0x01; a
/// depth-0 tree is its single leaf verbatim.
/// Throws Error(empty_leaves) / Error(too_many_leaves) / Error(bad_config).
MerkleTree merkle_build(std::span<const Digest> leaves, uint32_t depth);

/// Root produced by folding `leaf` along `path`.
Digest merkle_fold(const Digest& leaf, const MerklePath& path);

inline bool merkle_verify(const Digest& leaf, const MerklePath& path, const Digest& root) {
    return merkle_fold(leaf, path) == root;
}

}  // namespace arl
