#include "arl/merkle.hpp"

#include "arl/errors.hpp"
#include "arl/sha256.hpp"

namespace arl {

namespace {
constexpr uint8_t kLeafPrefix = 0x00;
constexpr uint8_t kNodePrefix = 0x01;
constexpr uint32_t kMaxDepth = 24;

Digest leaf_node(const Digest& leaf) {
    Digest out;
    sha256_batch_prefixed(kLeafPrefix, std::span<const Digest>(&leaf, 1), std::span<Digest>(&out, 1));
    return out;
}

Digest internal_node(const Digest& l, const Digest& r) {
    Digest out;
    sha256_batch_prefixed_pairs(kNodePrefix, std::span<const Digest>(&l, 1),
                                std::span<const Digest>(&r, 1), std::span<Digest>(&out, 1));
    return out;
}
}  // namespace

const Digest& merkle_empty_leaf() {
    static const Digest d = [] {
        uint8_t zero = 0;
        return sha256(ByteView(&zero, 1));
    }();
    return d;
}

MerkleTree merkle_build(std::span<const Digest> leaves, uint32_t depth) {
    if (depth > kMaxDepth) throw Error(Errc::bad_config, "tree depth too large");
    if (leaves.empty()) throw Error(Errc::empty_leaves, "merkle_build needs at least one leaf");
    const size_t capacity = size_t(1) << depth;
    if (leaves.size() > capacity)
        throw Error(Errc::too_many_leaves, "leaf count exceeds 2^depth");

    MerkleTree tree;
    tree.depth = depth;
    tree.paths.resize(leaves.size());

    if (depth == 0) {
        tree.root = leaves[0];
        return tree;
    }

    // levels[0] holds the hashed leaf slots; each higher level halves.
    std::vector<std::vector<Digest>> levels;
    std::vector<Digest> slots(leaves.begin(), leaves.end());
    slots.resize(capacity, merkle_empty_leaf());

    std::vector<Digest> level(capacity);
    sha256_batch_prefixed(kLeafPrefix, slots, level);
    levels.push_back(std::move(level));

    while (levels.back().size() > 1) {
        const auto& prev = levels.back();
        const size_t half = prev.size() / 2;
        std::vector<Digest> lefts(half), rights(half), next(half);
        for (size_t i = 0; i < half; ++i) {
            lefts[i] = prev[2 * i];
            rights[i] = prev[2 * i + 1];
        }
        sha256_batch_prefixed_pairs(kNodePrefix, lefts, rights, next);
        levels.push_back(std::move(next));
    }
    tree.root = levels.back()[0];

    for (size_t i = 0; i < leaves.size(); ++i) {
        MerklePath path;
        path.reserve(depth);
        size_t idx = i;
        for (uint32_t lvl = 0; lvl < depth; ++lvl) {
            const bool is_left_child = (idx & 1) == 0;
            path.push_back({levels[lvl][idx ^ 1], is_left_child ? Side::right : Side::left});
            idx >>= 1;
        }
        tree.paths[i] = std::move(path);
    }
    return tree;
}

Digest merkle_fold(const Digest& leaf, const MerklePath& path) {
    if (path.empty()) return leaf;
    Digest cur = leaf_node(leaf);
    for (const PathStep& step : path) {
        cur = step.side == Side::left ? internal_node(step.sibling, cur)
                                      : internal_node(cur, step.sibling);
    }
    return cur;
}

}  // namespace arl
