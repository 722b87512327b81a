#include <doctest.h>

#include "arl/errors.hpp"
#include "arl/merkle.hpp"
#include "arl/rng.hpp"
#include "arl/sha256.hpp"
#include "fixture.hpp"

using namespace arl;

namespace {

// Test-side oracle: folds a path straight from the encoding definition,
// independent of merkle_verify.
Digest oracle_fold(const Digest& leaf, const MerklePath& path) {
    if (path.empty()) return leaf;
    Bytes m{0x00};
    append(m, leaf.view());
    Digest cur = sha256(m);
    for (const auto& step : path) {
        Bytes node{0x01};
        if (step.side == Side::left) {
            append(node, step.sibling.view());
            append(node, cur.view());
        } else {
            append(node, cur.view());
            append(node, step.sibling.view());
        }
        cur = sha256(node);
    }
    return cur;
}

std::vector<Digest> random_leaves(Rng& rng, size_t n) {
    std::vector<Digest> leaves(n);
    for (auto& l : leaves) l.bytes = rng.bytes32();
    return leaves;
}

}  // namespace

TEST_SUITE("merkle") {

TEST_CASE("depth-0 tree is its leaf") {
    Digest leaf = sha256(Bytes{'s', 'o', 'l', 'o'});
    MerkleTree t = merkle_build(std::span<const Digest>(&leaf, 1), 0);
    CHECK(t.root == leaf);
    REQUIRE(t.paths.size() == 1);
    CHECK(t.paths[0].empty());
    CHECK(merkle_verify(leaf, {}, leaf));
    CHECK(to_hex(t.root) == golden()["merkle_depth0"]["root_hex"].get<std::string>());
}

TEST_CASE("pinned depth-3 tree with 5 leaves") {
    const auto& g = golden()["merkle_depth3_5leaves"];
    std::vector<Digest> leaves;
    for (const auto& hex : g["leaves_hex"]) leaves.push_back(digest_from_hex(hex.get<std::string>()));

    MerkleTree t = merkle_build(leaves, 3);
    CHECK(to_hex(t.root) == g["root_hex"].get<std::string>());
    REQUIRE(t.paths.size() == 5);
    for (size_t i = 0; i < leaves.size(); ++i) {
        MerklePath expected = path_from_json(g["paths"][i]);
        CHECK(t.paths[i] == expected);
        CHECK(t.paths[i].size() == 3);
        CHECK(merkle_verify(leaves[i], t.paths[i], t.root));
        CHECK(oracle_fold(leaves[i], t.paths[i]) == t.root);
    }
}

TEST_CASE("full depth-3 tree: every path has length 3 and verifies") {
    Rng rng(5);
    auto leaves = random_leaves(rng, 8);
    MerkleTree t = merkle_build(leaves, 3);
    for (size_t i = 0; i < 8; ++i) {
        CHECK(t.paths[i].size() == 3);
        CHECK(merkle_verify(leaves[i], t.paths[i], t.root));
    }
}

TEST_CASE("capacity errors") {
    Rng rng(6);
    auto nine = random_leaves(rng, 9);
    CHECK_THROWS_WITH_AS(merkle_build(nine, 3), "leaf count exceeds 2^depth", Error);
    try {
        merkle_build(nine, 3);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::too_many_leaves);
    }
    CHECK_THROWS_AS(merkle_build({}, 3), Error);

    auto two = random_leaves(rng, 2);
    CHECK_THROWS_AS(merkle_build(two, 0), Error);
}

TEST_CASE("round trip property across sizes and depths") {
    Rng rng(77);
    for (uint32_t depth : {1u, 2u, 3u, 4u, 6u}) {
        const size_t cap = size_t(1) << depth;
        for (int rep = 0; rep < 3; ++rep) {
            size_t n = 1 + rng.below(cap);
            auto leaves = random_leaves(rng, n);
            MerkleTree t = merkle_build(leaves, depth);
            for (size_t i = 0; i < n; ++i) {
                CHECK(t.paths[i].size() == depth);
                CHECK(merkle_verify(leaves[i], t.paths[i], t.root));
                CHECK(oracle_fold(leaves[i], t.paths[i]) == t.root);
            }
        }
    }
}

TEST_CASE("identical inputs give identical roots on every backend") {
    Rng rng(13);
    auto leaves = random_leaves(rng, 6);
    const HashBackend previous = active_hash_backend();

    REQUIRE(select_hash_backend(HashBackend::scalar));
    Digest scalar_root = merkle_build(leaves, 3).root;
    if (hash_backend_supported(HashBackend::avx2)) {
        REQUIRE(select_hash_backend(HashBackend::avx2));
        CHECK(merkle_build(leaves, 3).root == scalar_root);
    }
    select_hash_backend(previous);
}

TEST_CASE("exhaustive single-bit flips at depth 3 all fail verification") {
    Rng rng(21);
    auto leaves = random_leaves(rng, 8);
    MerkleTree t = merkle_build(leaves, 3);
    const Digest& leaf = leaves[2];
    const MerklePath& path = t.paths[2];
    REQUIRE(merkle_verify(leaf, path, t.root));

    for (size_t bit = 0; bit < 256; ++bit) {
        Digest bad = leaf;
        bad.bytes[bit / 8] ^= uint8_t(1 << (bit % 8));
        CHECK_FALSE(merkle_verify(bad, path, t.root));

        Digest bad_root = t.root;
        bad_root.bytes[bit / 8] ^= uint8_t(1 << (bit % 8));
        CHECK_FALSE(merkle_verify(leaf, path, bad_root));
    }
    for (size_t step = 0; step < path.size(); ++step) {
        for (size_t bit = 0; bit < 256; ++bit) {
            MerklePath bad = path;
            bad[step].sibling.bytes[bit / 8] ^= uint8_t(1 << (bit % 8));
            CHECK_FALSE(merkle_verify(leaf, bad, t.root));
        }
        MerklePath flipped = path;
        flipped[step].side = flipped[step].side == Side::left ? Side::right : Side::left;
        CHECK_FALSE(merkle_verify(leaf, flipped, t.root));
    }
}

TEST_CASE("padding digest is pinned") {
    CHECK(to_hex(merkle_empty_leaf()) == golden()["empty_leaf_hex"].get<std::string>());
}

}  // TEST_SUITE
