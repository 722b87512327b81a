#!/usr/bin/env python3
"""Independent generator for the golden vectors in tests/fixtures/golden_vectors.json.

Recomputes every pinned value with hashlib / the `cryptography` package so the
fixtures never depend on the C++ implementation under test. Run from the repo
root:

    python3 tests/oracle/make_vectors.py > tests/fixtures/golden_vectors.json
"""

import hashlib
import json
import struct

from cryptography.hazmat.primitives.asymmetric.ed25519 import Ed25519PrivateKey


def sha256(b: bytes) -> bytes:
    return hashlib.sha256(b).digest()


def be64(x: int) -> bytes:
    return struct.pack(">Q", x)


def hash_concat(a: bytes, b: bytes) -> bytes:
    return sha256(a + b)


# Merkle encoding: leaf nodes are hashed with a 0x00 prefix, internal nodes
# with 0x01; unfilled slots hold sha256(b"\x00"); a depth-0 tree is its leaf.
EMPTY_LEAF = sha256(b"\x00")


def leaf_node(leaf: bytes) -> bytes:
    return sha256(b"\x00" + leaf)


def internal(l: bytes, r: bytes) -> bytes:
    return sha256(b"\x01" + l + r)


def merkle_build(leaves, depth):
    assert 1 <= len(leaves) <= (1 << depth)
    if depth == 0:
        return leaves[0], [[]]
    slots = list(leaves) + [EMPTY_LEAF] * ((1 << depth) - len(leaves))
    level = [leaf_node(s) for s in slots]
    levels = [level]
    while len(level) > 1:
        level = [internal(level[i], level[i + 1]) for i in range(0, len(level), 2)]
        levels.append(level)
    paths = []
    for i in range(len(leaves)):
        path = []
        idx = i
        for lvl in levels[:-1]:
            sib = idx ^ 1
            side = "right" if idx % 2 == 0 else "left"
            path.append({"sibling": lvl[sib].hex(), "side": side})
            idx >>= 1
        paths.append(path)
    return levels[-1][0], paths


def merkle_fold(leaf: bytes, path) -> bytes:
    if not path:
        return leaf
    cur = leaf_node(leaf)
    for step in path:
        sib = bytes.fromhex(step["sibling"])
        cur = internal(sib, cur) if step["side"] == "left" else internal(cur, sib)
    return cur


def length_prefixed(*fields: bytes) -> bytes:
    out = b""
    for f in fields:
        out += struct.pack(">I", len(f)) + f
    return out


out = {}

# --- plain hashing -----------------------------------------------------------
out["sha256"] = [
    {"input_hex": b"".hex(), "digest_hex": sha256(b"").hexdigest() if False else sha256(b"").hex()},
    {"input_hex": b"abc".hex(), "digest_hex": sha256(b"abc").hex()},
    {
        "input_hex": b"abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq".hex(),
        "digest_hex": sha256(b"abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq").hex(),
    },
    {"input_hex": b"\x00".hex(), "digest_hex": EMPTY_LEAF.hex()},
]

a = bytes([0x11] * 32)
b = bytes([0x22] * 32)
out["hash_concat"] = {
    "a_hex": a.hex(),
    "b_hex": b.hex(),
    "digest_hex": hash_concat(a, b).hex(),
    "swapped_digest_hex": hash_concat(b, a).hex(),
}

out["empty_leaf_hex"] = EMPTY_LEAF.hex()

# --- merkle ------------------------------------------------------------------
leaves5 = [sha256(bytes([i])) for i in range(1, 6)]
root5, paths5 = merkle_build(leaves5, 3)
for lf, p in zip(leaves5, paths5):
    assert merkle_fold(lf, p) == root5
out["merkle_depth3_5leaves"] = {
    "leaves_hex": [l.hex() for l in leaves5],
    "depth": 3,
    "root_hex": root5.hex(),
    "paths": paths5,
}

leaves1 = [sha256(b"solo")]
root1, paths1 = merkle_build(leaves1, 0)
out["merkle_depth0"] = {"leaf_hex": leaves1[0].hex(), "root_hex": root1.hex()}
assert root1 == leaves1[0] and paths1 == [[]]

# --- commitments -------------------------------------------------------------
entry_content = b"hello world"
entry_digest = sha256(entry_content)
salt_secret = bytes(range(32))
salt_digest = sha256(salt_secret)
c_root = hash_concat(entry_digest, salt_digest)
out["shc"] = {
    "entry_content_hex": entry_content.hex(),
    "entry_digest_hex": entry_digest.hex(),
    "salt_secret_hex": salt_secret.hex(),
    "salt_digest_hex": salt_digest.hex(),
    "root_hex": c_root.hex(),
}

T = 1700000000
a_root = hash_concat(c_root, sha256(be64(T)))
out["timestamped_approval"] = {
    "commitment_root_hex": c_root.hex(),
    "timestamp": T,
    "timestamp_be64_hex": be64(T).hex(),
    "approval_root_hex": a_root.hex(),
}

# --- ed25519 (RFC 8032 test 1) ------------------------------------------------
rfc_seed = bytes.fromhex("9d61b19deffd5a60ba844af492ec2cc44449c5697b326919703bac031cae7f60")
rfc_key = Ed25519PrivateKey.from_private_bytes(rfc_seed)
rfc_pk = rfc_key.public_key().public_bytes_raw()
rfc_sig = rfc_key.sign(b"")
out["ed25519_rfc8032_test1"] = {
    "seed_hex": rfc_seed.hex(),
    "public_key_hex": rfc_pk.hex(),
    "message_hex": "",
    "signature_hex": rfc_sig.hex(),
}
assert rfc_pk.hex() == "d75a980182b10ab7d54bfed3c964073a0ee172f3daa62325af021a68f707511a"

# --- approval proof wire format (timestamp relation) ---------------------------
# layout: relation byte | length-prefixed public fields | u32 blob length | blob
# blob = sha256("arl.proof.v1" | relation byte | enc(public) | enc(witness))
limiter_seed = bytes([0x42] * 32)
limiter_key = Ed25519PrivateKey.from_private_bytes(limiter_seed)
limiter_pk = limiter_key.public_key().public_bytes_raw()
sigma = limiter_key.sign(a_root)

T_pub = T + 30
dt = 60
rel_time = 2
enc_pub = length_prefixed(entry_digest, limiter_pk, be64(T_pub), be64(dt))
enc_wit = length_prefixed(salt_digest, c_root, a_root, be64(T), sigma)
blob = sha256(b"arl.proof.v1" + bytes([rel_time]) + enc_pub + enc_wit)
wire = bytes([rel_time]) + enc_pub + struct.pack(">I", len(blob)) + blob

out["proof_time_relation"] = {
    "limiter_seed_hex": limiter_seed.hex(),
    "limiter_key_hex": limiter_pk.hex(),
    "entry_digest_hex": entry_digest.hex(),
    "salt_digest_hex": salt_digest.hex(),
    "commitment_root_hex": c_root.hex(),
    "approval_root_hex": a_root.hex(),
    "signature_hex": sigma.hex(),
    "private_timestamp": T,
    "public_timestamp": T_pub,
    "dt_bound": dt,
    "blob_hex": blob.hex(),
    "wire_hex": wire.hex(),
}

print(json.dumps(out, indent=2))
