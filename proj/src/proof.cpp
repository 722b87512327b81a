#include "arl/proof.hpp"

#include <fstream>
#include <mutex>

#include <nlohmann/json.hpp>

#include "arl/commitments.hpp"
#include "arl/errors.hpp"
#include "arl/sha256.hpp"

namespace arl {

namespace {

constexpr const char kBlobDomainTag[] = "arl.proof.v1";

uint64_t abs_diff(uint64_t a, uint64_t b) { return a > b ? a - b : b - a; }

bool timed_core_holds(const Digest& leaf, const PublicKey& limiter_key, uint64_t public_ts,
                      uint64_t dt_bound, const TimedWitness& w) {
    if (sha256_concat(leaf, w.salt_digest) != w.commitment_root) return false;
    if (approval_root_for(w.commitment_root, w.approved_at) != w.approval_root) return false;
    if (abs_diff(w.approved_at, public_ts) > dt_bound) return false;
    return verify_signature(limiter_key, w.approval_root.view(), w.signature);
}

void append_u64_field(Bytes& out, uint64_t v) {
    auto enc = be64(v);
    append_field(out, ByteView(enc.data(), enc.size()));
}

[[noreturn]] void shape_error(RelationId id) {
    throw Error(Errc::shape_mismatch,
                std::string("witness does not fit relation ") + relation_name(id));
}

}  // namespace

const char* relation_name(RelationId id) {
    switch (id) {
        case RelationId::sig: return "sig";
        case RelationId::time: return "time";
        case RelationId::token_hash: return "token-hash";
        case RelationId::token_key: return "token-key";
        case RelationId::inclusion: return "inclusion";
    }
    return "unknown";
}

RelationId relation_of(const PublicInputs& pub) {
    return std::visit(
        [](const auto& p) -> RelationId {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SigPublic>) return RelationId::sig;
            if constexpr (std::is_same_v<T, TimePublic>) return RelationId::time;
            if constexpr (std::is_same_v<T, TokenHashPublic>) return RelationId::token_hash;
            if constexpr (std::is_same_v<T, TokenKeyPublic>) return RelationId::token_key;
            if constexpr (std::is_same_v<T, InclusionPublic>) return RelationId::inclusion;
        },
        pub);
}

bool relation_holds(const PublicInputs& pub, const Witness& wit) {
    if (const auto* p = std::get_if<SigPublic>(&pub)) {
        const auto* w = std::get_if<SigWitness>(&wit);
        if (!w) shape_error(RelationId::sig);
        if (sha256_concat(p->entry_digest, w->salt_digest) != w->commitment_root) return false;
        return verify_signature(p->limiter_key, w->commitment_root.view(), w->signature);
    }
    if (const auto* p = std::get_if<TimePublic>(&pub)) {
        const auto* w = std::get_if<TimedWitness>(&wit);
        if (!w) shape_error(RelationId::time);
        return timed_core_holds(p->entry_digest, p->limiter_key, p->public_timestamp, p->dt_bound,
                                *w);
    }
    if (const auto* p = std::get_if<TokenHashPublic>(&pub)) {
        const auto* w = std::get_if<TimedWitness>(&wit);
        if (!w) shape_error(RelationId::token_hash);
        // entry_digest is deliberately unconstrained here: the proof object
        // binds it, which is what defeats front-running.
        return timed_core_holds(p->nonce_leaf, p->limiter_key, p->public_timestamp, p->dt_bound,
                                *w);
    }
    if (const auto* p = std::get_if<TokenKeyPublic>(&pub)) {
        const auto* w = std::get_if<TimedWitness>(&wit);
        if (!w) shape_error(RelationId::token_key);
        Digest leaf = sha256(p->nonce_key.view());
        return timed_core_holds(leaf, p->limiter_key, p->public_timestamp, p->dt_bound, *w);
    }
    const auto& p = std::get<InclusionPublic>(pub);
    const auto* w = std::get_if<InclusionWitness>(&wit);
    if (!w) shape_error(RelationId::inclusion);
    if (w->path.size() != p.tree_depth) return false;
    Digest commitment = sha256_concat(p.entry_digest, w->salt_digest);
    return merkle_fold(commitment, w->path) == p.collector_root;
}

Bytes encode_public_inputs(const PublicInputs& pub) {
    Bytes out;
    if (const auto* p = std::get_if<SigPublic>(&pub)) {
        append_field(out, p->entry_digest.view());
        append_field(out, p->limiter_key.view());
    } else if (const auto* p = std::get_if<TimePublic>(&pub)) {
        append_field(out, p->entry_digest.view());
        append_field(out, p->limiter_key.view());
        append_u64_field(out, p->public_timestamp);
        append_u64_field(out, p->dt_bound);
    } else if (const auto* p = std::get_if<TokenHashPublic>(&pub)) {
        append_field(out, p->nonce_leaf.view());
        append_field(out, p->limiter_key.view());
        append_u64_field(out, p->public_timestamp);
        append_u64_field(out, p->dt_bound);
        append_field(out, p->entry_digest.view());
    } else if (const auto* p = std::get_if<TokenKeyPublic>(&pub)) {
        append_field(out, p->nonce_key.view());
        append_field(out, p->limiter_key.view());
        append_u64_field(out, p->public_timestamp);
        append_u64_field(out, p->dt_bound);
    } else {
        const auto& inc = std::get<InclusionPublic>(pub);
        append_field(out, inc.entry_digest.view());
        append_field(out, inc.collector_root.view());
        append_u64_field(out, inc.tree_depth);
    }
    return out;
}

Bytes encode_witness(const Witness& wit) {
    Bytes out;
    if (const auto* w = std::get_if<SigWitness>(&wit)) {
        append_field(out, w->salt_digest.view());
        append_field(out, w->commitment_root.view());
        append_field(out, w->signature.view());
    } else if (const auto* w = std::get_if<TimedWitness>(&wit)) {
        append_field(out, w->salt_digest.view());
        append_field(out, w->commitment_root.view());
        append_field(out, w->approval_root.view());
        append_u64_field(out, w->approved_at);
        append_field(out, w->signature.view());
    } else {
        const auto& inc = std::get<InclusionWitness>(wit);
        append_field(out, inc.salt_digest.view());
        Bytes path_bytes;
        for (const PathStep& step : inc.path) {
            path_bytes.push_back(static_cast<uint8_t>(step.side));
            append(path_bytes, step.sibling.view());
        }
        append_field(out, path_bytes);
    }
    return out;
}

Bytes serialize_proof(const ApprovalProof& proof) {
    Bytes out;
    out.push_back(static_cast<uint8_t>(proof.relation()));
    append(out, encode_public_inputs(proof.public_inputs));
    append_field(out, proof.blob);
    return out;
}

namespace {

class Reader {
  public:
    explicit Reader(ByteView data) : data_(data) {}

    uint8_t u8() {
        need(1);
        return data_[pos_++];
    }

    Bytes field() {
        need(4);
        uint32_t len = read_be32(data_.data() + pos_);
        pos_ += 4;
        need(len);
        Bytes out(data_.begin() + static_cast<long>(pos_),
                  data_.begin() + static_cast<long>(pos_ + len));
        pos_ += len;
        return out;
    }

    Digest digest_field() {
        Bytes f = field();
        if (f.size() != 32) throw Error(Errc::parse_error, "expected 32-byte field");
        Digest d;
        std::copy(f.begin(), f.end(), d.bytes.begin());
        return d;
    }

    PublicKey key_field() {
        Bytes f = field();
        if (f.size() != 32) throw Error(Errc::parse_error, "expected 32-byte key");
        PublicKey k;
        std::copy(f.begin(), f.end(), k.bytes.begin());
        return k;
    }

    uint64_t u64_field() {
        Bytes f = field();
        if (f.size() != 8) throw Error(Errc::parse_error, "expected 8-byte integer");
        return read_be64(f.data());
    }

    bool done() const { return pos_ == data_.size(); }

  private:
    void need(size_t n) {
        if (pos_ + n > data_.size()) throw Error(Errc::parse_error, "truncated proof");
    }

    ByteView data_;
    size_t pos_ = 0;
};

}  // namespace

ApprovalProof parse_proof(ByteView wire) {
    Reader r(wire);
    const uint8_t rel = r.u8();
    PublicInputs pub;
    switch (static_cast<RelationId>(rel)) {
        case RelationId::sig: {
            SigPublic p;
            p.entry_digest = r.digest_field();
            p.limiter_key = r.key_field();
            pub = p;
            break;
        }
        case RelationId::time: {
            TimePublic p;
            p.entry_digest = r.digest_field();
            p.limiter_key = r.key_field();
            p.public_timestamp = r.u64_field();
            p.dt_bound = r.u64_field();
            pub = p;
            break;
        }
        case RelationId::token_hash: {
            TokenHashPublic p;
            p.nonce_leaf = r.digest_field();
            p.limiter_key = r.key_field();
            p.public_timestamp = r.u64_field();
            p.dt_bound = r.u64_field();
            p.entry_digest = r.digest_field();
            pub = p;
            break;
        }
        case RelationId::token_key: {
            TokenKeyPublic p;
            p.nonce_key = r.key_field();
            p.limiter_key = r.key_field();
            p.public_timestamp = r.u64_field();
            p.dt_bound = r.u64_field();
            pub = p;
            break;
        }
        case RelationId::inclusion: {
            InclusionPublic p;
            p.entry_digest = r.digest_field();
            p.collector_root = r.digest_field();
            uint64_t depth = r.u64_field();
            if (depth > 0xffffffffULL) throw Error(Errc::parse_error, "depth out of range");
            p.tree_depth = static_cast<uint32_t>(depth);
            pub = p;
            break;
        }
        default:
            throw Error(Errc::parse_error, "unknown relation id");
    }
    ApprovalProof proof;
    proof.public_inputs = pub;
    proof.blob = r.field();
    if (!r.done()) throw Error(Errc::parse_error, "trailing bytes after proof");
    return proof;
}

// --- development backend ------------------------------------------------------

ApprovalProof DevProofBackend::prove(const PublicInputs& pub, const Witness& wit) {
    if (!relation_holds(pub, wit))
        throw Error(Errc::relation_unsatisfied, "witness does not satisfy the relation");

    Bytes material;
    material.insert(material.end(), kBlobDomainTag, kBlobDomainTag + sizeof(kBlobDomainTag) - 1);
    material.push_back(static_cast<uint8_t>(relation_of(pub)));
    Bytes pub_enc = encode_public_inputs(pub);
    append(material, pub_enc);
    append(material, encode_witness(wit));
    Digest binding = sha256(material);

    ApprovalProof proof;
    proof.public_inputs = pub;
    proof.blob.assign(binding.bytes.begin(), binding.bytes.end());

    std::unique_lock lock(mutex_);
    issued_.emplace(proof.blob, Issued{relation_of(pub), std::move(pub_enc)});
    return proof;
}

bool DevProofBackend::verify(const ApprovalProof& proof) const {
    std::shared_lock lock(mutex_);
    auto it = issued_.find(proof.blob);
    if (it == issued_.end()) return false;
    return it->second.relation == proof.relation() &&
           it->second.public_encoding == encode_public_inputs(proof.public_inputs);
}

size_t DevProofBackend::issued_count() const {
    std::shared_lock lock(mutex_);
    return issued_.size();
}

void DevProofBackend::save_registry(const std::string& path) const {
    std::shared_lock lock(mutex_);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(Errc::bad_config, "cannot open registry file for writing: " + path);
    for (const auto& [blob, issued] : issued_) {
        nlohmann::ordered_json line = {
            {"blob", to_hex(blob)},
            {"relation", static_cast<int>(issued.relation)},
            {"public", to_hex(issued.public_encoding)},
        };
        out << line.dump() << '\n';
    }
}

void DevProofBackend::load_registry(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::bad_config, "cannot open registry file: " + path);
    std::unique_lock lock(mutex_);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("blob") || !j.contains("relation") || !j.contains("public"))
            throw Error(Errc::parse_error, "malformed registry line");
        int rel = j["relation"].get<int>();
        if (rel < 1 || rel > 5) throw Error(Errc::parse_error, "bad relation id in registry");
        issued_[from_hex(j["blob"].get<std::string>())] =
            Issued{static_cast<RelationId>(rel), from_hex(j["public"].get<std::string>())};
    }
}

}  // namespace arl
