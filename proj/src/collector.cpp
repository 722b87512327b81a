#include "arl/collector.hpp"

#include "arl/errors.hpp"

namespace arl {

Collector::Collector(CollectorConfig config, Ledger& ledger) : config_(config), ledger_(ledger) {
    if (config_.depth > 24) throw Error(Errc::bad_config, "collector depth too large");
    if (config_.seal_timeout == 0) throw Error(Errc::bad_config, "seal timeout must be > 0");
}

SubmitReceipt Collector::submit(const Digest& shc_root, uint64_t now) {
    const size_t capacity = size_t(1) << config_.depth;
    if (pending_.size() >= capacity)
        throw Error(Errc::batch_full, "collector batch is full until the next seal");
    if (pending_.empty()) first_pending_at_ = now;
    pending_.push_back(shc_root);
    return SubmitReceipt{batch_seq_, static_cast<uint32_t>(pending_.size() - 1)};
}

std::pair<Digest, uint64_t> Collector::seal(uint64_t now) {
    if (pending_.empty()) throw Error(Errc::empty_batch, "nothing to seal");

    MerkleTree tree = merkle_build(pending_, config_.depth);
    const uint64_t block = ledger_.append(tree.root, now);  // may throw block_full

    std::vector<InclusionGrant> grants;
    grants.reserve(pending_.size());
    for (auto& path : tree.paths)
        grants.push_back({std::move(path), tree.root, block, config_.depth});
    sealed_.emplace(batch_seq_, std::move(grants));

    pending_.clear();
    ++batch_seq_;
    return {tree.root, block};
}

void Collector::tick(uint64_t now) {
    if (pending_.empty()) return;
    const bool full = pending_.size() >= (size_t(1) << config_.depth);
    const bool timed_out = now >= first_pending_at_ + config_.seal_timeout;
    if (!full && !timed_out) return;
    try {
        seal(now);
    } catch (const Error& e) {
        if (e.code() != Errc::block_full) throw;  // block full: retry on a later tick
    }
}

const InclusionGrant& Collector::redeem(const SubmitReceipt& receipt) const {
    auto it = sealed_.find(receipt.batch);
    if (it == sealed_.end())
        throw Error(Errc::not_sealed, "batch has not sealed yet");
    return it->second.at(receipt.index);
}

}  // namespace arl
