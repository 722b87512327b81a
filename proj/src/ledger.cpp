#include "arl/ledger.hpp"

#include <algorithm>

#include "arl/errors.hpp"

namespace arl {

Ledger::Ledger(LedgerConfig config) : config_(config) {
    if (config_.block_interval == 0) throw Error(Errc::bad_config, "block interval must be > 0");
    if (config_.max_appends_per_block == 0)
        throw Error(Errc::bad_config, "per-block append cap must be > 0");
}

BlockInfo& Ledger::block_at(uint64_t index) {
    while (blocks_.size() <= index) {
        BlockInfo b;
        b.index = blocks_.size();
        b.timestamp = block_timestamp(b.index);
        blocks_.push_back(std::move(b));
    }
    return blocks_[index];
}

void Ledger::advance(uint64_t now) {
    if (now < config_.block_interval) return;
    const uint64_t last_elapsed = now / config_.block_interval - 1;
    for (uint64_t i = 0; i <= last_elapsed; ++i) block_at(i).sealed = true;
}

uint64_t Ledger::append(const Digest& root, uint64_t now) {
    const uint64_t index = now / config_.block_interval;
    BlockInfo& block = block_at(index);
    if (block.digests.size() >= config_.max_appends_per_block)
        throw Error(Errc::block_full, "block append capacity reached");
    block.digests.push_back(root);
    d_.push_back(root);
    events_.push_back({index, root});
    return index;
}

bool Ledger::contains(const Digest& root) const {
    return std::find(d_.begin(), d_.end(), root) != d_.end();
}

std::optional<uint64_t> Ledger::block_of(const Digest& root) const {
    for (const auto& ev : events_)
        if (ev.digest == root) return ev.block_index;
    return std::nullopt;
}

}  // namespace arl
