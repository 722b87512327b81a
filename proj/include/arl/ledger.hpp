#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arl/bytes.hpp"

namespace arl {

/// Fired exactly once per append, in append order. Subscribers reconstruct
/// their copy of D from these alone.
struct LedgerEvent {
    uint64_t block_index = 0;
    Digest digest;
};

struct BlockInfo {
    uint64_t index = 0;
    uint64_t timestamp = 0;  // sealing boundary on the fixed-interval schedule
    bool sealed = false;
    std::vector<Digest> digests;
};

struct LedgerConfig {
    uint64_t block_interval = 12;
    uint32_t max_appends_per_block = 8;
};

/// Append-only array of anchored roots with fixed-interval blocks. The whole
/// contract surface is append/get plus the event stream; everything else is
/// block bookkeeping so capacity and timestamps behave like a chain.
class Ledger {
  public:
    explicit Ledger(LedgerConfig config);

    /// Seals every block whose interval has elapsed.
    void advance(uint64_t now);

    /// Appends into the block covering `now`. Throws Error(block_full) when
    /// that block hit max_appends_per_block. Returns the block index.
    uint64_t append(const Digest& root, uint64_t now);

    /// D, in append order.
    const std::vector<Digest>& get() const { return d_; }

    const std::vector<LedgerEvent>& events() const { return events_; }
    const std::vector<BlockInfo>& blocks() const { return blocks_; }
    const LedgerConfig& config() const { return config_; }

    bool contains(const Digest& root) const;
    std::optional<uint64_t> block_of(const Digest& root) const;

    /// Deterministic: the end of the block's interval.
    uint64_t block_timestamp(uint64_t block_index) const {
        return (block_index + 1) * config_.block_interval;
    }

  private:
    BlockInfo& block_at(uint64_t index);

    LedgerConfig config_;
    std::vector<Digest> d_;
    std::vector<LedgerEvent> events_;
    std::vector<BlockInfo> blocks_;
};

}  // namespace arl
