#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "arl/ledger.hpp"
#include "arl/merkle.hpp"

namespace arl {

struct CollectorConfig {
    uint32_t depth = 3;        // batch capacity is 2^depth
    uint64_t seal_timeout = 30;  // seal a partial batch after this many seconds
};

/// Redeemable after the batch seals.
struct SubmitReceipt {
    uint64_t batch = 0;
    uint32_t index = 0;
};

/// What a submitter gets back once their batch is anchored.
struct InclusionGrant {
    MerklePath path;
    Digest root;  // R
    uint64_t block_index = 0;
    uint32_t depth = 0;
};

/// Aggregates commitment roots into fixed-depth trees and anchors each tree
/// with a single 32-byte append, so ledger space per seal is constant no
/// matter how full the batch was.
class Collector {
  public:
    Collector(CollectorConfig config, Ledger& ledger);

    /// Queues a commitment root. Throws Error(batch_full) once the current
    /// batch holds 2^depth roots; the submitter waits for the next batch.
    SubmitReceipt submit(const Digest& shc_root, uint64_t now);

    /// Builds the padded tree over pending roots, appends R, makes paths
    /// redeemable, clears the batch. Throws Error(empty_batch); propagates
    /// Error(block_full) from the ledger with the batch left intact.
    std::pair<Digest, uint64_t> seal(uint64_t now);

    /// Seals when the batch is full or the timeout elapsed with pending
    /// roots. A full ledger block postpones to a later tick.
    void tick(uint64_t now);

    /// Throws Error(not_sealed) until the receipt's batch has sealed.
    const InclusionGrant& redeem(const SubmitReceipt& receipt) const;

    size_t pending_count() const { return pending_.size(); }
    uint64_t current_batch() const { return batch_seq_; }
    uint32_t depth() const { return config_.depth; }

  private:
    CollectorConfig config_;
    Ledger& ledger_;
    std::vector<Digest> pending_;
    uint64_t batch_seq_ = 0;
    uint64_t first_pending_at_ = 0;
    std::map<uint64_t, std::vector<InclusionGrant>> sealed_;
};

}  // namespace arl
