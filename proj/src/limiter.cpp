#include "arl/limiter.hpp"

#include "arl/errors.hpp"

namespace arl {

const char* limiter_mode_name(LimiterMode m) {
    switch (m) {
        case LimiterMode::naive: return "naive";
        case LimiterMode::shc: return "shc";
        case LimiterMode::timestamped: return "timestamped";
        case LimiterMode::token: return "token";
    }
    return "unknown";
}

bool GrantWindow::try_grant(uint64_t now, uint64_t period, uint32_t capacity,
                            uint64_t& retry_after) {
    while (!grants_.empty() && grants_.front() + period <= now) grants_.pop_front();
    if (grants_.size() < capacity) {
        grants_.push_back(now);
        retry_after = 0;
        return true;
    }
    // the slot taken capacity-1 grants ago frees first
    uint64_t frees_at = grants_[grants_.size() - capacity] + period;
    retry_after = frees_at > now ? frees_at - now : 1;
    return false;
}

Limiter::Limiter(KeyPair keys, RatePolicy policy)
    : keys_(std::move(keys)), policy_(policy), buckets_(std::make_shared<BucketStore>()) {
    if (policy_.period == 0) throw Error(Errc::bad_config, "rate period must be positive");
    if (policy_.capacity == 0) throw Error(Errc::bad_config, "bucket capacity must be >= 1");
    if (policy_.global_cap && *policy_.global_cap == 0)
        throw Error(Errc::bad_config, "global cap must be >= 1 when set");
}

ApprovalOutcome Limiter::request_approval(RequesterId requester, const Digest& submitted,
                                          LimiterMode mode, uint64_t now) {
    uint64_t retry_requester = 0;
    uint64_t retry_global = 0;

    // Check-then-commit: probe the per-requester window first without
    // debiting the global one.
    GrantWindow& window = buckets_->by_requester[requester];
    GrantWindow probe = window;
    bool requester_ok = probe.try_grant(now, policy_.period, policy_.capacity, retry_requester);

    bool global_ok = true;
    if (policy_.global_cap) {
        GrantWindow gprobe = buckets_->global;
        global_ok = gprobe.try_grant(now, policy_.period, *policy_.global_cap, retry_global);
    }

    if (!requester_ok || !global_ok) {
        log_.push_back({now, requester, submitted, mode, false});
        return RateLimited{std::max(retry_requester, retry_global)};
    }

    uint64_t unused = 0;
    window.try_grant(now, policy_.period, policy_.capacity, unused);
    if (policy_.global_cap)
        buckets_->global.try_grant(now, policy_.period, *policy_.global_cap, unused);

    log_.push_back({now, requester, submitted, mode, true});

    if (mode == LimiterMode::timestamped || mode == LimiterMode::token)
        return make_timestamped_approval(submitted, now, keys_);
    return PlainApproval{submitted, sign(keys_.sk, submitted.view()), keys_.pk};
}

Federation::Federation(std::vector<KeyPair> validator_keys, RatePolicy policy,
                       Coordination coordination) {
    if (validator_keys.empty())
        throw Error(Errc::bad_config, "federation needs at least one validator");
    validators_.reserve(validator_keys.size());
    auto shared = std::make_shared<BucketStore>();
    for (auto& keys : validator_keys) {
        validators_.emplace_back(std::move(keys), policy);
        if (coordination == Coordination::shared) validators_.back().use_shared_buckets(shared);
    }
}

ApprovalOutcome Federation::request(size_t validator_index, RequesterId requester,
                                    const Digest& submitted, LimiterMode mode, uint64_t now) {
    if (validator_index >= validators_.size())
        throw Error(Errc::bad_config, "validator index out of range");
    return validators_[validator_index].request_approval(requester, submitted, mode, now);
}

std::vector<PublicKey> Federation::keys() const {
    std::vector<PublicKey> out;
    out.reserve(validators_.size());
    for (const auto& v : validators_) out.push_back(v.key());
    return out;
}

}  // namespace arl
