#pragma once

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "arl/commitments.hpp"
#include "arl/ed25519.hpp"

namespace arl {

/// Opaque requester identity (models an IP address or captcha session).
/// Stable within a run; carries no meaning beyond equality.
struct RequesterId {
    uint64_t value = 0;
    auto operator<=>(const RequesterId&) const = default;
};

/// One approval per requester per `period` seconds, up to `capacity`
/// concurrently outstanding slots; optionally a global cap across all
/// requesters per period.
struct RatePolicy {
    uint64_t period = 60;  // T_l
    uint32_t capacity = 1;
    std::optional<uint32_t> global_cap;
};

enum class LimiterMode : uint8_t { naive, shc, timestamped, token };

const char* limiter_mode_name(LimiterMode m);

/// Bare signature over the submitted digest (naive and plain-commitment
/// modes, which carry no timestamp).
struct PlainApproval {
    Digest signed_digest;
    Signature signature;
    PublicKey limiter_key;
};

struct RateLimited {
    uint64_t retry_after = 0;  // seconds until the next slot frees
};

using ApprovalOutcome = std::variant<PlainApproval, TimestampedApproval, RateLimited>;

inline bool was_granted(const ApprovalOutcome& o) {
    return !std::holds_alternative<RateLimited>(o);
}

/// Everything the limiter ever observes; the simulator's deanonymization
/// adversary works from this record alone.
struct LimiterObservation {
    uint64_t at = 0;
    RequesterId requester;
    Digest submitted;  // commitment root, or the entry digest itself in naive mode
    LimiterMode mode = LimiterMode::shc;
    bool granted = false;
};

/// Grant timestamps still occupying rate slots. A grant at time t holds its
/// slot until t + period, so any window of length `period` contains at most
/// `capacity` grants.
class GrantWindow {
  public:
    bool try_grant(uint64_t now, uint64_t period, uint32_t capacity, uint64_t& retry_after);

  private:
    std::deque<uint64_t> grants_;
};

/// Shared between federated validators in `shared` coordination so a
/// requester rotating across validators still hits one budget.
struct BucketStore {
    std::map<RequesterId, GrantWindow> by_requester;
    GrantWindow global;
};

/// Single rate-limiter actor. The clock is injected: every operation takes
/// `now` from the caller and nothing reads host time.
class Limiter {
  public:
    Limiter(KeyPair keys, RatePolicy policy);

    ApprovalOutcome request_approval(RequesterId requester, const Digest& submitted,
                                     LimiterMode mode, uint64_t now);

    const std::vector<LimiterObservation>& log() const { return log_; }
    const PublicKey& key() const { return keys_.pk; }
    const RatePolicy& policy() const { return policy_; }

    void use_shared_buckets(std::shared_ptr<BucketStore> store) { buckets_ = std::move(store); }

  private:
    KeyPair keys_;
    RatePolicy policy_;
    std::shared_ptr<BucketStore> buckets_;  // owned solely unless federated-shared
    std::vector<LimiterObservation> log_;
};

enum class Coordination : uint8_t { independent, shared };

/// Static validator set. In independent coordination each validator rate
/// limits on its own state; in shared coordination they consult one store.
class Federation {
  public:
    Federation(std::vector<KeyPair> validator_keys, RatePolicy policy, Coordination coordination);

    ApprovalOutcome request(size_t validator_index, RequesterId requester, const Digest& submitted,
                            LimiterMode mode, uint64_t now);

    size_t size() const { return validators_.size(); }
    Limiter& validator(size_t i) { return validators_[i]; }
    const Limiter& validator(size_t i) const { return validators_[i]; }
    std::vector<PublicKey> keys() const;

  private:
    std::vector<Limiter> validators_;
};

}  // namespace arl
