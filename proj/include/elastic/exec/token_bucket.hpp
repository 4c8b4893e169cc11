#pragma once

#include <algorithm>

namespace elastic {

/// Token bucket over an external millisecond timeline. Holds at most one
/// second's worth of tokens and starts full.
class TokenBucket {
 public:
  explicit TokenBucket(double rate_per_s)
      : rate_per_ms_(rate_per_s / 1000.0), capacity_(std::max(1.0, rate_per_s)), tokens_(capacity_) {}

  bool try_take(double now_ms) {
    refill(now_ms);
    if (tokens_ < 1.0 - kSlack) return false;
    tokens_ = std::max(0.0, tokens_ - 1.0);
    return true;
  }

  /// Milliseconds from now until a token is available (0 if one already is).
  double wait_ms(double now_ms) {
    refill(now_ms);
    return tokens_ >= 1.0 - kSlack ? 0.0 : (1.0 - tokens_) / rate_per_ms_;
  }

 private:
  // Far below the refill an ulp of a large timestamp can deliver, so a waiter
  // woken at now + wait_ms() always finds its token.
  static constexpr double kSlack = 1e-6;

  void refill(double now_ms) {
    if (now_ms > last_ms_) {
      tokens_ = std::min(capacity_, tokens_ + (now_ms - last_ms_) * rate_per_ms_);
      last_ms_ = now_ms;
    }
  }

  double rate_per_ms_;
  double capacity_;
  double tokens_;
  double last_ms_ = 0.0;
};

}  // namespace elastic
