#pragma once

#include <algorithm>
#include <chrono>
#include <memory>
#include <mutex>
#include <thread>

#include "elastic/core/clock.hpp"
#include "elastic/exec/registry.hpp"
#include "elastic/exec/token_bucket.hpp"
#include "elastic/faas/config.hpp"
#include "elastic/faas/container_pool.hpp"

namespace elastic::faas {

/// Result of one simulated function invocation in execute mode.
struct Invocation {
  BodyOutcome outcome;
  BillingRecord record;
};

/// Simulated provider whose functions really run on host threads: the caller's
/// thread plays the function container. Enforces the provider concurrency and
/// rate limits and keeps the billing ledger.
class FaasPlatform {
 public:
  FaasPlatform(FaasConfig config, std::shared_ptr<const TaskRegistry> registry,
               std::shared_ptr<const Clock> clock = std::make_shared<SteadyClock>())
      : config_(config),
        registry_(std::move(registry)),
        clock_(std::move(clock)),
        pool_(config.container_keepalive_ms),
        bucket_(config.rate_limit) {
    config_.validate();
  }

  /// Blocking invocation. Throws THROTTLED when the provider concurrency limit
  /// is already reached and RATE_LIMITED when the invocation rate is exceeded.
  Invocation invoke(const Task& task) {
    ContainerPool::Lease lease{};
    std::uint64_t invocation_id = 0;
    {
      std::lock_guard lock(mu_);
      const double now = clock_->now_ms();
      if (active_ >= config_.provider_concurrency_limit) {
        ++throttled_;
        throw Error(Errc::Throttled, "provider concurrency limit of " +
                                         std::to_string(config_.provider_concurrency_limit) + " reached");
      }
      if (!bucket_.try_take(now)) {
        ++rate_limited_;
        throw Error(Errc::RateLimited, "provider invocation rate exceeded");
      }
      ++active_;
      peak_active_ = std::max(peak_active_, active_);
      lease = pool_.acquire(now);
      invocation_id = next_invocation_++;
    }

    const double delay = config_.invocation_overhead_ms + (lease.cold_start ? config_.cold_start_ms : 0.0);
    if (delay > 0.0) std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(delay));

    Invocation inv;
    inv.record.invocation_id = invocation_id;
    inv.record.cold_start = lease.cold_start;
    inv.record.memory_mb = config_.memory_mb;
    inv.record.start_ms = clock_->now_ms();
    inv.outcome = run_body(*registry_, task);
    inv.record.end_ms = clock_->now_ms();
    inv.record.billed_ms = bill(inv.record.start_ms, inv.record.end_ms, config_.billing_quantum_ms);
    ledger_.record(inv.record);
    {
      std::lock_guard lock(mu_);
      pool_.release(lease.container_id, inv.record.end_ms);
      --active_;
    }
    return inv;
  }

  const FaasConfig& config() const { return config_; }
  std::shared_ptr<const TaskRegistry> registry() const { return registry_; }
  std::shared_ptr<const Clock> clock() const { return clock_; }
  std::vector<BillingRecord> billing() const { return ledger_.snapshot(); }

  std::size_t cold_starts() const {
    std::lock_guard lock(mu_);
    return pool_.created();
  }
  std::size_t peak_containers() const {
    std::lock_guard lock(mu_);
    return pool_.peak_live();
  }
  std::size_t peak_active() const {
    std::lock_guard lock(mu_);
    return peak_active_;
  }
  std::size_t throttled() const {
    std::lock_guard lock(mu_);
    return throttled_;
  }

 private:
  FaasConfig config_;
  std::shared_ptr<const TaskRegistry> registry_;
  std::shared_ptr<const Clock> clock_;

  mutable std::mutex mu_;
  ContainerPool pool_;
  TokenBucket bucket_;
  std::size_t active_ = 0;
  std::size_t peak_active_ = 0;
  std::size_t throttled_ = 0;
  std::size_t rate_limited_ = 0;
  std::uint64_t next_invocation_ = 1;
  BillingLedger ledger_;
};

}  // namespace elastic::faas
