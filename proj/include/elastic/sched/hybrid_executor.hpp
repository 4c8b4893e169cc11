#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <vector>

#include "elastic/exec/local_executor.hpp"
#include "elastic/exec/serverless_executor.hpp"

namespace elastic::sched {

/// Decides, from a load snapshot of the local lane, whether a new task may run locally.
using IdlePredicate = std::function<bool(const LocalLoad&)>;

/// Default: nothing waiting in the local queue and at least one idle worker.
inline bool queue_empty_and_idle_worker(const LocalLoad& load) {
  return load.pending == 0 && load.idle_workers > 0;
}

/// Queue-only check, kept for comparison with the default.
inline bool queue_empty_only(const LocalLoad& load) { return load.pending == 0; }

struct HybridConfig {
  std::size_t local_pool_size = 4;
  ExecutorConfig serverless{};
};

/// Routing decision taken inside the routing critical section.
struct RoutingDecision {
  std::uint64_t task_id = 0;
  LocalLoad snapshot;
  Lane lane = Lane::Local;
};

/// Runs a task on a local worker when the local lane is idle and sends it to
/// the serverless lane otherwise. The decision is made once, at submission,
/// and never revisited.
class HybridExecutor final : public Executor {
 public:
  /// `serverless` may be null, which disables the serverless lane. Both lanes
  /// must share `trace` and the platform's clock.
  HybridExecutor(std::unique_ptr<LocalExecutor> local, std::unique_ptr<ServerlessExecutor> serverless,
                 std::shared_ptr<TraceLog> trace, IdlePredicate is_idle = queue_empty_and_idle_worker)
      : local_(std::move(local)),
        serverless_(std::move(serverless)),
        trace_(std::move(trace)),
        is_idle_(std::move(is_idle)) {}

  /// Builds both lanes over one platform, sharing its clock and a fresh trace log.
  static std::unique_ptr<HybridExecutor> create(const HybridConfig& config,
                                                std::shared_ptr<faas::FaasPlatform> platform,
                                                IdlePredicate is_idle = queue_empty_and_idle_worker) {
    auto trace = std::make_shared<TraceLog>();
    auto local = std::make_unique<LocalExecutor>(config.local_pool_size, platform->registry(),
                                                 platform->clock(), trace);
    auto remote = std::make_unique<ServerlessExecutor>(config.serverless, std::move(platform), trace);
    return std::make_unique<HybridExecutor>(std::move(local), std::move(remote), trace, std::move(is_idle));
  }

  ~HybridExecutor() override { shutdown(); }

  Lane route() const {
    if (!serverless_) return Lane::Local;
    return is_idle_(local_->load()) ? Lane::Local : Lane::Serverless;
  }

  TaskHandle submit(Task task, std::shared_ptr<CompletionQueue> notify = nullptr) override {
    std::lock_guard lock(route_mu_);
    RoutingDecision d;
    d.snapshot = local_->load();
    d.lane = (!serverless_ || is_idle_(d.snapshot)) ? Lane::Local : Lane::Serverless;
    TaskHandle h = d.lane == Lane::Local ? local_->submit(std::move(task), std::move(notify))
                                         : serverless_->submit(std::move(task), std::move(notify));
    d.task_id = h.id();
    decisions_.push_back(d);
    return h;
  }

  void shutdown() override {
    if (local_) local_->shutdown();
    if (serverless_) serverless_->shutdown();
  }

  std::vector<RoutingDecision> decisions() const {
    std::lock_guard lock(route_mu_);
    return decisions_;
  }

  LocalExecutor& local() { return *local_; }
  ServerlessExecutor* serverless() { return serverless_.get(); }
  TraceLog& trace() override { return *trace_; }
  const Clock& clock() const override { return local_->clock(); }

 private:
  std::unique_ptr<LocalExecutor> local_;
  std::unique_ptr<ServerlessExecutor> serverless_;
  std::shared_ptr<TraceLog> trace_;
  IdlePredicate is_idle_;

  mutable std::mutex route_mu_;
  std::vector<RoutingDecision> decisions_;
};

}  // namespace elastic::sched
