#pragma once

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

#include "elastic/exec/executor.hpp"
#include "elastic/exec/token_bucket.hpp"
#include "elastic/faas/platform.hpp"

namespace elastic {

/// Client of a FaasPlatform. Each admitted task occupies one slot of the
/// client-side gate (max_concurrency) for the whole invocation; invocations are
/// additionally paced by a token bucket at invocation_rate_limit.
///
/// The host threads that wait on invocations form an elastic pool: one is
/// spawned per submission when none is idle, up to max_concurrency.
class ServerlessExecutor final : public Executor {
 public:
  ServerlessExecutor(ExecutorConfig config, std::shared_ptr<faas::FaasPlatform> platform,
                     std::shared_ptr<TraceLog> trace = std::make_shared<TraceLog>())
      : config_(config),
        platform_(std::move(platform)),
        registry_(platform_->registry()),
        clock_(platform_->clock()),
        trace_(std::move(trace)),
        bucket_(config.invocation_rate_limit) {
    config_.validate();
  }

  ~ServerlessExecutor() override { shutdown(); }

  ServerlessExecutor(const ServerlessExecutor&) = delete;
  ServerlessExecutor& operator=(const ServerlessExecutor&) = delete;

  TaskHandle submit(Task task, std::shared_ptr<CompletionQueue> notify = nullptr) override {
    registry_->validate(task);
    auto state = std::make_shared<detail::TaskState>(trace_->next_id());
    {
      std::lock_guard lock(mu_);
      if (stopping_) throw Error(Errc::SubmitAfterShutdown, "serverless executor is shut down");
      queue_.push_back({std::move(task), state, std::move(notify), clock_->now_ms()});
      if (idle_threads_ < queue_.size() && threads_.size() < config_.max_concurrency)
        threads_.emplace_back([this] { worker_loop(); });
    }
    cv_.notify_one();
    return TaskHandle(state);
  }

  void shutdown() override {
    std::vector<std::thread> threads;
    {
      std::lock_guard lock(mu_);
      stopping_ = true;
      threads.swap(threads_);
    }
    cv_.notify_all();
    for (auto& t : threads) t.join();
  }

  /// Highest number of simultaneous invocations admitted by the gate.
  std::size_t peak_in_flight() const {
    std::lock_guard lock(mu_);
    return peak_in_flight_;
  }

  const ExecutorConfig& config() const { return config_; }
  faas::FaasPlatform& platform() { return *platform_; }
  TraceLog& trace() override { return *trace_; }
  const Clock& clock() const override { return *clock_; }

 private:
  struct Item {
    Task task;
    std::shared_ptr<detail::TaskState> state;
    std::shared_ptr<CompletionQueue> notify;
    double submit_ms;
  };

  void worker_loop() {
    for (;;) {
      Item item;
      {
        std::unique_lock lock(mu_);
        ++idle_threads_;
        cv_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
        --idle_threads_;
        if (queue_.empty()) return;
        item = std::move(queue_.front());
        queue_.pop_front();
      }
      gate_acquire();
      pace();
      std::optional<faas::Invocation> inv;
      std::optional<Error> failure;
      try {
        inv = platform_->invoke(item.task);
      } catch (const Error& e) {
        failure = Error(Errc::TaskFailed, e.what(), e.code());
      }
      gate_release();

      if (!inv) {
        item.state->complete(std::nullopt, std::move(failure), std::nullopt);
      } else {
        TraceEvent ev;
        ev.task_id = item.state->id;
        ev.submit_ms = item.submit_ms;
        ev.start_ms = inv->record.start_ms;
        ev.end_ms = inv->record.end_ms;
        ev.lane = Lane::Serverless;
        ev.cold_start = inv->record.cold_start;
        ev.billed_ms = inv->record.billed_ms;
        ev.result_bytes = inv->outcome.result ? inv->outcome.result->size() : 0;
        trace_->record(ev);
        item.state->complete(std::move(inv->outcome.result), std::move(inv->outcome.error), ev);
      }
      if (item.notify) item.notify->push(TaskHandle(item.state));
    }
  }

  void gate_acquire() {
    std::unique_lock lock(gate_mu_);
    gate_cv_.wait(lock, [&] { return in_flight_ < config_.max_concurrency; });
    ++in_flight_;
    std::lock_guard stats(mu_);
    peak_in_flight_ = std::max(peak_in_flight_, in_flight_);
  }

  void gate_release() {
    {
      std::lock_guard lock(gate_mu_);
      --in_flight_;
    }
    gate_cv_.notify_one();
  }

  void pace() {
    for (;;) {
      double wait;
      {
        std::lock_guard lock(gate_mu_);
        const double now = clock_->now_ms();
        if (bucket_.try_take(now)) return;
        wait = bucket_.wait_ms(now);
      }
      std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(wait));
    }
  }

  ExecutorConfig config_;
  std::shared_ptr<faas::FaasPlatform> platform_;
  std::shared_ptr<const TaskRegistry> registry_;
  std::shared_ptr<const Clock> clock_;
  std::shared_ptr<TraceLog> trace_;

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Item> queue_;
  std::vector<std::thread> threads_;
  std::size_t idle_threads_ = 0;
  bool stopping_ = false;
  std::size_t peak_in_flight_ = 0;

  std::mutex gate_mu_;
  std::condition_variable gate_cv_;
  std::size_t in_flight_ = 0;
  TokenBucket bucket_;
};

}  // namespace elastic
