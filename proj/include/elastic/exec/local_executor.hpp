#pragma once

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

#include "elastic/exec/executor.hpp"

namespace elastic {

/// Load snapshot of the local lane. Tasks beyond the worker count are the
/// pending queue; workers without an assigned task are idle.
struct LocalLoad {
  std::size_t pending = 0;
  std::size_t idle_workers = 0;
};

/// Fixed-size worker pool. Task code never runs under the pool lock.
class LocalExecutor final : public Executor {
 public:
  LocalExecutor(std::size_t workers, std::shared_ptr<const TaskRegistry> registry,
                std::shared_ptr<const Clock> clock = std::make_shared<SteadyClock>(),
                std::shared_ptr<TraceLog> trace = std::make_shared<TraceLog>())
      : registry_(std::move(registry)),
        clock_(std::move(clock)),
        trace_(std::move(trace)),
        pool_size_(workers) {
    threads_.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) threads_.emplace_back([this] { worker_loop(); });
  }

  ~LocalExecutor() override { shutdown(); }

  LocalExecutor(const LocalExecutor&) = delete;
  LocalExecutor& operator=(const LocalExecutor&) = delete;

  TaskHandle submit(Task task, std::shared_ptr<CompletionQueue> notify = nullptr) override {
    registry_->validate(task);
    auto state = std::make_shared<detail::TaskState>(trace_->next_id());
    {
      std::lock_guard lock(mu_);
      if (stopping_) throw Error(Errc::SubmitAfterShutdown, "local executor is shut down");
      queue_.push_back({std::move(task), state, std::move(notify), clock_->now_ms()});
      ++busy_;
    }
    cv_.notify_one();
    return TaskHandle(state);
  }

  void shutdown() override {
    {
      std::lock_guard lock(mu_);
      if (stopping_ && threads_.empty()) return;
      stopping_ = true;
    }
    cv_.notify_all();
    for (auto& t : threads_) t.join();
    threads_.clear();
    // Without workers nothing can drain the queue.
    abort_queued();
  }

  /// Drops every queued task; their handles fail with EXECUTOR_ABORTED.
  void abort_queued() {
    std::deque<Item> dropped;
    {
      std::lock_guard lock(mu_);
      dropped.swap(queue_);
      busy_ -= dropped.size();
    }
    for (auto& item : dropped) {
      item.state->complete(std::nullopt, Error(Errc::ExecutorAborted, "task dropped"), std::nullopt);
      if (item.notify) item.notify->push(TaskHandle(item.state));
    }
  }

  LocalLoad load() const {
    std::lock_guard lock(mu_);
    return {busy_ > pool_size_ ? busy_ - pool_size_ : 0,
            busy_ < pool_size_ ? pool_size_ - busy_ : 0};
  }

  std::size_t pool_size() const { return pool_size_; }

  /// Highest number of simultaneously running task bodies seen so far.
  std::size_t peak_running() const {
    std::lock_guard lock(mu_);
    return peak_running_;
  }

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
        cv_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
        if (queue_.empty()) return;
        item = std::move(queue_.front());
        queue_.pop_front();
        ++running_;
        peak_running_ = std::max(peak_running_, running_);
      }
      TraceEvent ev;
      ev.task_id = item.state->id;
      ev.submit_ms = item.submit_ms;
      ev.lane = Lane::Local;
      ev.start_ms = clock_->now_ms();
      BodyOutcome out = run_body(*registry_, item.task);
      ev.end_ms = clock_->now_ms();
      ev.result_bytes = out.result ? out.result->size() : 0;
      trace_->record(ev);
      {
        std::lock_guard lock(mu_);
        --running_;
        --busy_;
      }
      item.state->complete(std::move(out.result), std::move(out.error), ev);
      if (item.notify) item.notify->push(TaskHandle(item.state));
    }
  }

  std::shared_ptr<const TaskRegistry> registry_;
  std::shared_ptr<const Clock> clock_;
  std::shared_ptr<TraceLog> trace_;
  const std::size_t pool_size_;

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Item> queue_;
  std::size_t busy_ = 0;  // queued + running
  std::size_t running_ = 0;
  std::size_t peak_running_ = 0;
  bool stopping_ = false;
  std::vector<std::thread> threads_;
};

}  // namespace elastic
