#pragma once

#include <chrono>
#include <condition_variable>
#include <deque>
#include <functional>
#include <mutex>
#include <optional>

#include "elastic/exec/handle.hpp"

namespace elastic {

/// Thread-safe queue of finished tasks, consumed by a driver's master loop.
class CompletionQueue {
 public:
  void push(TaskHandle handle) {
    {
      std::lock_guard lock(mu_);
      items_.push_back(std::move(handle));
    }
    cv_.notify_one();
  }

  /// Next finished task, or nullopt after `timeout` without one.
  std::optional<TaskHandle> poll(std::chrono::milliseconds timeout = std::chrono::milliseconds(1)) {
    if (pump_) {
      while (empty()) {
        if (!pump_()) return std::nullopt;
      }
    }
    std::unique_lock lock(mu_);
    if (!cv_.wait_for(lock, timeout, [&] { return !items_.empty(); })) return std::nullopt;
    TaskHandle h = std::move(items_.front());
    items_.pop_front();
    return h;
  }

  bool empty() const {
    std::lock_guard lock(mu_);
    return items_.empty();
  }

  /// Installed by single-threaded simulators so that polling advances time.
  void set_pump(std::function<bool()> pump) { pump_ = std::move(pump); }

 private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<TaskHandle> items_;
  std::function<bool()> pump_;
};

}  // namespace elastic
