#pragma once

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>

#include "elastic/core/bytes.hpp"
#include "elastic/core/error.hpp"
#include "elastic/exec/trace.hpp"

namespace elastic {

namespace detail {

struct TaskState {
  explicit TaskState(std::uint64_t task_id) : id(task_id) {}

  const std::uint64_t id;
  mutable std::mutex mu;
  mutable std::condition_variable cv;
  bool done = false;
  std::optional<Bytes> result;
  std::optional<Error> error;
  std::optional<TraceEvent> event;
  // Set by single-threaded executors: advances the simulation by one step,
  // returning false when nothing is left to run.
  std::function<bool()> pump;

  /// Delivers the outcome; a second delivery is ignored and reported as false.
  bool complete(std::optional<Bytes> value, std::optional<Error> err,
                std::optional<TraceEvent> ev) {
    {
      std::lock_guard lock(mu);
      if (done) return false;
      result = std::move(value);
      error = std::move(err);
      event = ev;
      done = true;
    }
    cv.notify_all();
    return true;
  }
};

}  // namespace detail

/// Completion slot of one submitted task. Copies share the same slot.
class TaskHandle {
 public:
  TaskHandle() = default;
  explicit TaskHandle(std::shared_ptr<detail::TaskState> state) : state_(std::move(state)) {}

  std::uint64_t id() const { return state_->id; }
  bool valid() const { return static_cast<bool>(state_); }

  bool ready() const {
    std::lock_guard lock(state_->mu);
    return state_->done;
  }

  /// Blocks until the task finishes. Returns the result or rethrows the error;
  /// repeated calls observe the same outcome.
  const Bytes& get() const {
    wait();
    if (state_->error) throw *state_->error;
    return *state_->result;
  }

  void wait() const {
    if (state_->pump) {
      while (!ready()) {
        if (!state_->pump())
          throw Error(Errc::ExecutorAborted, "simulation drained before task completed");
      }
      return;
    }
    std::unique_lock lock(state_->mu);
    state_->cv.wait(lock, [&] { return state_->done; });
  }

  /// The lifecycle record, once the task body has run.
  std::optional<TraceEvent> trace() const {
    std::lock_guard lock(state_->mu);
    return state_->event;
  }

  detail::TaskState& state() const { return *state_; }

 private:
  std::shared_ptr<detail::TaskState> state_;
};

inline const Bytes& await(const TaskHandle& handle) { return handle.get(); }

}  // namespace elastic
