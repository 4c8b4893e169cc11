#pragma once

#include <cstddef>
#include <memory>

#include "elastic/core/clock.hpp"
#include "elastic/exec/completion_queue.hpp"
#include "elastic/exec/handle.hpp"
#include "elastic/exec/registry.hpp"
#include "elastic/exec/task.hpp"
#include "elastic/exec/trace.hpp"

namespace elastic {

enum class ExecutorLane { Local, Serverless, Hybrid };

/// Client-side admission settings.
struct ExecutorConfig {
  std::size_t max_concurrency = 96;
  double invocation_rate_limit = 10'000.0;  // invocations per second
  ExecutorLane lane = ExecutorLane::Serverless;

  void validate() const {
    require(max_concurrency >= 1, "max_concurrency must be >= 1");
    require(invocation_rate_limit > 0.0, "invocation_rate_limit must be > 0");
  }
};

/// Common contract of every backend: non-blocking submission, completion via
/// TaskHandle and optionally a CompletionQueue, and a TraceEvent per executed task.
class Executor {
 public:
  virtual ~Executor() = default;

  virtual TaskHandle submit(Task task, std::shared_ptr<CompletionQueue> notify = nullptr) = 0;

  /// Stops accepting work and waits for everything already submitted.
  virtual void shutdown() = 0;

  virtual TraceLog& trace() = 0;
  virtual const Clock& clock() const = 0;
};

}  // namespace elastic
