#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <ostream>
#include <vector>

#include "elastic/exec/task.hpp"

namespace elastic {

/// Lifecycle of one executed task. Times are milliseconds since run start.
struct TraceEvent {
  std::uint64_t task_id = 0;
  double submit_ms = 0.0;
  double start_ms = 0.0;
  double end_ms = 0.0;
  Lane lane = Lane::Local;
  bool cold_start = false;
  std::int64_t billed_ms = 0;
  std::uint64_t result_bytes = 0;

  double duration_ms() const { return end_ms - start_ms; }
};

/// Thread-safe append-only log of TraceEvents; also hands out task ids so that
/// executors sharing a log (hybrid lanes) never collide.
class TraceLog {
 public:
  std::uint64_t next_id() { return next_id_.fetch_add(1, std::memory_order_relaxed); }

  void record(const TraceEvent& ev) {
    std::lock_guard lock(mu_);
    events_.push_back(ev);
  }

  /// Events ordered by task id.
  std::vector<TraceEvent> snapshot() const {
    std::vector<TraceEvent> out;
    {
      std::lock_guard lock(mu_);
      out = events_;
    }
    std::sort(out.begin(), out.end(),
              [](const TraceEvent& a, const TraceEvent& b) { return a.task_id < b.task_id; });
    return out;
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return events_.size();
  }

 private:
  mutable std::mutex mu_;
  std::vector<TraceEvent> events_;
  std::atomic<std::uint64_t> next_id_{1};
};

inline constexpr const char* kTraceCsvHeader =
    "task_id,submit_ms,start_ms,end_ms,lane,cold_start,billed_ms,result_bytes";

/// One row per event; times floored to integer milliseconds (flooring keeps
/// submit <= start <= end).
inline void write_trace_csv(std::ostream& os, const std::vector<TraceEvent>& events) {
  os << kTraceCsvHeader << '\n';
  for (const auto& e : events) {
    os << e.task_id << ',' << static_cast<std::int64_t>(std::floor(e.submit_ms)) << ','
       << static_cast<std::int64_t>(std::floor(e.start_ms)) << ','
       << static_cast<std::int64_t>(std::floor(e.end_ms)) << ',' << to_string(e.lane) << ','
       << (e.cold_start ? 1 : 0) << ',' << e.billed_ms << ',' << e.result_bytes << '\n';
  }
}

}  // namespace elastic
