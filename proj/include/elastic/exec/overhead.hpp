#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "elastic/exec/executor.hpp"

namespace elastic {

struct OverheadStats {
  std::size_t samples = 0;
  double mean_ms = 0.0;
  double p50_ms = 0.0;
  double p95_ms = 0.0;
  double p99_ms = 0.0;
  double max_ms = 0.0;
};

/// Nearest-rank percentile of an ascending-sorted sample, q in [0, 1].
inline double percentile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

/// Sequentially submits and awaits no-op tasks; each sample is the round trip
/// minus the time spent in the task body.
inline OverheadStats measure_overhead(Executor& executor, std::size_t warmup_count, std::size_t sample_count) {
  require(warmup_count >= 1, "warmup_count must be >= 1");
  for (std::size_t i = 0; i < warmup_count; ++i) executor.submit(Task::noop()).get();

  std::vector<double> samples;
  samples.reserve(sample_count);
  for (std::size_t i = 0; i < sample_count; ++i) {
    const double t0 = executor.clock().now_ms();
    TaskHandle h = executor.submit(Task::noop());
    h.get();
    const double t1 = executor.clock().now_ms();
    const auto ev = h.trace();
    const double body = ev ? ev->duration_ms() : 0.0;
    samples.push_back(std::max(0.0, (t1 - t0) - body));
  }

  OverheadStats stats;
  stats.samples = samples.size();
  if (samples.empty()) return stats;
  std::sort(samples.begin(), samples.end());
  stats.mean_ms = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
  stats.p50_ms = percentile_sorted(samples, 0.50);
  stats.p95_ms = percentile_sorted(samples, 0.95);
  stats.p99_ms = percentile_sorted(samples, 0.99);
  stats.max_ms = samples.back();
  return stats;
}

}  // namespace elastic
