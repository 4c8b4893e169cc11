#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "elastic/core/error.hpp"
#include "elastic/exec/trace.hpp"

namespace elastic::metrics {

struct Dispersion {
  double mu = 0.0;
  double sigma = 0.0;  // population standard deviation
  double c_l = 0.0;
};

inline Dispersion coefficient_of_variation(std::span<const double> durations) {
  if (durations.empty()) throw Error(Errc::EmptySample, "no durations");
  double sum = 0.0;
  for (const double d : durations) sum += d;
  const double mu = sum / static_cast<double>(durations.size());
  if (mu == 0.0) throw Error(Errc::ZeroMean, "mean duration is zero");
  double sq = 0.0;
  for (const double d : durations) sq += (d - mu) * (d - mu);
  const double sigma = std::sqrt(sq / static_cast<double>(durations.size()));
  return {mu, sigma, sigma / mu};
}

inline std::vector<double> durations(std::span<const TraceEvent> trace) {
  std::vector<double> out;
  out.reserve(trace.size());
  for (const auto& e : trace) out.push_back(e.duration_ms());
  return out;
}

struct RateBin {
  double bin_start_ms = 0.0;
  std::uint64_t count = 0;
  double tasks_per_s = 0.0;
};

/// Histogram of submission times, bins anchored at the earliest submission.
inline std::vector<RateBin> task_rate(std::span<const TraceEvent> trace, double bin_ms = 1000.0) {
  require(bin_ms > 0.0, "bin width must be positive");
  if (trace.empty()) return {};
  double first = trace.front().submit_ms;
  for (const auto& e : trace) first = std::min(first, e.submit_ms);
  std::vector<RateBin> bins;
  for (const auto& e : trace) {
    const auto idx = static_cast<std::size_t>(std::floor((e.submit_ms - first) / bin_ms));
    if (idx >= bins.size()) bins.resize(idx + 1);
    ++bins[idx].count;
  }
  for (std::size_t i = 0; i < bins.size(); ++i) {
    bins[i].bin_start_ms = first + static_cast<double>(i) * bin_ms;
    bins[i].tasks_per_s = static_cast<double>(bins[i].count) * 1000.0 / bin_ms;
  }
  return bins;
}

struct CdfPoint {
  double duration_ms = 0.0;
  double fraction = 0.0;
};

/// One point per distinct duration, carrying the fraction of tasks at or below it.
inline std::vector<CdfPoint> duration_cdf(std::span<const TraceEvent> trace) {
  auto d = durations(trace);
  std::sort(d.begin(), d.end());
  std::vector<CdfPoint> out;
  const double n = static_cast<double>(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i + 1 < d.size() && d[i + 1] == d[i]) continue;
    out.push_back({d[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

struct ConcurrencyPoint {
  double time_ms = 0.0;
  std::int64_t in_flight = 0;
};

/// In-flight task count after every start/end instant. At equal timestamps
/// ends are applied before starts so back-to-back tasks do not overlap.
inline std::vector<ConcurrencyPoint> concurrency_series(std::span<const TraceEvent> trace) {
  std::map<double, std::pair<std::int64_t, std::int64_t>> deltas;  // time -> (ends, starts)
  for (const auto& e : trace) {
    ++deltas[e.start_ms].second;
    ++deltas[e.end_ms].first;
  }
  std::vector<ConcurrencyPoint> out;
  std::int64_t level = 0;
  for (const auto& [t, d] : deltas) {
    level += d.second - d.first;
    out.push_back({t, level});
  }
  return out;
}

inline std::int64_t peak_concurrency(std::span<const TraceEvent> trace) {
  std::int64_t peak = 0;
  for (const auto& p : concurrency_series(trace)) peak = std::max(peak, p.in_flight);
  return peak;
}

inline double throughput_per_s(double work_units, double wall_ms) {
  return wall_ms > 0.0 ? work_units * 1000.0 / wall_ms : 0.0;
}

inline double parallel_efficiency(double parallel_throughput, double sequential_throughput, int workers) {
  require(workers >= 1, "workers must be at least 1");
  require(sequential_throughput > 0.0, "sequential throughput must be positive");
  return parallel_throughput / (sequential_throughput * workers);
}

struct CharacterizationReport {
  Dispersion dispersion;
  std::vector<RateBin> rate_series;
  std::vector<CdfPoint> cdf_points;
  std::vector<ConcurrencyPoint> concurrency_series;
  double throughput = 0.0;
};

inline CharacterizationReport characterize(std::span<const TraceEvent> trace, double work_units, double wall_ms,
                                           double bin_ms = 1000.0) {
  CharacterizationReport r;
  const auto d = durations(trace);
  if (!d.empty()) {
    double sum = 0.0;
    for (const double x : d) sum += x;
    if (sum > 0.0) r.dispersion = coefficient_of_variation(d);
  }
  r.rate_series = task_rate(trace, bin_ms);
  r.cdf_points = duration_cdf(trace);
  r.concurrency_series = metrics::concurrency_series(trace);
  r.throughput = throughput_per_s(work_units, wall_ms);
  return r;
}

}  // namespace elastic::metrics
