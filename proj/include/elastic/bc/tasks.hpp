#pragma once

#include <chrono>
#include <memory>

#include "elastic/bc/brandes.hpp"
#include "elastic/exec/executor.hpp"
#include "elastic/exec/registry.hpp"

namespace elastic::bc {

struct RangeRequest {
  RmatParams params;
  Vertex start = 0;
  Vertex end = 0;  // inclusive

  template <class Archive>
  void serialize(Archive& ar) {
    ar(params, start, end);
  }
};

struct RangeReply {
  Vertex start = 0;
  Vertex end = 0;
  BetweennessMap partial;

  template <class Archive>
  void serialize(Archive& ar) {
    ar(start, end, partial);
  }
};

inline Task make_range_task(const RmatParams& p, Vertex start, Vertex end) {
  return {TaskKind::BcRange, encode(RangeRequest{p, start, end})};
}

/// Each task rebuilds the graph from its parameters unless a prebuilt graph is
/// shared, which is only meaningful when tasks run in this process.
inline void register_tasks(TaskRegistry& registry, std::shared_ptr<const CsrGraph> shared = nullptr) {
  registry.set(TaskKind::BcRange,
               {[](PayloadView p) { decode<RangeRequest>(p).params.validate(); },
                [shared](PayloadView p) {
                  const auto req = decode<RangeRequest>(p);
                  RangeReply reply{req.start, req.end, {}};
                  if (shared) {
                    reply.partial = brandes_range(*shared, req.start, req.end);
                  } else {
                    reply.partial = brandes_range(build_graph(req.params), req.start, req.end);
                  }
                  return encode(reply);
                }});
}

/// Contiguous source ranges of ceil(N/T) sources; trailing empty ranges are dropped.
inline std::vector<std::pair<Vertex, Vertex>> partition_sources(std::uint32_t n, int tasks) {
  require(tasks >= 1, "task count must be at least 1");
  std::vector<std::pair<Vertex, Vertex>> ranges;
  const std::uint64_t chunk = (static_cast<std::uint64_t>(n) + tasks - 1) / tasks;
  for (std::uint64_t s = 0; s < n; s += chunk)
    ranges.emplace_back(static_cast<Vertex>(s), static_cast<Vertex>(std::min<std::uint64_t>(s + chunk, n) - 1));
  return ranges;
}

struct BcRun {
  BetweennessMap scores;
  std::uint64_t tasks = 0;
  std::uint64_t sources = 0;
  double start_ms = 0.0;
  double end_ms = 0.0;

  double wall_ms() const { return end_ms - start_ms; }
};

/// Submits every range up front, then sums the partial maps. Partials are added
/// in range order regardless of completion order so the floating-point result
/// does not depend on scheduling.
inline BcRun run_bc(const RmatParams& p, Executor& executor) {
  p.validate();
  const auto n = static_cast<std::uint32_t>(p.vertices());
  const auto ranges = partition_sources(n, p.tasks);
  auto queue = std::make_shared<CompletionQueue>();
  BcRun run;
  run.start_ms = executor.clock().now_ms();
  for (const auto& [s, e] : ranges) executor.submit(make_range_task(p, s, e), queue);
  run.tasks = ranges.size();

  std::vector<BetweennessMap> partials(ranges.size());
  std::size_t received = 0;
  const std::uint64_t chunk = ranges.empty() ? 1 : ranges.front().second - ranges.front().first + 1;
  while (received < ranges.size()) {
    auto done = queue->poll(std::chrono::milliseconds(1));
    if (!done) continue;
    auto reply = decode<RangeReply>(done->get());
    run.sources += reply.end - reply.start + 1;
    partials[reply.start / chunk] = std::move(reply.partial);
    ++received;
  }
  run.scores.assign(n, 0.0);
  for (const auto& part : partials)
    for (std::uint32_t v = 0; v < n; ++v) run.scores[v] += part[v];
  run.end_ms = executor.clock().now_ms();
  return run;
}

}  // namespace elastic::bc
