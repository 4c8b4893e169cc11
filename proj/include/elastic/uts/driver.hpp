#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "elastic/adaptive/controller.hpp"
#include "elastic/exec/executor.hpp"
#include "elastic/uts/tasks.hpp"

namespace elastic::uts {

struct TaskRecord {
  std::uint64_t task_id;
  std::uint64_t visited;
};

struct UtsRun {
  std::uint64_t node_count = 0;
  std::uint64_t tasks = 0;
  std::int64_t peak_active = 0;
  double start_ms = 0.0;
  double end_ms = 0.0;
  std::vector<TaskRecord> per_task;

  double wall_ms() const { return end_ms - start_ms; }
  /// Nodes per second over the run's wall time.
  double throughput() const { return wall_ms() > 0.0 ? node_count / (wall_ms() / 1000.0) : 0.0; }
};

/// Master loop: submit traversal tasks, collect returned bags from the
/// completion queue, split them and resubmit until no bag is left and no task
/// is in flight. With a controller, split factor and iteration bound are
/// retuned after every collected bag from the live active-task count.
inline UtsRun run_uts(const TreeParams& params, Executor& executor,
                      adaptive::Controller* controller = nullptr) {
  params.validate();
  auto queue = std::make_shared<CompletionQueue>();
  UtsRun run;
  run.start_ms = executor.clock().now_ms();

  std::size_t split_factor = static_cast<std::size_t>(params.split_factor);
  std::uint64_t iters = params.iters;
  if (controller) {
    split_factor = static_cast<std::size_t>(controller->current().split_factor);
    iters = controller->current().iters;
  }

  std::int64_t active = 0;
  auto parallelize = [&](std::vector<WorkBag> bags) {
    active += static_cast<std::int64_t>(bags.size());
    run.peak_active = std::max(run.peak_active, active);
    for (auto& bag : bags) {
      executor.submit(make_traverse_task(params, iters, std::move(bag)), queue);
      ++run.tasks;
    }
  };

  WorkBag root;
  root.nodes.push_back(make_root(params));
  parallelize({std::move(root)});

  while (active > 0) {
    auto done = queue->poll(std::chrono::milliseconds(1));
    if (!done) continue;
    --active;
    auto reply = decode<TraverseReply>(done->get());
    run.node_count += reply.visited;
    run.per_task.push_back({done->id(), reply.visited});
    if (controller) {
      const auto p = controller->on_completion(active);
      split_factor = static_cast<std::size_t>(p.split_factor);
      iters = p.iters;
    }
    parallelize(split(reply.bag, split_factor));
  }
  run.end_ms = executor.clock().now_ms();
  return run;
}

/// Single-threaded recursive count, independent of bags and executors.
inline std::uint64_t count_sequential(const TreeParams& params) {
  const TreeShape shape(params);
  std::uint64_t total = 0;
  std::vector<NodeDescriptor> stack{make_root(params)};
  while (!stack.empty()) {
    const NodeDescriptor node = stack.back();
    stack.pop_back();
    ++total;
    const int m = child_count(node, shape);
    for (int i = 0; i < m; ++i) stack.push_back(spawn_child(node, i));
  }
  return total;
}

/// Linear task-duration model, duration_ms = base_ms + per_node_ms * visited.
struct DurationFit {
  double base_ms = 0.0;
  double per_node_ms = 0.0;

  double operator()(std::uint64_t visited) const { return base_ms + per_node_ms * static_cast<double>(visited); }
};

/// Least-squares fit of body duration against visited nodes, joining the run's
/// per-task records with the executor trace by task id.
inline DurationFit fit_duration_model(const UtsRun& run, const std::vector<TraceEvent>& trace) {
  std::unordered_map<std::uint64_t, double> duration;
  for (const auto& e : trace) duration.emplace(e.task_id, e.duration_ms());
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : run.per_task) {
    const auto it = duration.find(r.task_id);
    if (it == duration.end()) continue;
    const double x = static_cast<double>(r.visited), y = it->second;
    n += 1;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  require(n >= 2, "need at least two traced tasks to fit a duration model");
  DurationFit fit;
  const double denom = n * sxx - sx * sx;
  fit.per_node_ms = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  fit.base_ms = (sy - fit.per_node_ms * sx) / n;
  if (fit.base_ms < 0.0) {
    // Through-origin refit keeps every modeled duration non-negative.
    fit.base_ms = 0.0;
    fit.per_node_ms = sxx > 0.0 ? sxy / sxx : 0.0;
  }
  return fit;
}

/// Duration model for the synthetic executor: reads the visited count from
/// each traversal reply.
inline auto traversal_duration(DurationFit fit) {
  return [fit](const Task& task, const BodyOutcome& outcome) -> double {
    if (task.kind != TaskKind::UtsTraverse || !outcome.result) return 0.0;
    return fit(decode<TraverseReply>(*outcome.result).visited);
  };
}

}  // namespace elastic::uts
