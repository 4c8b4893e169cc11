#pragma once

#include <chrono>
#include <memory>
#include <vector>

#include "elastic/exec/executor.hpp"
#include "elastic/mandel/tasks.hpp"

namespace elastic::mandel {

struct MandelRun {
  DwellImage image;
  std::uint64_t tasks = 0;
  std::uint64_t fills = 0;
  std::uint64_t arrays = 0;
  std::uint64_t splits = 0;
  std::uint64_t evaluations = 0;  // dwell computations across all tasks
  double start_ms = 0.0;
  double end_ms = 0.0;

  double wall_ms() const { return end_ms - start_ms; }
};

/// Master side of the recursive renderer: seeds the sd x sd grid as tasks,
/// assembles FILL and per-pixel results into the image, and turns every
/// SPLIT result into child tasks. Throws COVERAGE_ERROR unless every pixel was
/// written exactly once.
inline MandelRun mariani_silver(const MandelParams& p, Executor& executor) {
  p.validate();
  MandelRun run;
  run.image = DwellImage(p.width, p.height);
  std::vector<std::uint8_t> writes(run.image.dwell.size(), 0);
  auto queue = std::make_shared<CompletionQueue>();
  run.start_ms = executor.clock().now_ms();

  std::int64_t active = 0;
  auto launch = [&](const std::vector<PixelRect>& rects) {
    for (const auto& r : rects) {
      executor.submit(make_rect_task(p, r), queue);
      ++active;
      ++run.tasks;
    }
  };
  auto write = [&](int x, int y, std::int32_t d) {
    run.image.at(x, y) = d;
    auto& w = writes[static_cast<std::size_t>(y) * p.width + x];
    if (w < 255) ++w;
  };

  launch(initial_rects(p));
  const int k = p.grid_side();
  while (active > 0) {
    auto done = queue->poll(std::chrono::milliseconds(1));
    if (!done) continue;
    --active;
    const auto res = decode<RectResult>(done->get());
    run.evaluations += res.evaluations;
    const auto& r = res.rect;
    switch (res.action) {
      case Action::Fill:
        ++run.fills;
        for (int y = r.y0; y < r.y0 + r.h; ++y)
          for (int x = r.x0; x < r.x0 + r.w; ++x) write(x, y, res.fill_dwell);
        break;
      case Action::SetDwellArray:
        ++run.arrays;
        for (int y = 0; y < r.h; ++y)
          for (int x = 0; x < r.w; ++x)
            write(r.x0 + x, r.y0 + y, res.dwells[static_cast<std::size_t>(y) * r.w + x]);
        break;
      case Action::Split:
        ++run.splits;
        launch(split_rect(r, k));
        break;
    }
  }
  run.end_ms = executor.clock().now_ms();

  for (std::size_t i = 0; i < writes.size(); ++i) {
    if (writes[i] != 1)
      throw Error(Errc::CoverageError, "pixel " + std::to_string(i) + " written " +
                                           std::to_string(writes[i]) + " times");
  }
  return run;
}

}  // namespace elastic::mandel
