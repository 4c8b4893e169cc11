#pragma once

#include "elastic/exec/registry.hpp"
#include "elastic/mandel/rect.hpp"

namespace elastic::mandel {

struct RectRequest {
  MandelParams params;
  PixelRect rect;

  template <class Archive>
  void serialize(Archive& ar) {
    ar(params, rect);
  }
};

inline Task make_rect_task(const MandelParams& p, const PixelRect& r) {
  return {TaskKind::MandelRect, encode(RectRequest{p, r})};
}

inline void register_tasks(TaskRegistry& registry) {
  registry.set(TaskKind::MandelRect, {[](PayloadView p) { (void)decode<RectRequest>(p); },
                                      [](PayloadView p) {
                                        const auto req = decode<RectRequest>(p);
                                        return encode(evaluate_rect(req.rect, req.params));
                                      }});
}

/// Synthetic cost: a fixed per-task part plus a cost per escape iteration.
inline auto rect_duration(double base_ms, double ns_per_iteration) {
  return [=](const Task& task, const BodyOutcome& outcome) -> double {
    if (task.kind != TaskKind::MandelRect || !outcome.result) return 0.0;
    return base_ms + ns_per_iteration * 1e-6 * static_cast<double>(decode<RectResult>(*outcome.result).iterations);
  };
}

}  // namespace elastic::mandel
