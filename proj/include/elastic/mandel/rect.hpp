#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "elastic/mandel/escape.hpp"

namespace elastic::mandel {

/// Half-open pixel rectangle [x0, x0+w) x [y0, y0+h) at a recursion depth.
struct PixelRect {
  int x0 = 0;
  int y0 = 0;
  int w = 0;
  int h = 0;
  int depth = 0;

  bool empty() const { return w <= 0 || h <= 0; }
  std::int64_t area() const { return static_cast<std::int64_t>(w) * h; }

  bool operator==(const PixelRect&) const = default;

  template <class Archive>
  void serialize(Archive& ar) {
    ar(x0, y0, w, h, depth);
  }
};

/// Dwells already computed inside one rectangle, so no pixel is evaluated twice
/// by the same task.
class DwellCache {
 public:
  explicit DwellCache(const PixelRect& r)
      : rect_(r), values_(static_cast<std::size_t>(r.area()), -1) {}

  int get(int x, int y, const MandelParams& p) {
    auto& slot = values_[static_cast<std::size_t>(y - rect_.y0) * rect_.w + (x - rect_.x0)];
    if (slot < 0) {
      slot = dwell(pixel_to_complex(x, y, p), p.max_dwell);
      ++evaluations_;
      iterations_ += static_cast<std::uint64_t>(slot);
    }
    return slot;
  }

  std::uint64_t evaluations() const { return evaluations_; }
  std::uint64_t iterations() const { return iterations_; }

 private:
  PixelRect rect_;
  std::vector<std::int32_t> values_;
  std::uint64_t evaluations_ = 0;
  std::uint64_t iterations_ = 0;
};

/// Evaluates every boundary pixel; returns the shared dwell, or nullopt when
/// the border is mixed.
inline std::optional<int> border_common_dwell(const PixelRect& r, const MandelParams& p, DwellCache& cache) {
  std::optional<int> common;
  bool mixed = false;
  auto visit = [&](int x, int y) {
    const int d = cache.get(x, y, p);
    if (!common) common = d;
    else if (*common != d) mixed = true;
  };
  const int x1 = r.x0 + r.w - 1, y1 = r.y0 + r.h - 1;
  for (int x = r.x0; x <= x1; ++x) {
    visit(x, r.y0);
    if (y1 != r.y0) visit(x, y1);
  }
  for (int y = r.y0 + 1; y < y1; ++y) {
    visit(r.x0, y);
    if (x1 != r.x0) visit(x1, y);
  }
  if (mixed) return std::nullopt;
  return common;
}

inline std::optional<int> border_common_dwell(const PixelRect& r, const MandelParams& p) {
  DwellCache cache(r);
  return border_common_dwell(r, p, cache);
}

enum class Action : std::uint8_t { Fill, SetDwellArray, Split };

struct RectResult {
  PixelRect rect;
  Action action = Action::Split;
  std::int32_t fill_dwell = 0;
  std::vector<std::int32_t> dwells;  // row-major w*h, SetDwellArray only
  std::uint64_t evaluations = 0;
  std::uint64_t iterations = 0;

  template <class Archive>
  void serialize(Archive& ar) {
    ar(rect, action, fill_dwell, dwells, evaluations, iterations);
  }
};

/// FILL when the border shares one dwell; per-pixel evaluation once the
/// rectangle has reached max_depth; SPLIT otherwise.
inline RectResult evaluate_rect(const PixelRect& r, const MandelParams& p) {
  require(!r.empty() && r.x0 >= 0 && r.y0 >= 0 && r.x0 + r.w <= p.width && r.y0 + r.h <= p.height,
          "rectangle outside image bounds");
  RectResult out;
  out.rect = r;
  DwellCache cache(r);
  if (const auto common = border_common_dwell(r, p, cache)) {
    out.action = Action::Fill;
    out.fill_dwell = *common;
  } else if (r.depth >= p.max_depth) {
    out.action = Action::SetDwellArray;
    out.dwells.resize(static_cast<std::size_t>(r.area()));
    for (int y = 0; y < r.h; ++y)
      for (int x = 0; x < r.w; ++x)
        out.dwells[static_cast<std::size_t>(y) * r.w + x] = cache.get(r.x0 + x, r.y0 + y, p);
  } else {
    out.action = Action::Split;
  }
  out.evaluations = cache.evaluations();
  out.iterations = cache.iterations();
  return out;
}

/// k x k grid (k*k = split factor) with floor boundaries; empty pieces are dropped.
inline std::vector<PixelRect> split_rect(const PixelRect& r, int k) {
  std::vector<PixelRect> out;
  for (int j = 0; j < k; ++j) {
    const int ya = r.y0 + static_cast<int>(static_cast<std::int64_t>(j) * r.h / k);
    const int yb = r.y0 + static_cast<int>(static_cast<std::int64_t>(j + 1) * r.h / k);
    for (int i = 0; i < k; ++i) {
      const int xa = r.x0 + static_cast<int>(static_cast<std::int64_t>(i) * r.w / k);
      const int xb = r.x0 + static_cast<int>(static_cast<std::int64_t>(i + 1) * r.w / k);
      PixelRect c{xa, ya, xb - xa, yb - ya, r.depth + 1};
      if (!c.empty()) out.push_back(c);
    }
  }
  return out;
}

/// Initial sd x sd grid over the whole image, depth 0.
inline std::vector<PixelRect> initial_rects(const MandelParams& p) {
  PixelRect whole{0, 0, p.width, p.height, -1};
  return split_rect(whole, p.initial_subdivision);
}

}  // namespace elastic::mandel
