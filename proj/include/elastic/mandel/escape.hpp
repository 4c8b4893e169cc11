#pragma once

#include <cstdint>
#include <vector>

#include "elastic/core/error.hpp"

namespace elastic::mandel {

struct Viewport {
  double x_min = -2.0;
  double x_max = 1.0;
  double y_min = -1.5;
  double y_max = 1.5;

  template <class Archive>
  void serialize(Archive& ar) {
    ar(x_min, x_max, y_min, y_max);
  }
};

struct MandelParams {
  int width = 512;
  int height = 512;
  int max_dwell = 10'000;
  int initial_subdivision = 8;  // sd: initial grid cells per axis
  int split_factor = 4;         // sub-rectangles per split, a perfect square
  int max_depth = 4;            // recursion levels before per-pixel evaluation
  Viewport viewport;

  void validate() const {
    require(width >= 1 && height >= 1, "image must be at least 1x1");
    require(max_dwell >= 1, "max_dwell must be >= 1");
    require(initial_subdivision >= 1, "initial subdivision must be >= 1");
    require(max_depth >= 0, "max_depth must be >= 0");
    require(split_factor >= 4 && grid_side() * grid_side() == split_factor,
            "split factor must be a perfect square >= 4");
  }

  int grid_side() const {
    int k = 1;
    while ((k + 1) * (k + 1) <= split_factor) ++k;
    return k;
  }

  template <class Archive>
  void serialize(Archive& ar) {
    ar(width, height, max_dwell, initial_subdivision, split_factor, max_depth, viewport);
  }
};

struct Complex {
  double re;
  double im;
};

/// Pixel centre to complex plane.
inline Complex pixel_to_complex(int x, int y, const MandelParams& p) {
  const auto& v = p.viewport;
  return {v.x_min + (x + 0.5) / p.width * (v.x_max - v.x_min),
          v.y_min + (y + 0.5) / p.height * (v.y_max - v.y_min)};
}

/// Escape time of c under z <- z^2 + c from z = 0: the first iteration k with
/// |z| > 2, or max_dwell if the orbit stays bounded that long.
inline int dwell(Complex c, int max_dwell) {
  double zr = 0.0, zi = 0.0;
  for (int k = 1; k <= max_dwell; ++k) {
    const double zr2 = zr * zr, zi2 = zi * zi;
    const double nr = zr2 - zi2 + c.re;
    const double ni = 2.0 * zr * zi + c.im;
    zr = nr;
    zi = ni;
    if (zr * zr + zi * zi > 4.0) return k;
  }
  return max_dwell;
}

/// Row-major dwell matrix.
struct DwellImage {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> dwell;

  DwellImage() = default;
  DwellImage(int w, int h) : width(w), height(h), dwell(static_cast<std::size_t>(w) * h, 0) {}

  std::int32_t& at(int x, int y) { return dwell[static_cast<std::size_t>(y) * width + x]; }
  std::int32_t at(int x, int y) const { return dwell[static_cast<std::size_t>(y) * width + x]; }

  bool operator==(const DwellImage&) const = default;
};

/// Reference renderer: dwell at every pixel centre.
inline DwellImage naive_escape_time(const MandelParams& p) {
  p.validate();
  DwellImage img(p.width, p.height);
  for (int y = 0; y < p.height; ++y)
    for (int x = 0; x < p.width; ++x) img.at(x, y) = dwell(pixel_to_complex(x, y, p), p.max_dwell);
  return img;
}

}  // namespace elastic::mandel
