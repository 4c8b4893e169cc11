#pragma once

#include <algorithm>
#include <ostream>

#include "elastic/mandel/escape.hpp"

namespace elastic::mandel {

/// Binary greymap (P5, maxval 255), dwell range mapped linearly onto 0..255.
inline void write_pgm(std::ostream& os, const DwellImage& img) {
  os << "P5\n" << img.width << ' ' << img.height << "\n255\n";
  if (img.dwell.empty()) return;
  const auto [lo, hi] = std::minmax_element(img.dwell.begin(), img.dwell.end());
  const double span = static_cast<double>(*hi - *lo);
  for (const auto d : img.dwell) {
    const double v = span > 0.0 ? (d - *lo) * 255.0 / span : 255.0;
    os.put(static_cast<char>(static_cast<unsigned char>(std::clamp(v + 0.5, 0.0, 255.0))));
  }
}

}  // namespace elastic::mandel
