#pragma once

#include <cmath>
#include <cstdint>

#include "elastic/core/error.hpp"
#include "elastic/uts/sha1.hpp"

namespace elastic::uts {

/// Geometric UTS tree plus the traversal knobs of the parallel search.
struct TreeParams {
  std::uint32_t seed = 19;     // root seed r
  double b0 = 4.0;             // expected branching factor
  int depth_cutoff = 14;       // d: nodes at depth >= d are leaves
  int split_factor = 4;        // s: max partitions per returned bag
  std::uint64_t iters = 100'000;  // n: max nodes traversed per task

  void validate() const {
    require(b0 > 0.0, "b0 must be > 0");
    require(depth_cutoff >= 0, "depth cutoff must be >= 0");
    require(split_factor >= 1, "split factor must be >= 1");
    require(iters >= 1, "iters must be >= 1");
  }
};

struct NodeDescriptor {
  Digest state{};
  int depth = 0;

  bool operator==(const NodeDescriptor&) const = default;

  template <class Archive>
  void serialize(Archive& ar) {
    ar(state, depth);
  }
};

/// Children per node never exceed this (same cap as the reference UTS code).
inline constexpr int kMaxChildren = 100;

/// Shape constants precomputed once per tree.
struct TreeShape {
  int depth_cutoff;
  double log_q;  // log(1 - p), p = 1 / (1 + b0)

  explicit TreeShape(double b0, int cutoff) : depth_cutoff(cutoff) {
    const double p = 1.0 / (1.0 + b0);
    log_q = std::log(1.0 - p);
  }
  explicit TreeShape(const TreeParams& params) : TreeShape(params.b0, params.depth_cutoff) {}
};

/// Root state: SHA-1 over 16 zero bytes followed by the big-endian seed.
inline NodeDescriptor make_root(std::uint32_t seed) {
  std::array<std::uint8_t, 20> buf{};
  buf[16] = static_cast<std::uint8_t>(seed >> 24);
  buf[17] = static_cast<std::uint8_t>(seed >> 16);
  buf[18] = static_cast<std::uint8_t>(seed >> 8);
  buf[19] = static_cast<std::uint8_t>(seed);
  return {sha1(buf), 0};
}

inline NodeDescriptor make_root(const TreeParams& params) { return make_root(params.seed); }

/// Uniform draw in [0, 1) from the last four state bytes, top bit cleared.
inline double state_uniform(const Digest& state) {
  const std::uint32_t b = (static_cast<std::uint32_t>(state[16]) << 24) |
                          (static_cast<std::uint32_t>(state[17]) << 16) |
                          (static_cast<std::uint32_t>(state[18]) << 8) | static_cast<std::uint32_t>(state[19]);
  return static_cast<double>(b & 0x7fffffffU) / 2147483648.0;
}

/// Inverse geometric CDF: floor(log(1 - u) / log(1 - p)).
inline int child_count(const NodeDescriptor& node, const TreeShape& shape) {
  if (node.depth >= shape.depth_cutoff) return 0;
  const double u = state_uniform(node.state);
  const int m = static_cast<int>(std::floor(std::log(1.0 - u) / shape.log_q));
  return m > kMaxChildren ? kMaxChildren : m;
}

inline int child_count(const NodeDescriptor& node, const TreeParams& params) {
  return child_count(node, TreeShape(params));
}

/// child.state = SHA-1(parent.state || big-endian-32(index)).
inline NodeDescriptor spawn_child(const NodeDescriptor& parent, int index) {
  return {sha1_with_index(parent.state, static_cast<std::uint32_t>(index)), parent.depth + 1};
}

}  // namespace elastic::uts
