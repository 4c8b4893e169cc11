#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "elastic/uts/tree.hpp"

namespace elastic::uts {

/// Pending tree nodes; `nodes.back()` is the top of the depth-first stack.
struct WorkBag {
  std::vector<NodeDescriptor> nodes;
  std::uint64_t traversed = 0;  // nodes consumed by this bag's lineage

  std::size_t size() const { return nodes.size(); }
  bool empty() const { return nodes.empty(); }

  template <class Archive>
  void serialize(Archive& ar) {
    ar(nodes, traversed);
  }
};

/// Pops up to `n` nodes depth-first, pushing each popped node's children.
/// Returns the number of nodes consumed (less than n only if the bag empties).
inline std::uint64_t traverse(WorkBag& bag, std::uint64_t n, const TreeShape& shape) {
  std::uint64_t visited = 0;
  auto& stack = bag.nodes;
  while (visited < n && !stack.empty()) {
    const NodeDescriptor node = stack.back();
    stack.pop_back();
    ++visited;
    const int m = child_count(node, shape);
    for (int i = 0; i < m; ++i) stack.push_back(spawn_child(node, i));
  }
  bag.traversed += visited;
  return visited;
}

/// Splits into min(s, |bag|) contiguous chunks whose sizes differ by at most
/// one. The lineage counter stays with the first chunk.
inline std::vector<WorkBag> split(const WorkBag& bag, std::size_t s) {
  require(s >= 1, "split factor must be >= 1");
  std::vector<WorkBag> out;
  const std::size_t n = bag.size();
  if (n == 0) return out;
  const std::size_t parts = std::min(s, n);
  const std::size_t base = n / parts;
  const std::size_t extra = n % parts;
  out.reserve(parts);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < parts; ++i) {
    const std::size_t len = base + (i < extra ? 1 : 0);
    WorkBag part;
    part.nodes.assign(bag.nodes.begin() + static_cast<std::ptrdiff_t>(pos),
                      bag.nodes.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
    out.push_back(std::move(part));
  }
  out.front().traversed = bag.traversed;
  return out;
}

}  // namespace elastic::uts
