#pragma once

#include <cstdint>
#include <cstring>
#include <unordered_map>
#include <vector>

#include "elastic/uts/bag.hpp"

namespace elastic::uts {

struct DigestHash {
  std::size_t operator()(const Digest& d) const noexcept {
    std::uint64_t h;
    std::memcpy(&h, d.data(), sizeof h);
    return static_cast<std::size_t>(h);
  }
};

/// Subtree sizes of every node at depth <= memo_depth of one tree, built by a
/// single full traversal. Lets the simulator consume whole subtrees in O(1)
/// while producing exactly the (visited, frontier) a plain traversal would.
class SubtreeSizeCache {
 public:
  static SubtreeSizeCache build(const TreeParams& params, int memo_depth) {
    SubtreeSizeCache cache;
    cache.b0_ = params.b0;
    cache.depth_cutoff_ = params.depth_cutoff;
    cache.memo_depth_ = memo_depth;
    const TreeShape shape(params);

    struct Frame {
      NodeDescriptor node;
      int children;
      int next;
      std::uint64_t size;
    };
    std::vector<Frame> stack;
    const NodeDescriptor root = make_root(params);
    stack.push_back({root, child_count(root, shape), 0, 1});
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next < top.children) {
        const NodeDescriptor child = spawn_child(top.node, top.next++);
        stack.push_back({child, child_count(child, shape), 0, 1});
        continue;
      }
      const Frame done = top;
      stack.pop_back();
      if (done.node.depth <= memo_depth) cache.sizes_.emplace(done.node.state, done.size);
      if (stack.empty())
        cache.total_ = done.size;
      else
        stack.back().size += done.size;
    }
    return cache;
  }

  bool matches(const TreeShape& shape) const {
    return shape.depth_cutoff == depth_cutoff_ && TreeShape(b0_, depth_cutoff_).log_q == shape.log_q;
  }

  int memo_depth() const { return memo_depth_; }
  std::uint64_t total() const { return total_; }
  std::size_t entries() const { return sizes_.size(); }

  /// Subtree size of a memoized node, or 0 if the node is deeper than the memo.
  std::uint64_t size_of(const NodeDescriptor& node) const {
    if (node.depth > memo_depth_) return 0;
    const auto it = sizes_.find(node.state);
    return it == sizes_.end() ? 0 : it->second;
  }

 private:
  double b0_ = 0.0;
  int depth_cutoff_ = 0;
  int memo_depth_ = -1;
  std::uint64_t total_ = 0;
  std::unordered_map<Digest, std::uint64_t, DigestHash> sizes_;
};

/// Same contract and result as traverse(). A popped node whose whole subtree
/// fits in the remaining budget is consumed at once: depth-first order would
/// have finished that subtree before touching anything beneath it on the stack.
inline std::uint64_t traverse(WorkBag& bag, std::uint64_t n, const TreeShape& shape,
                              const SubtreeSizeCache& cache) {
  std::uint64_t visited = 0;
  auto& stack = bag.nodes;
  while (visited < n && !stack.empty()) {
    const NodeDescriptor node = stack.back();
    stack.pop_back();
    const std::uint64_t size = cache.size_of(node);
    if (size != 0 && size <= n - visited) {
      visited += size;
      continue;
    }
    ++visited;
    const int m = child_count(node, shape);
    for (int i = 0; i < m; ++i) stack.push_back(spawn_child(node, i));
  }
  bag.traversed += visited;
  return visited;
}

}  // namespace elastic::uts
