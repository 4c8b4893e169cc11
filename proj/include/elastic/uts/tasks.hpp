#pragma once

#include <memory>

#include "elastic/exec/registry.hpp"
#include "elastic/uts/subtree_cache.hpp"

namespace elastic::uts {

/// Payload of one traversal task: the tree shape, the budget and the bag.
struct TraverseRequest {
  double b0 = 4.0;
  int depth_cutoff = 14;
  std::uint64_t iters = 1;
  WorkBag bag;

  template <class Archive>
  void serialize(Archive& ar) {
    ar(b0, depth_cutoff, iters, bag);
  }
};

struct TraverseReply {
  std::uint64_t visited = 0;
  WorkBag bag;

  template <class Archive>
  void serialize(Archive& ar) {
    ar(visited, bag);
  }
};

inline Task make_traverse_task(const TreeParams& params, std::uint64_t iters, WorkBag bag) {
  return {TaskKind::UtsTraverse, encode(TraverseRequest{params.b0, params.depth_cutoff, iters, std::move(bag)})};
}

/// Registers the traversal handler. With `accelerator` set, requests for the
/// cached tree take the subtree-skipping path (identical results).
inline void register_tasks(TaskRegistry& registry,
                           std::shared_ptr<const SubtreeSizeCache> accelerator = nullptr) {
  registry.set(TaskKind::UtsTraverse,
               {[](PayloadView p) { (void)decode<TraverseRequest>(p); },
                [accelerator](PayloadView p) {
                  auto req = decode<TraverseRequest>(p);
                  const TreeShape shape(req.b0, req.depth_cutoff);
                  TraverseReply reply;
                  reply.visited = (accelerator && accelerator->matches(shape))
                                      ? traverse(req.bag, req.iters, shape, *accelerator)
                                      : traverse(req.bag, req.iters, shape);
                  reply.bag = std::move(req.bag);
                  return encode(reply);
                }});
}

}  // namespace elastic::uts
