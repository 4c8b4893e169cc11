#pragma once

#include <vector>

#include "elastic/bc/graph.hpp"

namespace elastic::bc {

using BetweennessMap = std::vector<double>;

/// Scratch space reused across sources of one range.
struct BrandesState {
  std::vector<std::int64_t> distance;
  std::vector<double> sigma;
  std::vector<double> delta;
  std::vector<Vertex> order;  // BFS visit order, consumed in reverse
  std::vector<Vertex> queue;

  explicit BrandesState(std::uint32_t n) : distance(n, -1), sigma(n, 0.0), delta(n, 0.0) {
    order.reserve(n);
    queue.reserve(n);
  }
};

/// Adds the dependencies of source s onto bc. Predecessors are recovered from
/// the distance labels instead of being stored.
inline void accumulate_source(const CsrGraph& g, Vertex s, BrandesState& st, BetweennessMap& bc) {
  for (const Vertex v : st.order) {
    st.distance[v] = -1;
    st.sigma[v] = 0.0;
    st.delta[v] = 0.0;
  }
  st.order.clear();
  st.queue.clear();

  st.distance[s] = 0;
  st.sigma[s] = 1.0;
  st.queue.push_back(s);
  for (std::size_t head = 0; head < st.queue.size(); ++head) {
    const Vertex v = st.queue[head];
    st.order.push_back(v);
    for (const Vertex w : g.neighbours(v)) {
      if (st.distance[w] < 0) {
        st.distance[w] = st.distance[v] + 1;
        st.queue.push_back(w);
      }
      if (st.distance[w] == st.distance[v] + 1) st.sigma[w] += st.sigma[v];
    }
  }
  for (auto it = st.order.rbegin(); it != st.order.rend(); ++it) {
    const Vertex w = *it;
    for (const Vertex v : g.neighbours(w))
      if (st.distance[v] == st.distance[w] - 1) st.delta[v] += st.sigma[v] / st.sigma[w] * (1.0 + st.delta[w]);
    if (w != s) bc[w] += st.delta[w];
  }
}

/// Partial scores from sources start..end inclusive, over ordered pairs.
inline BetweennessMap brandes_range(const CsrGraph& g, Vertex start, Vertex end) {
  require(start <= end && end < g.n, "source range outside the graph");
  BetweennessMap bc(g.n, 0.0);
  BrandesState st(g.n);
  for (Vertex s = start;; ++s) {
    accumulate_source(g, s, st, bc);
    if (s == end) break;
  }
  return bc;
}

inline BetweennessMap brandes(const CsrGraph& g) {
  if (g.n == 0) return {};
  return brandes_range(g, 0, g.n - 1);
}

}  // namespace elastic::bc
