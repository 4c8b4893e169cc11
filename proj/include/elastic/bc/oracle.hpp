#pragma once

#include <vector>

#include "elastic/bc/brandes.hpp"

namespace elastic::bc {

inline constexpr std::uint32_t kOracleMaxVertices = 256;

/// Betweenness by explicit pair enumeration: all-pairs BFS distances and path
/// counts, then v lies on a shortest s-t path iff d(s,v)+d(v,t) = d(s,t), and
/// carries sigma(s,v)*sigma(v,t) of the sigma(s,t) paths.
inline BetweennessMap bc_oracle(const CsrGraph& g) {
  if (g.n > kOracleMaxVertices)
    throw Error(Errc::GraphTooLarge, "oracle limited to " + std::to_string(kOracleMaxVertices) + " vertices, got " +
                                         std::to_string(g.n));
  const std::uint32_t n = g.n;
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  std::vector<std::vector<double>> paths(n, std::vector<double>(n, 0.0));
  for (Vertex s = 0; s < n; ++s) {
    auto& d = dist[s];
    auto& c = paths[s];
    d[s] = 0;
    c[s] = 1.0;
    std::vector<Vertex> frontier{s};
    while (!frontier.empty()) {
      std::vector<Vertex> next;
      for (const Vertex v : frontier)
        for (const Vertex w : g.neighbours(v))
          if (d[w] < 0) {
            d[w] = d[v] + 1;
            next.push_back(w);
          }
      // Counts on the next level come from every neighbour one level closer.
      for (const Vertex w : next)
        for (const Vertex v : g.neighbours(w))
          if (d[v] == d[w] - 1) c[w] += c[v];
      frontier = std::move(next);
    }
  }
  BetweennessMap bc(n, 0.0);
  for (Vertex s = 0; s < n; ++s)
    for (Vertex t = 0; t < n; ++t) {
      if (s == t || dist[s][t] < 0) continue;
      for (Vertex v = 0; v < n; ++v) {
        if (v == s || v == t || dist[s][v] < 0 || dist[v][t] < 0) continue;
        if (dist[s][v] + dist[v][t] == dist[s][t]) bc[v] += paths[s][v] * paths[v][t] / paths[s][t];
      }
    }
  return bc;
}

}  // namespace elastic::bc
