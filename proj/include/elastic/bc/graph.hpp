#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "elastic/core/error.hpp"
#include "elastic/core/rng.hpp"

namespace elastic::bc {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

struct RmatParams {
  int scale = 10;
  int edge_factor = 8;
  double a = 0.55;
  double b = 0.1;
  double c = 0.1;
  double d = 0.25;
  std::uint64_t seed = 2;
  int tasks = 128;
  bool permute = true;

  std::uint64_t vertices() const { return std::uint64_t{1} << scale; }

  void validate() const {
    require(scale >= 0 && scale <= 30, "scale must be in [0, 30]");
    require(edge_factor >= 0, "edge_factor must be non-negative");
    require(a >= 0 && b >= 0 && c >= 0 && d >= 0, "R-MAT probabilities must be non-negative");
    require(std::abs(a + b + c + d - 1.0) <= 1e-12, "R-MAT probabilities must sum to 1");
    require(tasks >= 1, "task count must be at least 1");
  }

  template <class Archive>
  void serialize(Archive& ar) {
    ar(scale, edge_factor, a, b, c, d, seed, tasks, permute);
  }
};

/// Edge e draws from its own stream so any subset of edges can be regenerated
/// independently.
inline Edge rmat_edge(const RmatParams& p, std::uint64_t e) {
  SplitMix64 rng(mix64(p.seed ^ mix64(e + 0x5bd1e995u)));
  Vertex u = 0, v = 0;
  for (int level = 0; level < p.scale; ++level) {
    const double r = rng.uniform();
    u <<= 1;
    v <<= 1;
    if (r < p.a) {
    } else if (r < p.a + p.b) {
      v |= 1;
    } else if (r < p.a + p.b + p.c) {
      u |= 1;
    } else {
      u |= 1;
      v |= 1;
    }
  }
  return {u, v};
}

inline std::vector<Edge> rmat_generate(const RmatParams& p) {
  p.validate();
  const std::uint64_t m = static_cast<std::uint64_t>(p.edge_factor) * p.vertices();
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t e = 0; e < m; ++e) edges.push_back(rmat_edge(p, e));
  return edges;
}

/// Undirected compressed sparse rows; neighbours of v are
/// adjacency[offsets[v] .. offsets[v+1]), sorted ascending.
struct CsrGraph {
  std::uint32_t n = 0;
  std::vector<std::uint64_t> offsets{0};
  std::vector<Vertex> adjacency;

  std::uint64_t degree(Vertex v) const { return offsets[v + 1] - offsets[v]; }
  std::uint64_t edge_count() const { return adjacency.size() / 2; }

  auto neighbours(Vertex v) const {
    return std::span<const Vertex>(adjacency.data() + offsets[v], degree(v));
  }

  bool operator==(const CsrGraph&) const = default;
};

/// Symmetrizes, drops self-loops and duplicates.
inline CsrGraph compress(const std::vector<Edge>& edges, std::uint32_t n) {
  std::vector<Edge> arcs;
  arcs.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n)
      throw Error(Errc::VertexOutOfRange,
                  "edge (" + std::to_string(u) + "," + std::to_string(v) + ") with N=" + std::to_string(n));
    if (u == v) continue;
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  CsrGraph g;
  g.n = n;
  g.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [u, v] : arcs) ++g.offsets[u + 1];
  std::partial_sum(g.offsets.begin(), g.offsets.end(), g.offsets.begin());
  g.adjacency.reserve(arcs.size());
  for (const auto& arc : arcs) g.adjacency.push_back(arc.second);
  return g;
}

/// Fisher-Yates permutation: pi[v] is the new label of vertex v.
inline std::vector<Vertex> vertex_permutation(std::uint32_t n, std::uint64_t seed) {
  std::vector<Vertex> pi(n);
  std::iota(pi.begin(), pi.end(), Vertex{0});
  SplitMix64 rng(seed);
  for (std::uint32_t i = n; i > 1; --i) std::swap(pi[i - 1], pi[rng.below(i)]);
  return pi;
}

inline CsrGraph relabel(const CsrGraph& g, const std::vector<Vertex>& pi) {
  std::vector<Edge> edges;
  edges.reserve(g.adjacency.size() / 2);
  for (Vertex u = 0; u < g.n; ++u)
    for (const Vertex v : g.neighbours(u))
      if (u < v) edges.emplace_back(pi[u], pi[v]);
  return compress(edges, g.n);
}

inline CsrGraph permute_vertices(const CsrGraph& g, std::uint64_t seed) {
  return relabel(g, vertex_permutation(g.n, seed));
}

/// The graph every task of a run works on: generated, compressed, and (by
/// default) relabelled with a permutation drawn from the run seed.
inline CsrGraph build_graph(const RmatParams& p) {
  auto g = compress(rmat_generate(p), static_cast<std::uint32_t>(p.vertices()));
  if (p.permute) g = permute_vertices(g, derive_seed(p.seed, "permute"));
  return g;
}

}  // namespace elastic::bc
