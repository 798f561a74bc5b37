#pragma once

// Seedable graph families and greedy dominating sets.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "rumor/errors.hpp"
#include "rumor/graph.hpp"
#include "rumor/rng.hpp"

namespace rumor::gen {

inline constexpr std::size_t kRetryBudget = 1000;

inline Graph complete(std::size_t n) {
  if (n < 2) throw InputError("complete graph needs n >= 2");
  std::vector<Edge> e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

inline Graph hypercube(std::size_t d) {
  if (d < 1 || d > 24) throw InputError("hypercube dimension must lie in [1, 24]");
  const std::size_t n = std::size_t{1} << d;
  std::vector<Edge> e;
  for (NodeId u = 0; u < n; ++u)
    for (std::size_t b = 0; b < d; ++b) {
      NodeId v = u ^ (NodeId{1} << b);
      if (u < v) e.emplace_back(u, v);
    }
  return Graph::from_edges(n, e);
}

inline Graph path(std::size_t n) {
  if (n < 2) throw InputError("path needs n >= 2");
  std::vector<Edge> e;
  for (NodeId u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
  return Graph::from_edges(n, e);
}

inline Graph cycle(std::size_t n) {
  if (n < 3) throw InputError("cycle needs n >= 3");
  std::vector<Edge> e;
  for (NodeId u = 0; u < n; ++u) e.emplace_back(u, static_cast<NodeId>((u + 1) % n));
  return Graph::from_edges(n, e);
}

// Center 0 plus `leaves` leaves.
inline Graph star(std::size_t leaves) {
  if (leaves < 1) throw InputError("star needs at least one leaf");
  std::vector<Edge> e;
  for (NodeId v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, e);
}

// Two K_m sharing node 0: nodes 0..m-1 and {0, m..2m-2}.
inline Graph two_cliques_shared_vertex(std::size_t m) {
  if (m < 2) throw InputError("clique size must be >= 2");
  const std::size_t n = 2 * m - 1;
  std::vector<NodeId> a, b{0};
  for (NodeId v = 0; v < m; ++v) a.push_back(v);
  for (auto v = static_cast<NodeId>(m); v < n; ++v) b.push_back(v);
  std::vector<Edge> e;
  for (const auto* c : {&a, &b})
    for (std::size_t i = 0; i < c->size(); ++i)
      for (std::size_t j = i + 1; j < c->size(); ++j) e.emplace_back((*c)[i], (*c)[j]);
  return Graph::from_edges(n, e);
}

// Two K_m on 0..m-1 and m..2m-1 joined by the bridge (m-1, m).
inline Graph dumbbell(std::size_t m) {
  if (m < 2) throw InputError("clique size must be >= 2");
  std::vector<Edge> e;
  for (NodeId off : {NodeId{0}, static_cast<NodeId>(m)})
    for (NodeId i = 0; i < m; ++i)
      for (NodeId j = i + 1; j < m; ++j) e.emplace_back(off + i, off + j);
  e.emplace_back(static_cast<NodeId>(m - 1), static_cast<NodeId>(m));
  return Graph::from_edges(2 * m, e);
}

namespace detail {

inline std::uint64_t edge_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (std::uint64_t{u} << 32) | v;
}

inline bool is_connected(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<NodeId>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
  }
  return count == n;
}

// One pairing-model attempt that rejects individual bad pairs (loops, repeats)
// and restarts only when the remaining points cannot be matched.
inline bool try_pairing(std::size_t n, std::size_t d, CounterStream& rs, std::vector<Edge>& out) {
  std::vector<NodeId> points;
  points.reserve(n * d);
  for (NodeId v = 0; v < n; ++v)
    for (std::size_t k = 0; k < d; ++k) points.push_back(v);
  std::unordered_set<std::uint64_t> used;
  out.clear();
  std::size_t misses = 0;
  while (!points.empty()) {
    const std::size_t r = points.size();
    std::size_t i = rs.below(r);
    std::size_t j = rs.below(r - 1);
    if (j >= i) ++j;
    const NodeId a = points[i], b = points[j];
    if (a != b && !used.count(edge_key(a, b))) {
      used.insert(edge_key(a, b));
      out.emplace_back(std::min(a, b), std::max(a, b));
      if (i < j) std::swap(i, j);
      points[i] = points.back();
      points.pop_back();
      points[j] = points.back();
      points.pop_back();
      misses = 0;
      continue;
    }
    if (++misses < 64) continue;
    bool feasible = false;
    for (std::size_t x = 0; x < r && !feasible; ++x)
      for (std::size_t y = x + 1; y < r && !feasible; ++y)
        feasible = points[x] != points[y] && !used.count(edge_key(points[x], points[y]));
    if (!feasible) return false;
    misses = 0;
  }
  return true;
}

}  // namespace detail

// Delta-regular simple connected graph from the pairing model. Deterministic
// in the seed; fails after kRetryBudget attempts.
inline Graph random_regular(std::size_t n, std::size_t delta, std::uint64_t seed) {
  if (delta < 1 || delta >= n) throw InputError("random regular graph needs 1 <= delta < n");
  if ((n * delta) % 2 != 0) throw InputError("n * delta must be even");
  CounterStream rs(CounterRng(seed).derive(0x7265677572ULL));
  std::vector<Edge> edges;
  for (std::size_t attempt = 0; attempt < kRetryBudget; ++attempt) {
    if (!detail::try_pairing(n, delta, rs, edges)) continue;
    if (!detail::is_connected(n, edges)) continue;
    std::sort(edges.begin(), edges.end());
    return Graph::from_edges(n, edges);
  }
  throw ConstructionError("random regular graph: retry budget exhausted");
}

// ell components, each a random delta-regular graph on c*delta nodes; then
// every node draws one uniform other node and the deduplicated edges are
// added. Degrees end up in [delta + 1, delta + 1 + incoming draws] except
// where a draw repeats an existing edge.
inline Graph clustered_regular(std::size_t ell, std::size_t delta, std::size_t c,
                               std::uint64_t seed) {
  if (ell < 2) throw InputError("clustered graph needs at least 2 components");
  if (c < 2) throw InputError("clustered graph needs c >= 2");
  if (delta < 1) throw InputError("clustered graph needs delta >= 1");
  const std::size_t size = c * delta;
  const std::size_t n = ell * size;
  const CounterRng root(seed);
  for (std::size_t attempt = 0; attempt < kRetryBudget; ++attempt) {
    const CounterRng rng = root.derive(attempt);
    std::vector<Edge> edges;
    std::unordered_set<std::uint64_t> used;
    for (std::size_t k = 0; k < ell; ++k) {
      Graph comp = random_regular(size, delta, rng.bits(1, k));
      const auto off = static_cast<NodeId>(k * size);
      for (auto [u, v] : comp.edges()) {
        edges.emplace_back(off + u, off + v);
        used.insert(detail::edge_key(off + u, off + v));
      }
    }
    for (NodeId u = 0; u < n; ++u) {
      auto v = static_cast<NodeId>(rng.uniform_below(n - 1, 2, u));
      if (v >= u) ++v;
      if (used.insert(detail::edge_key(u, v)).second)
        edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    if (!detail::is_connected(n, edges)) continue;
    std::sort(edges.begin(), edges.end());
    return Graph::from_edges(n, edges);
  }
  throw ConstructionError("clustered regular graph: retry budget exhausted");
}

// G(n, p) conditioned on being connected.
inline Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (n < 2) throw InputError("G(n,p) needs n >= 2");
  if (!(p > 0.0 && p <= 1.0)) throw InputError("edge probability must lie in (0, 1]");
  const CounterRng root(seed);
  for (std::size_t attempt = 0; attempt < kRetryBudget; ++attempt) {
    const CounterRng rng = root.derive(attempt);
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v)
        if (p >= 1.0 || rng.uniform01(u, v) < p) edges.emplace_back(u, v);
    if (detail::is_connected(n, edges)) return Graph::from_edges(n, edges);
  }
  throw ConstructionError("G(n,p): retry budget exhausted before a connected sample");
}

// Greedy max-coverage: repeatedly take the node whose closed neighborhood
// covers the most uncovered nodes, lowest id on ties.
inline NodeSet greedy_dominating_set(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<char> covered(n, 0);
  std::size_t remaining = n;
  NodeSet out(n);
  while (remaining > 0) {
    NodeId best = 0;
    std::size_t best_gain = 0;
    for (NodeId v = 0; v < n; ++v) {
      std::size_t gain = covered[v] ? 0 : 1;
      for (NodeId w : g.neighbors(v)) gain += covered[w] ? 0 : 1;
      if (gain > best_gain) {
        best_gain = gain;
        best = v;
      }
    }
    out.insert(best);
    auto cover = [&](NodeId v) {
      if (!covered[v]) {
        covered[v] = 1;
        --remaining;
      }
    };
    cover(best);
    for (NodeId w : g.neighbors(best)) cover(w);
  }
  return out;
}

}  // namespace rumor::gen
