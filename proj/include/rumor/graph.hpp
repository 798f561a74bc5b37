#pragma once

// Immutable simple undirected connected graph plus the set algebra
// (boundary, closure, cut, volume) every measure and protocol is built on.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rumor/errors.hpp"

namespace rumor {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

// Subset of the node universe {0..n-1}. Members are kept sorted; membership is
// an O(1) flag lookup.
class NodeSet {
 public:
  NodeSet() = default;

  explicit NodeSet(std::size_t universe) : flags_(universe, 0) {}

  NodeSet(std::size_t universe, std::span<const NodeId> ids) : flags_(universe, 0) {
    for (NodeId v : ids) insert(v);
  }

  NodeSet(std::size_t universe, std::initializer_list<NodeId> ids) : flags_(universe, 0) {
    for (NodeId v : ids) insert(v);
  }

  static NodeSet full(std::size_t universe) {
    NodeSet s(universe);
    s.members_.resize(universe);
    std::iota(s.members_.begin(), s.members_.end(), NodeId{0});
    std::fill(s.flags_.begin(), s.flags_.end(), 1);
    return s;
  }

  std::size_t universe() const noexcept { return flags_.size(); }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool is_full() const noexcept { return members_.size() == flags_.size(); }

  bool contains(NodeId v) const noexcept { return v < flags_.size() && flags_[v] != 0; }

  // Sorted ascending.
  const std::vector<NodeId>& members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  // Returns false if already present.
  bool insert(NodeId v) {
    check_id(v);
    if (flags_[v]) return false;
    flags_[v] = 1;
    members_.insert(std::lower_bound(members_.begin(), members_.end(), v), v);
    return true;
  }

  bool erase(NodeId v) {
    check_id(v);
    if (!flags_[v]) return false;
    flags_[v] = 0;
    members_.erase(std::lower_bound(members_.begin(), members_.end(), v));
    return true;
  }

  bool is_subset_of(const NodeSet& other) const {
    return std::all_of(members_.begin(), members_.end(),
                       [&](NodeId v) { return other.contains(v); });
  }

  NodeSet complement() const {
    NodeSet out(universe());
    for (NodeId v = 0; v < universe(); ++v)
      if (!flags_[v]) out.append_sorted(v);
    return out;
  }

  NodeSet united(const NodeSet& other) const {
    NodeSet out(universe());
    std::vector<NodeId> merged;
    std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(merged));
    for (NodeId v : merged) out.append_sorted(v);
    return out;
  }

  NodeSet intersected(const NodeSet& other) const {
    NodeSet out(universe());
    for (NodeId v : members_)
      if (other.contains(v)) out.append_sorted(v);
    return out;
  }

  NodeSet minus(const NodeSet& other) const {
    NodeSet out(universe());
    for (NodeId v : members_)
      if (!other.contains(v)) out.append_sorted(v);
    return out;
  }

  friend bool operator==(const NodeSet& a, const NodeSet& b) {
    return a.universe() == b.universe() && a.members_ == b.members_;
  }

  // Ids must arrive in strictly increasing order.
  void append_sorted(NodeId v) {
    flags_[v] = 1;
    members_.push_back(v);
  }

 private:
  void check_id(NodeId v) const {
    if (v >= flags_.size())
      throw InputError("node id " + std::to_string(v) + " out of range [0, " +
                       std::to_string(flags_.size()) + ")");
  }

  std::vector<char> flags_;
  std::vector<NodeId> members_;
};

class Graph {
 public:
  Graph() = default;

  // Strict constructor: rejects self-loops, duplicate edges, isolated nodes and
  // disconnected input.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges) {
    if (n < 2) throw InputError("graph needs at least 2 nodes");
    std::vector<std::vector<NodeId>> adj(n);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n)
        throw InputError("edge endpoint out of range: " + std::to_string(u) + " " +
                         std::to_string(v));
      if (u == v) throw InputError("self-loop at node " + std::to_string(u));
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    for (NodeId v = 0; v < n; ++v) {
      auto& a = adj[v];
      std::sort(a.begin(), a.end());
      if (std::adjacent_find(a.begin(), a.end()) != a.end())
        throw InputError("duplicate edge at node " + std::to_string(v));
    }
    Graph g(std::move(adj));
    if (!g.connected()) throw StructuralError("graph is disconnected");
    return g;
  }

  static Graph from_edges(std::size_t n, std::initializer_list<Edge> edges) {
    std::vector<Edge> e(edges);
    return from_edges(n, std::span<const Edge>(e));
  }

  std::size_t num_nodes() const noexcept { return adj_.size(); }
  std::size_t num_edges() const noexcept { return num_edges_; }

  std::span<const NodeId> neighbors(NodeId v) const { return adj_.at(v); }
  std::size_t degree(NodeId v) const { return adj_.at(v).size(); }
  std::size_t max_degree() const noexcept { return max_degree_; }
  std::size_t min_degree() const noexcept { return min_degree_; }

  bool adjacent(NodeId u, NodeId v) const {
    const auto& a = adj_.at(u);
    return std::binary_search(a.begin(), a.end(), v);
  }

  bool is_regular() const noexcept { return max_degree_ == min_degree_; }

  // Canonical edge list: u < v, sorted lexicographically.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (NodeId u = 0; u < adj_.size(); ++u)
      for (NodeId v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  explicit Graph(std::vector<std::vector<NodeId>> adj) : adj_(std::move(adj)) {
    min_degree_ = std::numeric_limits<std::size_t>::max();
    std::size_t endpoints = 0;
    for (const auto& a : adj_) {
      max_degree_ = std::max(max_degree_, a.size());
      min_degree_ = std::min(min_degree_, a.size());
      endpoints += a.size();
    }
    num_edges_ = endpoints / 2;
  }

  bool connected() const {
    std::vector<char> seen(adj_.size(), 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : adj_[u])
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
    }
    return count == adj_.size();
  }

  std::vector<std::vector<NodeId>> adj_;
  std::size_t num_edges_ = 0;
  std::size_t max_degree_ = 0;
  std::size_t min_degree_ = 0;
};

namespace detail {

inline void require_universe(const Graph& g, const NodeSet& s) {
  if (s.universe() != g.num_nodes())
    throw InputError("node set universe " + std::to_string(s.universe()) +
                     " does not match graph size " + std::to_string(g.num_nodes()));
}

inline void require_proper(const Graph& g, const NodeSet& s, const char* what) {
  require_universe(g, s);
  if (s.empty()) throw InputError(std::string(what) + " undefined for the empty set");
  if (s.is_full()) throw InputError(std::string(what) + " undefined for the full node set");
}

}  // namespace detail

// { v not in s : v has a neighbor in s }
inline NodeSet boundary(const Graph& g, const NodeSet& s) {
  detail::require_universe(g, s);
  NodeSet out(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (s.contains(v)) continue;
    for (NodeId u : g.neighbors(v))
      if (s.contains(u)) {
        out.append_sorted(v);
        break;
      }
  }
  return out;
}

inline NodeSet closure(const Graph& g, const NodeSet& s) { return s.united(boundary(g, s)); }

// Number of edges with exactly one endpoint in s.
inline std::size_t cut_size(const Graph& g, const NodeSet& s) {
  detail::require_proper(g, s, "cut size");
  std::size_t cut = 0;
  for (NodeId u : s)
    for (NodeId v : g.neighbors(u))
      if (!s.contains(v)) ++cut;
  return cut;
}

// Number of edges between a and b; an edge inside a∩b counts once per orientation.
inline std::size_t edges_between(const Graph& g, const NodeSet& a, const NodeSet& b) {
  detail::require_universe(g, a);
  detail::require_universe(g, b);
  std::size_t count = 0;
  for (NodeId u : a)
    for (NodeId v : g.neighbors(u))
      if (b.contains(v)) ++count;
  return count;
}

inline std::size_t volume(const Graph& g, const NodeSet& s) {
  detail::require_universe(g, s);
  std::size_t vol = 0;
  for (NodeId v : s) vol += g.degree(v);
  return vol;
}

inline bool is_dominating(const Graph& g, const NodeSet& s) {
  return closure(g, s).is_full();
}

// BFS distances from src; unreachable nodes get max().
inline std::vector<std::size_t> bfs_distances(const Graph& g, NodeId src) {
  std::vector<std::size_t> dist(g.num_nodes(), std::numeric_limits<std::size_t>::max());
  std::queue<NodeId> q;
  dist.at(src) = 0;
  q.push(src);
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop();
    for (NodeId v : g.neighbors(u))
      if (dist[v] == std::numeric_limits<std::size_t>::max()) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
  }
  return dist;
}

inline std::size_t diameter(const Graph& g) {
  std::size_t diam = 0;
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    for (std::size_t d : bfs_distances(g, s)) {
      if (d == std::numeric_limits<std::size_t>::max())
        throw StructuralError("diameter undefined: graph is disconnected");
      diam = std::max(diam, d);
    }
  }
  return diam;
}

// Sum of 1/deg(v) over s.
inline double harmonic_mass(const Graph& g, const NodeSet& s) {
  detail::require_universe(g, s);
  double mass = 0.0;
  for (NodeId v : s) mass += 1.0 / static_cast<double>(g.degree(v));
  return mass;
}

}  // namespace rumor
