#pragma once

// Expansion measures: vertex expansion, conductance, boundary expansion h(S)
// and its restriction h_T(S), xi and rho, the regular-graph relations between
// h(S) and the conductance of the boundary, and the degree-class split of the
// boundary used in the one-round growth analysis.
//
// Per-set measures work on any graph. Global minima are exact subset
// enumerations and refuse graphs above a node cap.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rumor/errors.hpp"
#include "rumor/graph.hpp"
#include "rumor/rng.hpp"

namespace rumor {

enum class Method { exact_enumeration, evaluated_on_set, monte_carlo };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::exact_enumeration: return "exact-enumeration";
    case Method::evaluated_on_set: return "evaluated-on-given-set";
    case Method::monte_carlo: return "monte-carlo";
  }
  return "unknown";
}

struct ExpansionReport {
  std::string measure;
  double value = 0.0;
  std::optional<NodeSet> witness;
  Method method = Method::evaluated_on_set;
  std::size_t samples = 0;
  double stderr_estimate = 0.0;
};

struct McEstimate {
  double mean = 0.0;
  double stderr_estimate = 0.0;
  std::size_t samples = 0;
};

inline constexpr std::size_t kDefaultEnumerationCap = 20;

struct EnumerationOptions {
  std::size_t max_nodes = kDefaultEnumerationCap;
};

// ---------------------------------------------------------------------------
// Per-set measures

inline double vertex_expansion_set(const Graph& g, const NodeSet& s) {
  detail::require_proper(g, s, "vertex expansion");
  return static_cast<double>(boundary(g, s).size()) / static_cast<double>(s.size());
}

// cut(S) / vol(S). Accepts any nonempty S, including sets with more than half
// the volume: callers apply it to boundaries as a plain set function.
inline double conductance_set(const Graph& g, const NodeSet& s) {
  detail::require_universe(g, s);
  if (s.empty()) throw InputError("conductance undefined for the empty set");
  std::size_t cut = 0;
  std::size_t vol = 0;
  for (NodeId u : s) {
    vol += g.degree(u);
    for (NodeId v : g.neighbors(u))
      if (!s.contains(v)) ++cut;
  }
  return static_cast<double>(cut) / static_cast<double>(vol);
}

namespace detail {

// h_T(S) * |dS| for T given as a membership predicate over dS.
template <typename InT>
double boundary_expansion_mass(const Graph& g, const NodeSet& closure_set, InT&& in_t) {
  double total = 0.0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (closure_set.contains(v)) continue;
    double miss = 1.0;
    bool touches = false;
    for (NodeId u : g.neighbors(v)) {
      if (in_t(u)) {
        miss *= 1.0 - 1.0 / static_cast<double>(g.degree(u));
        touches = true;
      }
    }
    if (touches) total += 1.0 - miss;
  }
  return total;
}

}  // namespace detail

// h(S): expected fraction of nodes of d(S+) adjacent to a random U ⊆ dS that
// keeps each u with probability 1/deg(u), normalized by |dS|.
inline double boundary_expansion_exact(const Graph& g, const NodeSet& s) {
  detail::require_proper(g, s, "boundary expansion");
  NodeSet bd = boundary(g, s);
  if (bd.empty()) throw InvariantError("proper subset of a connected graph has empty boundary");
  NodeSet plus = s.united(bd);
  double mass = detail::boundary_expansion_mass(g, plus, [&](NodeId u) { return bd.contains(u); });
  return mass / static_cast<double>(bd.size());
}

inline double boundary_expansion_due_to(const Graph& g, const NodeSet& s, const NodeSet& t) {
  detail::require_proper(g, s, "boundary expansion");
  detail::require_universe(g, t);
  NodeSet bd = boundary(g, s);
  if (!t.is_subset_of(bd)) throw InputError("restriction set is not a subset of the boundary");
  if (bd.empty()) throw InvariantError("proper subset of a connected graph has empty boundary");
  NodeSet plus = s.united(bd);
  double mass = detail::boundary_expansion_mass(g, plus, [&](NodeId u) { return t.contains(u); });
  return mass / static_cast<double>(bd.size());
}

// Monte-Carlo estimate of h(S) by sampling U directly. Deterministic in
// (graph, set, samples, seed).
inline McEstimate boundary_expansion_mc(const Graph& g, const NodeSet& s, std::size_t samples,
                                        std::uint64_t seed) {
  detail::require_proper(g, s, "boundary expansion");
  if (samples == 0) throw InputError("need at least one sample");
  NodeSet bd = boundary(g, s);
  NodeSet plus = s.united(bd);
  std::vector<double> keep(bd.size());
  for (std::size_t i = 0; i < bd.size(); ++i)
    keep[i] = 1.0 / static_cast<double>(g.degree(bd.members()[i]));

  const CounterRng rng(seed);
  std::vector<std::uint64_t> stamp(g.num_nodes(), 0);
  const double norm = static_cast<double>(bd.size());
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    std::size_t hit = 0;
    const std::uint64_t mark = k + 1;
    for (std::size_t i = 0; i < bd.size(); ++i) {
      NodeId u = bd.members()[i];
      if (rng.uniform01(k, u) >= keep[i]) continue;
      for (NodeId v : g.neighbors(u)) {
        if (plus.contains(v) || stamp[v] == mark) continue;
        stamp[v] = mark;
        ++hit;
      }
    }
    double x = static_cast<double>(hit) / norm;
    sum += x;
    sum_sq += x * x;
  }
  const double n = static_cast<double>(samples);
  McEstimate est;
  est.samples = samples;
  est.mean = sum / n;
  if (samples > 1) {
    double var = std::max(0.0, (sum_sq - n * est.mean * est.mean) / (n - 1.0));
    est.stderr_estimate = std::sqrt(var / n);
  }
  return est;
}

// xi(S) = alpha(S) * phi(dS)
inline double xi_set(const Graph& g, const NodeSet& s) {
  detail::require_proper(g, s, "xi");
  NodeSet bd = boundary(g, s);
  return static_cast<double>(bd.size()) / static_cast<double>(s.size()) * conductance_set(g, bd);
}

// The 1/log term uses base 2.
inline double rho_set(const Graph& g, const NodeSet& s) {
  if (g.max_degree() < 2) throw InputError("rho needs max degree >= 2");
  detail::require_proper(g, s, "rho");
  NodeSet bd = boundary(g, s);
  const double alpha = static_cast<double>(bd.size()) / static_cast<double>(s.size());
  return alpha * (conductance_set(g, bd) + 1.0 / std::log2(static_cast<double>(g.max_degree())));
}

struct HSandwich {
  double lower = 0.0;
  double h = 0.0;
  double upper = 0.0;
  bool holds = true;
};

// On a regular graph, with X = E(dS, d(S+)) / (Delta |dS|): X/2 <= h(S) <= X.
inline HSandwich regular_h_sandwich(const Graph& g, const NodeSet& s) {
  if (!g.is_regular()) throw InputError("h sandwich requires a regular graph");
  detail::require_proper(g, s, "h sandwich");
  NodeSet bd = boundary(g, s);
  NodeSet plus = s.united(bd);
  NodeSet outer = boundary(g, plus);
  const double cross = static_cast<double>(edges_between(g, bd, outer));
  const double denom = static_cast<double>(g.max_degree()) * static_cast<double>(bd.size());
  HSandwich out;
  out.lower = cross / (2.0 * denom);
  out.upper = cross / denom;
  out.h = boundary_expansion_exact(g, s);
  constexpr double tol = 1e-12;
  out.holds = out.lower <= out.h + tol && out.h <= out.upper + tol;
  return out;
}

// s = (phi(dS) - E(dS, S)/(Delta |dS|)) / h(S), contractually in [1, 2].
// Empty when h(S) = 0.
inline std::optional<double> regular_s_factor(const Graph& g, const NodeSet& s) {
  if (!g.is_regular()) throw InputError("s factor requires a regular graph");
  detail::require_proper(g, s, "s factor");
  const double h = boundary_expansion_exact(g, s);
  if (h <= 0.0) return std::nullopt;
  NodeSet bd = boundary(g, s);
  const double denom = static_cast<double>(g.max_degree()) * static_cast<double>(bd.size());
  const double inward = static_cast<double>(edges_between(g, bd, s)) / denom;
  return (conductance_set(g, bd) - inward) / h;
}

struct DegreeClassDecomposition {
  double eps_h = 0.0;
  double c = 0.0;
  double low_threshold = 0.0;   // c * |dS|
  double high_threshold = 0.0;  // max{|S|, c * |dS|}
  NodeSet t1, t2, t3;
  double h = 0.0;
  double h_t1 = 0.0, h_t2 = 0.0, h_t3 = 0.0;
  // Lowest class index i in {1,2,3} with h_Ti >= eps_h / 3, if any.
  std::optional<int> dominant_class;
  // Case (b) log factor log2(2 min{|S|, Delta} / max{c|dS|, delta}).
  double case_b_l = 0.0;
  // Case (c) size parameter max{|S|, c|dS|}.
  double case_c_k = 0.0;
};

// Thresholds are applied as given; for small |dS| the low threshold c|dS| is
// below 1 and T1 comes out empty.
inline DegreeClassDecomposition degree_class_decompose(const Graph& g, const NodeSet& s,
                                                       double eps_h) {
  if (!(eps_h > 0.0 && eps_h < 1.0)) throw InputError("eps_h must lie in (0, 1)");
  detail::require_proper(g, s, "degree class decomposition");
  DegreeClassDecomposition d;
  NodeSet bd = boundary(g, s);
  d.eps_h = eps_h;
  d.c = (eps_h / 3.0) * (eps_h / 3.0) / 8.0;
  d.low_threshold = d.c * static_cast<double>(bd.size());
  d.high_threshold = std::max(static_cast<double>(s.size()), d.low_threshold);
  d.t1 = d.t2 = d.t3 = NodeSet(g.num_nodes());
  for (NodeId u : bd) {
    const double deg = static_cast<double>(g.degree(u));
    if (deg <= d.low_threshold)
      d.t1.append_sorted(u);
    else if (deg <= static_cast<double>(s.size()))
      d.t2.append_sorted(u);
    else
      d.t3.append_sorted(u);
  }
  d.h = boundary_expansion_exact(g, s);
  d.h_t1 = boundary_expansion_due_to(g, s, d.t1);
  d.h_t2 = boundary_expansion_due_to(g, s, d.t2);
  d.h_t3 = boundary_expansion_due_to(g, s, d.t3);
  const double third = eps_h / 3.0;
  if (d.h_t1 >= third)
    d.dominant_class = 1;
  else if (d.h_t2 >= third)
    d.dominant_class = 2;
  else if (d.h_t3 >= third)
    d.dominant_class = 3;
  const double num = 2.0 * std::min(static_cast<double>(s.size()),
                                    static_cast<double>(g.max_degree()));
  const double den = std::max(d.low_threshold, static_cast<double>(g.min_degree()));
  d.case_b_l = std::log2(num / den);
  d.case_c_k = d.high_threshold;
  return d;
}

// ---------------------------------------------------------------------------
// Global minima by subset enumeration

namespace detail {

// Exact nonnegative fraction; comparisons cross-multiply in 128 bits.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator<(const Ratio& a, const Ratio& b) {
    return static_cast<unsigned __int128>(a.num) * b.den <
           static_cast<unsigned __int128>(b.num) * a.den;
  }
  friend bool operator==(const Ratio& a, const Ratio& b) {
    return static_cast<unsigned __int128>(a.num) * b.den ==
           static_cast<unsigned __int128>(b.num) * a.den;
  }
};

// Is the member list of mask a lexicographically smaller than that of b?
inline bool lex_members_less(std::uint64_t a, std::uint64_t b) {
  while (a && b) {
    const int la = std::countr_zero(a);
    const int lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return !a && b;
}

inline NodeSet mask_to_set(std::size_t n, std::uint64_t mask) {
  NodeSet s(n);
  for (NodeId v = 0; v < n; ++v)
    if (mask >> v & 1U) s.append_sorted(v);
  return s;
}

// Incremental state while walking all subsets in Gray-code order.
struct SubsetState {
  std::uint64_t set = 0;
  std::uint64_t bd = 0;  // boundary mask
  std::size_t size = 0;
  std::size_t cut = 0;
  std::size_t vol = 0;
};

class SubsetWalker {
 public:
  explicit SubsetWalker(const Graph& g, const EnumerationOptions& opt) : g_(g) {
    const std::size_t n = g.num_nodes();
    if (n > opt.max_nodes)
      throw CapabilityError("exact enumeration refused: n = " + std::to_string(n) +
                            " exceeds the cap of " + std::to_string(opt.max_nodes) +
                            "; evaluate the measure on explicit sets instead");
    if (n > 62) throw CapabilityError("exact enumeration supports at most 62 nodes");
    nbr_.assign(n, 0);
    for (NodeId v = 0; v < n; ++v)
      for (NodeId u : g.neighbors(v)) nbr_[v] |= std::uint64_t{1} << u;
    count_.assign(n, 0);
  }

  std::uint64_t neighbor_mask(NodeId v) const { return nbr_[v]; }

  // Calls visit(state) for every nonempty proper subset.
  template <typename Visit>
  void walk(Visit&& visit) {
    const std::size_t n = g_.num_nodes();
    const std::uint64_t total = std::uint64_t{1} << n;
    SubsetState st;
    for (std::uint64_t i = 1; i < total; ++i) {
      toggle(st, static_cast<NodeId>(std::countr_zero(i)));
      if (st.size < n) visit(static_cast<const SubsetState&>(st));
    }
  }

 private:
  void toggle(SubsetState& st, NodeId u) {
    const std::uint64_t bit = std::uint64_t{1} << u;
    const std::size_t deg = g_.degree(u);
    if (!(st.set & bit)) {
      st.set |= bit;
      st.bd &= ~bit;
      ++st.size;
      st.vol += deg;
      st.cut = st.cut + deg - 2 * count_[u];
      for (NodeId w : g_.neighbors(u))
        if (++count_[w] == 1 && !(st.set >> w & 1U)) st.bd |= std::uint64_t{1} << w;
    } else {
      st.set &= ~bit;
      --st.size;
      st.vol -= deg;
      st.cut = st.cut + 2 * count_[u] - deg;
      for (NodeId w : g_.neighbors(u))
        if (--count_[w] == 0 && !(st.set >> w & 1U)) st.bd &= ~(std::uint64_t{1} << w);
      if (count_[u] > 0) st.bd |= bit;
    }
  }

  const Graph& g_;
  std::vector<std::uint64_t> nbr_;
  std::vector<std::size_t> count_;
};

template <typename Key>
struct Best {
  bool found = false;
  Key key{};
  std::uint64_t mask = 0;

  template <typename Less>
  void offer(const Key& k, std::uint64_t m, Less&& less) {
    if (!found || less(k, key) || (!less(key, k) && lex_members_less(m, mask))) {
      found = true;
      key = k;
      mask = m;
    }
  }
};

// cut and volume of the boundary set, from masks.
inline std::pair<std::size_t, std::size_t> boundary_cut_volume(const Graph& g,
                                                               const SubsetWalker& w,
                                                               std::uint64_t bd) {
  std::size_t cut = 0, vol = 0;
  for (std::uint64_t m = bd; m; m &= m - 1) {
    const NodeId v = static_cast<NodeId>(std::countr_zero(m));
    vol += g.degree(v);
    cut += static_cast<std::size_t>(std::popcount(w.neighbor_mask(v) & ~bd));
  }
  return {cut, vol};
}

inline ExpansionReport make_global_report(const Graph& g, std::string name, double value,
                                          std::uint64_t mask) {
  ExpansionReport r;
  r.measure = std::move(name);
  r.value = value;
  r.witness = mask_to_set(g.num_nodes(), mask);
  r.method = Method::exact_enumeration;
  return r;
}

}  // namespace detail

// alpha(G) = min |dS|/|S| over 0 < |S| <= n/2.
inline ExpansionReport vertex_expansion_graph(const Graph& g, EnumerationOptions opt = {}) {
  detail::SubsetWalker walker(g, opt);
  const std::size_t n = g.num_nodes();
  detail::Best<detail::Ratio> best;
  walker.walk([&](const detail::SubsetState& st) {
    if (2 * st.size > n) return;
    best.offer({static_cast<std::uint64_t>(std::popcount(st.bd)), st.size}, st.set,
               std::less<>{});
  });
  return detail::make_global_report(g, "alpha", best.key.value(), best.mask);
}

// phi(G) = min cut(S)/vol(S) over 0 < vol(S) <= vol(V)/2.
inline ExpansionReport conductance_graph(const Graph& g, EnumerationOptions opt = {}) {
  detail::SubsetWalker walker(g, opt);
  const std::size_t total_vol = 2 * g.num_edges();
  detail::Best<detail::Ratio> best;
  walker.walk([&](const detail::SubsetState& st) {
    if (2 * st.vol > total_vol) return;
    best.offer({st.cut, st.vol}, st.set, std::less<>{});
  });
  return detail::make_global_report(g, "phi", best.key.value(), best.mask);
}

// xi(G) = min alpha(S) * phi(dS) over 0 < |S| <= n/2.
inline ExpansionReport xi_graph(const Graph& g, EnumerationOptions opt = {}) {
  detail::SubsetWalker walker(g, opt);
  const std::size_t n = g.num_nodes();
  detail::Best<detail::Ratio> best;
  walker.walk([&](const detail::SubsetState& st) {
    if (2 * st.size > n) return;
    auto [cut, vol] = detail::boundary_cut_volume(g, walker, st.bd);
    const auto b = static_cast<std::uint64_t>(std::popcount(st.bd));
    best.offer({b * cut, st.size * vol}, st.set, std::less<>{});
  });
  return detail::make_global_report(g, "xi", best.key.value(), best.mask);
}

// rho(G) = min alpha(S) * (phi(dS) + 1/log2 Delta) over 0 < |S| <= n/2.
// Irrational, so ties are resolved within a relative 1e-12.
inline ExpansionReport rho_graph(const Graph& g, EnumerationOptions opt = {}) {
  if (g.max_degree() < 2) throw InputError("rho needs max degree >= 2");
  detail::SubsetWalker walker(g, opt);
  const std::size_t n = g.num_nodes();
  const double inv_log = 1.0 / std::log2(static_cast<double>(g.max_degree()));
  detail::Best<double> best;
  auto less = [](double a, double b) { return a < b - 1e-12 * std::max(1.0, std::abs(b)); };
  walker.walk([&](const detail::SubsetState& st) {
    if (2 * st.size > n) return;
    auto [cut, vol] = detail::boundary_cut_volume(g, walker, st.bd);
    const double alpha = static_cast<double>(std::popcount(st.bd)) / static_cast<double>(st.size);
    best.offer(alpha * (static_cast<double>(cut) / static_cast<double>(vol) + inv_log), st.set,
               less);
  });
  return detail::make_global_report(g, "rho", best.key, best.mask);
}

struct AlphaPhiSandwich {
  double alpha = 0.0;
  double phi = 0.0;
  std::size_t min_degree = 0;
  std::size_t max_degree = 0;
  bool holds = false;
};

// (delta/Delta) phi(G) <= alpha(G) <= Delta phi(G)
inline AlphaPhiSandwich sandwich_alpha_phi(const Graph& g, EnumerationOptions opt = {}) {
  AlphaPhiSandwich out;
  out.alpha = vertex_expansion_graph(g, opt).value;
  out.phi = conductance_graph(g, opt).value;
  out.min_degree = g.min_degree();
  out.max_degree = g.max_degree();
  const double lo = static_cast<double>(out.min_degree) / static_cast<double>(out.max_degree) * out.phi;
  const double hi = static_cast<double>(out.max_degree) * out.phi;
  constexpr double tol = 1e-12;
  out.holds = lo <= out.alpha + tol && out.alpha <= hi + tol;
  return out;
}

// Per-set report helpers for the CLI.
inline ExpansionReport evaluated(std::string measure, double value, const NodeSet& s) {
  ExpansionReport r;
  r.measure = std::move(measure);
  r.value = value;
  r.witness = s;
  r.method = Method::evaluated_on_set;
  return r;
}

}  // namespace rumor
