#pragma once

// Synchronous rumor spreading: PUSH, PULL, PUSH-PULL and the restricted
// active/passive process, with per-round instrumentation.
//
// Draw contract: in round r of trial t, node v draws neighbor index
// CounterRng(seed).uniform_below(deg(v), t, r, v). Every variant uses the same
// draw for the same (t, r, v), so runs of different variants with equal seeds
// are coupled.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "rumor/errors.hpp"
#include "rumor/expansion.hpp"
#include "rumor/graph.hpp"
#include "rumor/participating.hpp"
#include "rumor/rng.hpp"

namespace rumor {

enum class Variant { push, pull, pushpull };

inline const char* to_string(Variant v) {
  switch (v) {
    case Variant::push: return "push";
    case Variant::pull: return "pull";
    case Variant::pushpull: return "pushpull";
  }
  return "unknown";
}

inline Variant parse_variant(const std::string& name) {
  if (name == "push") return Variant::push;
  if (name == "pull") return Variant::pull;
  if (name == "pushpull" || name == "push-pull") return Variant::pushpull;
  throw InputError("unknown protocol variant '" + name + "'");
}

// 64 * ceil(log2 n)
inline std::size_t default_max_rounds(std::size_t n) {
  const auto lg = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(n, 2)))));
  return 64 * lg;
}

struct ProtocolConfig {
  Variant variant = Variant::pushpull;
  NodeSet initial_informed;
  std::size_t max_rounds = 0;  // 0 selects default_max_rounds(n)
  std::uint64_t seed = 0;
  bool record_full_sets = false;
  std::uint64_t trial = 0;
};

struct RoundRecord {
  std::size_t round = 0;
  std::size_t informed = 0;
  std::size_t boundary = 0;
  std::size_t closure = 0;
  double psi = 0.0;
  double harmonic_mass = 0.0;
  std::optional<NodeSet> informed_set;
};

struct SpreadTrace {
  std::size_t num_nodes = 0;
  std::vector<RoundRecord> rounds;
  std::optional<std::size_t> t_half;
  std::optional<std::size_t> t_all;
  bool completed = false;
  // Restricted process only: first round a node of S is informed.
  std::optional<std::size_t> t_hit_target;
};

// Informed set with an incrementally maintained closure I+.
class SpreadState {
 public:
  SpreadState(const Graph& g, const NodeSet& initial)
      : g_(&g), informed_(g.num_nodes(), 0), in_closure_(g.num_nodes(), 0) {
    detail::require_universe(g, initial);
    if (initial.empty()) throw InputError("initial informed set must be nonempty");
    for (NodeId v : initial) inform(v);
  }

  bool informed(NodeId v) const { return informed_[v] != 0; }
  bool in_closure(NodeId v) const { return in_closure_[v] != 0; }
  std::size_t informed_count() const { return list_.size(); }
  std::size_t closure_count() const { return closure_count_; }
  double harmonic_mass() const { return harmonic_; }
  const std::vector<NodeId>& informed_list() const { return list_; }
  bool all_informed() const { return list_.size() == informed_.size(); }

  void inform(NodeId v) {
    if (informed_[v]) return;
    informed_[v] = 1;
    list_.push_back(v);
    harmonic_ += 1.0 / static_cast<double>(g_->degree(v));
    mark(v);
    for (NodeId w : g_->neighbors(v)) mark(w);
  }

  NodeSet as_set() const {
    NodeSet s(informed_.size());
    for (NodeId v = 0; v < informed_.size(); ++v)
      if (informed_[v]) s.append_sorted(v);
    return s;
  }

  RoundRecord record(std::size_t round, bool with_set) const {
    RoundRecord r;
    r.round = round;
    r.informed = informed_count();
    r.closure = closure_count_;
    r.boundary = closure_count_ - r.informed;
    r.psi = (static_cast<double>(r.informed) + static_cast<double>(r.closure)) / 2.0;
    r.harmonic_mass = harmonic_;
    if (with_set) r.informed_set = as_set();
    return r;
  }

 private:
  void mark(NodeId v) {
    if (!in_closure_[v]) {
      in_closure_[v] = 1;
      ++closure_count_;
    }
  }

  const Graph* g_;
  std::vector<char> informed_;
  std::vector<char> in_closure_;
  std::vector<NodeId> list_;
  std::size_t closure_count_ = 0;
  double harmonic_ = 0.0;
};

namespace detail {

inline NodeId draw_neighbor(const Graph& g, const CounterRng& rng, std::uint64_t trial,
                            std::uint64_t round, NodeId v) {
  auto nbrs = g.neighbors(v);
  return nbrs[rng.uniform_below(nbrs.size(), trial, round, v)];
}

// Nodes newly informed by one round; reads only the round-start state.
inline std::vector<NodeId> round_arrivals(const Graph& g, const SpreadState& st, Variant variant,
                                          const CounterRng& rng, std::uint64_t trial,
                                          std::uint64_t round) {
  std::vector<NodeId> fresh;
  const auto n = static_cast<NodeId>(g.num_nodes());
  switch (variant) {
    case Variant::push:
      for (NodeId u : st.informed_list()) {
        NodeId w = draw_neighbor(g, rng, trial, round, u);
        if (!st.informed(w)) fresh.push_back(w);
      }
      break;
    case Variant::pull:
      for (NodeId u = 0; u < n; ++u) {
        if (st.informed(u) || !st.in_closure(u)) continue;  // no informed neighbor: pull fails
        if (st.informed(draw_neighbor(g, rng, trial, round, u))) fresh.push_back(u);
      }
      break;
    case Variant::pushpull:
      for (NodeId u = 0; u < n; ++u) {
        if (!st.in_closure(u)) continue;  // uninformed-to-uninformed contacts are no-ops
        NodeId w = draw_neighbor(g, rng, trial, round, u);
        if (st.informed(u)) {
          if (!st.informed(w)) fresh.push_back(w);
        } else if (st.informed(w)) {
          fresh.push_back(u);
        }
      }
      break;
  }
  return fresh;
}

}  // namespace detail

// One synchronous round from `informed`; returns the new informed set.
inline NodeSet round(const Graph& g, const NodeSet& informed, Variant variant,
                     const CounterRng& rng, std::uint64_t trial = 0, std::uint64_t round_index = 1) {
  SpreadState st(g, informed);
  for (NodeId v : detail::round_arrivals(g, st, variant, rng, trial, round_index)) st.inform(v);
  return st.as_set();
}

inline SpreadTrace run(const Graph& g, const ProtocolConfig& cfg) {
  SpreadState st(g, cfg.initial_informed);
  const std::size_t n = g.num_nodes();
  const std::size_t max_rounds = cfg.max_rounds ? cfg.max_rounds : default_max_rounds(n);
  const CounterRng rng(cfg.seed);
  SpreadTrace tr;
  tr.num_nodes = n;
  auto note = [&](std::size_t t) {
    tr.rounds.push_back(st.record(t, cfg.record_full_sets));
    if (!tr.t_half && st.informed_count() >= n / 2 + 1) tr.t_half = t;
    if (!tr.t_all && st.all_informed()) tr.t_all = t;
  };
  note(0);
  for (std::size_t t = 1; !st.all_informed() && t <= max_rounds; ++t) {
    for (NodeId v : detail::round_arrivals(g, st, cfg.variant, rng, cfg.trial, t)) st.inform(v);
    note(t);
  }
  tr.completed = st.all_informed();
  return tr;
}

// Rounds until a rumor starting at `from` reaches some node of `to`; empty if
// max_rounds pass first. Zero when the sets intersect.
inline std::optional<std::size_t> first_arrival(const Graph& g, const NodeSet& from,
                                                const NodeSet& to, Variant variant,
                                                std::uint64_t seed, std::uint64_t trial,
                                                std::size_t max_rounds) {
  detail::require_universe(g, to);
  SpreadState st(g, from);
  auto hit = [&] {
    return std::any_of(to.begin(), to.end(), [&](NodeId v) { return st.informed(v); });
  };
  if (hit()) return 0;
  const CounterRng rng(seed);
  for (std::size_t t = 1; t <= max_rounds; ++t) {
    for (NodeId v : detail::round_arrivals(g, st, variant, rng, trial, t)) st.inform(v);
    if (hit()) return t;
  }
  return std::nullopt;
}

// Restricted process on participating set P with active set A: each active
// node draws a neighbor in the full graph and the contact happens only if that
// neighbor participates; the contact carries the rumor either way. Passive
// nodes never draw. Runs until all of P is informed or max_rounds.
inline SpreadTrace run_restricted(const Graph& g, const NodeSet& s, NodeId origin,
                                  const ProtocolConfig& cfg, const ParticipatingResult& part) {
  detail::require_proper(g, s, "restricted process");
  const NodeSet bd = boundary(g, s);
  if (!bd.contains(origin) || !part.participating.contains(origin))
    throw InputError("origin must lie in the participating part of the boundary");
  const std::size_t n = g.num_nodes();
  const std::size_t max_rounds = cfg.max_rounds ? cfg.max_rounds : default_max_rounds(n);
  const CounterRng rng(cfg.seed);

  SpreadState st(g, NodeSet(n, {origin}));
  SpreadTrace tr;
  tr.num_nodes = n;
  const std::size_t target = part.participating.size();
  auto note = [&](std::size_t t) {
    tr.rounds.push_back(st.record(t, cfg.record_full_sets));
    if (!tr.t_half && st.informed_count() >= n / 2 + 1) tr.t_half = t;
    if (!tr.t_all && st.informed_count() == target) tr.t_all = t;
    if (!tr.t_hit_target &&
        std::any_of(s.begin(), s.end(), [&](NodeId v) { return st.informed(v); }))
      tr.t_hit_target = t;
  };
  note(0);
  for (std::size_t t = 1; st.informed_count() < target && t <= max_rounds; ++t) {
    std::vector<NodeId> fresh;
    for (NodeId u : part.active) {
      NodeId w = detail::draw_neighbor(g, rng, cfg.trial, t, u);
      if (!part.participating.contains(w)) continue;
      if (st.informed(u) && !st.informed(w))
        fresh.push_back(w);
      else if (!st.informed(u) && st.informed(w))
        fresh.push_back(u);
    }
    for (NodeId v : fresh) st.inform(v);
    note(t);
  }
  tr.completed = st.informed_count() == target;
  return tr;
}

// ---------------------------------------------------------------------------
// Monte-Carlo aggregation

struct TrialOutcome {
  std::size_t trial = 0;
  std::optional<std::size_t> t_half;
  std::optional<std::size_t> t_all;
  bool completed = false;
};

// Linear-interpolation quantile of sorted data (R type 7).
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw InputError("quantile of empty sample");
  if (sorted.size() == 1) return sorted.front();
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double a = sorted[lo], b = sorted[hi];
  if (std::isinf(a) || std::isinf(b)) return pos == static_cast<double>(lo) ? a : b;
  return a + (pos - static_cast<double>(lo)) * (b - a);
}

struct MonteCarloSummary {
  std::vector<TrialOutcome> trials;
  std::vector<SpreadTrace> traces;  // filled only when requested
  std::size_t completed = 0;
  double mean_t_all = 0.0;  // over completed trials
  // Incomplete trials count as +infinity in quantiles.
  std::vector<double> sorted_t_all;

  double quantile(double q) const { return quantile_sorted(sorted_t_all, q); }
  double median() const { return quantile(0.5); }
};

struct MonteCarloOptions {
  bool keep_traces = false;
  unsigned threads = 0;  // 0 = hardware concurrency
};

// Runs trials 0..trials-1 with cfg.trial replaced by the trial index. Results
// are stored by trial index, so the summary does not depend on scheduling.
inline MonteCarloSummary monte_carlo(const Graph& g, const ProtocolConfig& cfg, std::size_t trials,
                                     MonteCarloOptions opt = {}) {
  if (trials == 0) throw InputError("need at least one trial");
  MonteCarloSummary sum;
  sum.trials.resize(trials);
  if (opt.keep_traces) sum.traces.resize(trials);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < trials; i = next++) {
      ProtocolConfig c = cfg;
      c.trial = i;
      SpreadTrace tr = run(g, c);
      sum.trials[i] = {i, tr.t_half, tr.t_all, tr.completed};
      if (opt.keep_traces) sum.traces[i] = std::move(tr);
    }
  };
  unsigned threads = opt.threads ? opt.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, trials));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }

  double total = 0.0;
  for (const auto& t : sum.trials) {
    if (t.completed) {
      ++sum.completed;
      total += static_cast<double>(*t.t_all);
      sum.sorted_t_all.push_back(static_cast<double>(*t.t_all));
    } else {
      sum.sorted_t_all.push_back(std::numeric_limits<double>::infinity());
    }
  }
  sum.mean_t_all = sum.completed ? total / static_cast<double>(sum.completed) : 0.0;
  std::sort(sum.sorted_t_all.begin(), sum.sorted_t_all.end());
  return sum;
}

// ---------------------------------------------------------------------------
// Diagnostics

struct PullGrowthReport {
  std::size_t trials = 0;
  double mean_growth = 0.0;
  double stderr_estimate = 0.0;
  double h = 0.0;
  std::size_t boundary_size = 0;
  double bound = 0.0;  // h(S) * |dS|
  bool passed = false;
};

// One PUSH-PULL round from I = S per trial; compares the mean growth of I+
// with h(S)|dS| at 4 standard errors.
inline PullGrowthReport pull_growth_check(const Graph& g, const NodeSet& s, std::size_t trials,
                                          std::uint64_t seed) {
  detail::require_proper(g, s, "pull growth check");
  if (trials == 0) throw InputError("need at least one trial");
  PullGrowthReport rep;
  rep.trials = trials;
  rep.h = boundary_expansion_exact(g, s);
  const NodeSet bd = boundary(g, s);
  const NodeSet plus = s.united(bd);
  rep.boundary_size = bd.size();
  rep.bound = rep.h * static_cast<double>(bd.size());

  // Only nodes of S+ can take part in a successful contact.
  const CounterRng rng(seed);
  std::vector<std::uint64_t> got(g.num_nodes(), 0), seen(g.num_nodes(), 0);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t k = 0; k < trials; ++k) {
    const std::uint64_t mark = k + 1;
    std::vector<NodeId> fresh;
    for (NodeId u : plus) {
      NodeId w = detail::draw_neighbor(g, rng, k, 1, u);
      NodeId newcomer;
      if (s.contains(u)) {
        if (s.contains(w)) continue;
        newcomer = w;
      } else {
        if (!s.contains(w)) continue;
        newcomer = u;
      }
      if (got[newcomer] != mark) {
        got[newcomer] = mark;
        fresh.push_back(newcomer);
      }
    }
    std::size_t growth = 0;
    for (NodeId v : fresh)
      for (NodeId w : g.neighbors(v))
        if (!plus.contains(w) && seen[w] != mark) {
          seen[w] = mark;
          ++growth;
        }
    const auto x = static_cast<double>(growth);
    sum += x;
    sum_sq += x * x;
  }
  const auto n = static_cast<double>(trials);
  rep.mean_growth = sum / n;
  if (trials > 1)
    rep.stderr_estimate =
        std::sqrt(std::max(0.0, (sum_sq - n * rep.mean_growth * rep.mean_growth) / (n - 1.0)) / n);
  rep.passed = rep.mean_growth >= rep.bound - 4.0 * rep.stderr_estimate - 1e-12;
  return rep;
}

struct DoublingWindow {
  std::size_t t = 0;
  std::size_t rounds = 0;
};

// Checkpoints are the first rounds at which Psi reaches Psi_0 * 2^k (while at
// most n/2 nodes are informed). Each window counts rounds until Psi doubles
// relative to the checkpoint or more than n/2 nodes are informed.
inline std::vector<DoublingWindow> doubling_times(const SpreadTrace& trace) {
  std::vector<DoublingWindow> out;
  if (trace.rounds.empty()) return out;
  const std::size_t half = trace.num_nodes / 2;
  const double psi0 = trace.rounds.front().psi;
  double level = psi0;
  for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
    const RoundRecord& r = trace.rounds[t];
    if (r.informed > half) break;
    if (r.psi < level) continue;
    while (level <= r.psi) level *= 2.0;
    for (std::size_t u = t + 1; u < trace.rounds.size(); ++u) {
      const RoundRecord& later = trace.rounds[u];
      if (later.psi >= 2.0 * r.psi || later.informed > half) {
        out.push_back({t, u - t});
        break;
      }
    }
  }
  return out;
}

}  // namespace rumor
