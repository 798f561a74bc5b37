#pragma once

// Participating / active / passive node sets for an informed set S, built as
// the fixed point of a node-removal procedure, together with the potential
// Phi that audits how many boundary nodes the procedure can discard.
//
// Threshold comparisons are exact: sums of 1/deg are kept as rationals.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rumor/errors.hpp"
#include "rumor/expansion.hpp"
#include "rumor/graph.hpp"
#include "rumor/rng.hpp"

namespace rumor {

using Rational = boost::multiprecision::cpp_rational;

struct ParticipatingConfig {
  double eps_p = 0.15;
  double eps_h = 0.5;

  // 0 < eps_p < (1 - eps_h) / 3; the active-fraction bound presumes it.
  bool hypothesis_holds() const { return eps_p > 0.0 && eps_p < (1.0 - eps_h) / 3.0; }

  void validate() const {
    if (!(eps_p > 0.0 && eps_p < 1.0)) throw InputError("eps_p must lie in (0, 1)");
    if (!(eps_h >= 0.0 && eps_h < 1.0)) throw InputError("eps_h must lie in [0, 1)");
  }
};

enum class RemovalReason { failed_active_condition, failed_passive_condition };

inline const char* to_string(RemovalReason r) {
  return r == RemovalReason::failed_active_condition ? "failed-active-condition"
                                                     : "failed-passive-condition";
}

struct Removal {
  std::size_t step = 0;
  NodeId node = 0;
  RemovalReason reason = RemovalReason::failed_active_condition;
};

struct PotentialTerms {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double phi = 0.0;
  // The same two terms via the swapped double sums.
  double phi1_dual = 0.0;
  double phi2_dual = 0.0;
};

enum class RemovalOrder {
  lowest_id,  // one node per step, smallest violating id first
  batch,      // every violator of P_{i-1} leaves in step i
  random,     // one uniformly chosen violator per step
};

struct ParticipatingOptions {
  RemovalOrder order = RemovalOrder::lowest_id;
  std::uint64_t seed = 0;  // used by RemovalOrder::random
  bool track_potential = true;
};

struct ParticipatingResult {
  NodeSet start;
  NodeSet participating;
  NodeSet active;
  NodeSet passive;
  std::vector<Removal> removal_log;
  // Entry 0 is the potential of the start set; entry k follows step k.
  std::vector<PotentialTerms> phi_trajectory;
};

// Phi for candidate set p: wasted contact probability between participating
// and non-participating nodes, with active set p ∩ S+.
inline PotentialTerms potential(const Graph& g, const NodeSet& s, const NodeSet& p) {
  detail::require_universe(g, s);
  detail::require_universe(g, p);
  const NodeSet plus = closure(g, s);
  auto inv = [&](NodeId v) { return 1.0 / static_cast<double>(g.degree(v)); };
  auto active = [&](NodeId v) { return p.contains(v) && plus.contains(v); };
  auto inactive_closure = [&](NodeId v) { return plus.contains(v) && !p.contains(v); };

  PotentialTerms t;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v : g.neighbors(u)) {
      if (active(u) && !p.contains(v)) t.phi1 += inv(u);
      if (!p.contains(u) && active(v)) t.phi1_dual += inv(v);
      if (inactive_closure(u) && p.contains(v)) t.phi2 += inv(u);
      if (p.contains(u) && inactive_closure(v)) t.phi2_dual += inv(v);
    }
  }
  t.phi = t.phi1 + t.phi2;
  return t;
}

namespace detail {

inline Rational exact_threshold(double eps) {
  // Exact binary value of the double; no decimal rounding.
  int exp = 0;
  const double mant = std::frexp(eps, &exp);
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  Rational r(scaled);
  const int shift = exp - 53;
  if (shift >= 0)
    r *= Rational(boost::multiprecision::cpp_int(1) << shift);
  else
    r /= Rational(boost::multiprecision::cpp_int(1) << -shift);
  return r;
}

class RemovalProcess {
 public:
  RemovalProcess(const Graph& g, const NodeSet& s, const NodeSet& start, const Rational& eps)
      : g_(g), eps_(eps), plus_(closure(g, s)), in_p_(g.num_nodes(), 0),
        part_count_(g.num_nodes(), 0), active_sum_(g.num_nodes()) {
    for (NodeId v : start) in_p_[v] = 1;
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
      for (NodeId v : g.neighbors(u)) {
        if (in_p_[v]) ++part_count_[u];
        if (is_active(v)) active_sum_[u] += Rational(1, g.degree(v));
      }
    }
    for (NodeId u = 0; u < g.num_nodes(); ++u)
      if (in_p_[u] && violates(u)) violators_.insert(u);
  }

  bool is_active(NodeId v) const { return in_p_[v] && plus_.contains(v); }
  bool in_p(NodeId v) const { return in_p_[v] != 0; }

  bool violates(NodeId u) const {
    if (is_active(u))
      return Rational(part_count_[u], g_.degree(u)) + active_sum_[u] < eps_;
    return active_sum_[u] < eps_;
  }

  const std::set<NodeId>& violators() const { return violators_; }

  RemovalReason remove(NodeId u) {
    const bool was_active = is_active(u);
    in_p_[u] = 0;
    violators_.erase(u);
    const Rational share(1, g_.degree(u));
    for (NodeId w : g_.neighbors(u)) {
      --part_count_[w];
      if (was_active) active_sum_[w] -= share;
    }
    return was_active ? RemovalReason::failed_active_condition
                      : RemovalReason::failed_passive_condition;
  }

  // Sums only decrease, so a neighbor of a removed node is the only new
  // violator candidate.
  void refresh_neighbors(NodeId u) {
    for (NodeId w : g_.neighbors(u))
      if (in_p_[w] && violates(w)) violators_.insert(w);
  }

  NodeSet current() const {
    NodeSet p(g_.num_nodes());
    for (NodeId v = 0; v < g_.num_nodes(); ++v)
      if (in_p_[v]) p.append_sorted(v);
    return p;
  }

  const NodeSet& closure_set() const { return plus_; }

 private:
  const Graph& g_;
  Rational eps_;
  NodeSet plus_;
  std::vector<char> in_p_;
  std::vector<std::size_t> part_count_;
  std::vector<Rational> active_sum_;
  std::set<NodeId> violators_;
};

inline ParticipatingResult run_removal(const Graph& g, const NodeSet& s, const NodeSet& start,
                                       const ParticipatingConfig& cfg,
                                       const ParticipatingOptions& opt) {
  RemovalProcess proc(g, s, start, exact_threshold(cfg.eps_p));
  ParticipatingResult res;
  res.start = start;
  if (opt.track_potential) res.phi_trajectory.push_back(potential(g, s, start));

  CounterStream stream(opt.seed);
  std::size_t step = 0;
  while (!proc.violators().empty()) {
    ++step;
    std::vector<NodeId> batch;
    switch (opt.order) {
      case RemovalOrder::lowest_id:
        batch.push_back(*proc.violators().begin());
        break;
      case RemovalOrder::random: {
        auto it = proc.violators().begin();
        std::advance(it, static_cast<std::ptrdiff_t>(stream.below(proc.violators().size())));
        batch.push_back(*it);
        break;
      }
      case RemovalOrder::batch:
        batch.assign(proc.violators().begin(), proc.violators().end());
        break;
    }
    std::vector<RemovalReason> reasons;
    for (NodeId u : batch) reasons.push_back(proc.remove(u));
    for (std::size_t i = 0; i < batch.size(); ++i) {
      res.removal_log.push_back({step, batch[i], reasons[i]});
      proc.refresh_neighbors(batch[i]);
    }
    if (opt.track_potential) res.phi_trajectory.push_back(potential(g, s, proc.current()));
  }

  res.participating = proc.current();
  res.active = res.participating.intersected(proc.closure_set());
  res.passive = res.participating.minus(res.active);
  return res;
}

}  // namespace detail

inline ParticipatingResult compute_participating(const Graph& g, const NodeSet& s,
                                                 const ParticipatingConfig& cfg,
                                                 const ParticipatingOptions& opt = {}) {
  detail::require_proper(g, s, "participating set");
  cfg.validate();
  return detail::run_removal(g, s, NodeSet::full(g.num_nodes()), cfg, opt);
}

// Runs the removal procedure from an arbitrary start set.
inline ParticipatingResult compute_participating_from(const Graph& g, const NodeSet& s,
                                                      const NodeSet& start,
                                                      const ParticipatingConfig& cfg,
                                                      const ParticipatingOptions& opt = {}) {
  detail::require_proper(g, s, "participating set");
  detail::require_universe(g, start);
  cfg.validate();
  return detail::run_removal(g, s, start, cfg, opt);
}

// S+ plus the nodes u of d(S+) with sum_{v in N(u) ∩ dS} 1/deg(v) >= 2 eps_p.
inline NodeSet modified_start_set(const Graph& g, const NodeSet& s, const ParticipatingConfig& cfg) {
  detail::require_proper(g, s, "participating set");
  const NodeSet bd = boundary(g, s);
  const NodeSet plus = s.united(bd);
  const Rational twice = 2 * detail::exact_threshold(cfg.eps_p);
  NodeSet start = plus;
  for (NodeId u : boundary(g, plus)) {
    Rational sum = 0;
    for (NodeId v : g.neighbors(u))
      if (bd.contains(v)) sum += Rational(1, g.degree(v));
    if (sum >= twice) start.insert(u);
  }
  return start;
}

inline ParticipatingResult compute_participating_modified(const Graph& g, const NodeSet& s,
                                                          const ParticipatingConfig& cfg,
                                                          const ParticipatingOptions& opt = {}) {
  detail::require_proper(g, s, "participating set");
  cfg.validate();
  return detail::run_removal(g, s, modified_start_set(g, s, cfg), cfg, opt);
}

// Does every member of p satisfy its active / passive inequality against p?
inline bool satisfies_conditions(const Graph& g, const NodeSet& s, const NodeSet& p,
                                 const ParticipatingConfig& cfg) {
  detail::RemovalProcess proc(g, s, p, detail::exact_threshold(cfg.eps_p));
  return proc.violators().empty();
}

struct ActiveFractionReport {
  bool checked = false;
  std::string skip_reason;
  double h = 0.0;
  std::size_t boundary_size = 0;
  std::size_t boundary_participating = 0;
  double required_fraction = 0.0;  // 1 - eps_h / ((1 - eps_p)(1 - 2 eps_p))
  bool fraction_holds = false;
  double phi0 = 0.0;
  double phi0_bound = 0.0;  // eps_h / (1 - eps_p) * |dS|
  bool phi0_holds = false;
  bool potential_non_increasing = false;
  bool active_drops_hold = false;
  double min_active_drop = 0.0;  // +inf when no active node was removed
  bool passed = false;
};

inline ActiveFractionReport active_fraction_check(const Graph& g, const NodeSet& s,
                                                  const ParticipatingConfig& cfg) {
  detail::require_proper(g, s, "active fraction check");
  cfg.validate();
  ActiveFractionReport rep;
  rep.h = boundary_expansion_exact(g, s);
  if (!cfg.hypothesis_holds()) {
    rep.skip_reason = "eps_p must be below (1 - eps_h) / 3";
    return rep;
  }
  if (rep.h > cfg.eps_h) {
    rep.skip_reason = "h(S) exceeds eps_h";
    return rep;
  }
  rep.checked = true;
  constexpr double tol = 1e-9;

  const NodeSet bd = boundary(g, s);
  const ParticipatingResult full = compute_participating(g, s, cfg, {.track_potential = false});
  rep.boundary_size = bd.size();
  rep.boundary_participating = bd.intersected(full.participating).size();
  rep.required_fraction = 1.0 - cfg.eps_h / ((1.0 - cfg.eps_p) * (1.0 - 2.0 * cfg.eps_p));
  rep.fraction_holds = static_cast<double>(rep.boundary_participating) + tol >=
                       rep.required_fraction * static_cast<double>(rep.boundary_size);

  const ParticipatingResult mod = compute_participating_modified(g, s, cfg);
  rep.phi0 = mod.phi_trajectory.front().phi;
  rep.phi0_bound = cfg.eps_h / (1.0 - cfg.eps_p) * static_cast<double>(bd.size());
  rep.phi0_holds = rep.phi0 <= rep.phi0_bound + tol;

  rep.potential_non_increasing = true;
  rep.active_drops_hold = true;
  rep.min_active_drop = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < mod.removal_log.size(); ++k) {
    const double before = mod.phi_trajectory[k].phi;
    const double after = mod.phi_trajectory[k + 1].phi;
    if (after > before + tol) rep.potential_non_increasing = false;
    if (mod.removal_log[k].reason == RemovalReason::failed_active_condition) {
      rep.min_active_drop = std::min(rep.min_active_drop, before - after);
      if (before - after < 1.0 - 2.0 * cfg.eps_p - tol) rep.active_drops_hold = false;
    }
  }
  rep.passed = rep.fraction_holds && rep.phi0_holds && rep.potential_non_increasing &&
               rep.active_drops_hold;
  return rep;
}

}  // namespace rumor
