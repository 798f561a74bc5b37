#include <gtest/gtest.h>

#include <cmath>

#include "rumor/generators.hpp"
#include "rumor/participating.hpp"
#include "rumor/protocols.hpp"
#include "test_support.hpp"

using namespace rumor;
using testing_support::set_of;

namespace {

ProtocolConfig config(Variant v, NodeSet init, std::uint64_t seed = 1) {
  ProtocolConfig c;
  c.variant = v;
  c.initial_informed = std::move(init);
  c.seed = seed;
  return c;
}

bool same_trace(const SpreadTrace& a, const SpreadTrace& b) {
  if (a.rounds.size() != b.rounds.size() || a.t_all != b.t_all || a.t_half != b.t_half) return false;
  for (std::size_t i = 0; i < a.rounds.size(); ++i) {
    const auto &x = a.rounds[i], &y = b.rounds[i];
    if (x.informed != y.informed || x.boundary != y.boundary || x.closure != y.closure ||
        x.psi != y.psi || x.harmonic_mass != y.harmonic_mass || x.informed_set != y.informed_set)
      return false;
  }
  return true;
}

}  // namespace

TEST(Variant, ParseAndPrint) {
  EXPECT_EQ(parse_variant("push"), Variant::push);
  EXPECT_EQ(parse_variant("pull"), Variant::pull);
  EXPECT_EQ(parse_variant("pushpull"), Variant::pushpull);
  EXPECT_EQ(parse_variant("push-pull"), Variant::pushpull);
  EXPECT_STREQ(to_string(Variant::pushpull), "pushpull");
  EXPECT_THROW(parse_variant("gossip"), InputError);
  EXPECT_EQ(default_max_rounds(1024), 640u);
}

TEST(Round, DeterministicExamples) {
  Graph k2 = gen::complete(2);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CounterRng rng(seed);
    EXPECT_TRUE(round(k2, set_of(2, {0}), Variant::pull, rng).is_full());
    EXPECT_TRUE(round(k2, set_of(2, {0}), Variant::pushpull, rng).is_full());
    EXPECT_TRUE(round(gen::star(7), set_of(8, {0}), Variant::pull, rng).is_full());
    EXPECT_EQ(round(gen::path(4), set_of(4, {0}), Variant::push, rng), set_of(4, {0, 1}));
  }
}

TEST(Round, RoundStartSemantics) {
  Graph p = gen::path(4);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    CounterRng rng(seed);
    for (Variant v : {Variant::push, Variant::pull, Variant::pushpull}) {
      NodeSet next = round(p, set_of(4, {0}), v, rng);
      EXPECT_FALSE(next.contains(2));
      EXPECT_FALSE(next.contains(3));
    }
  }
}

TEST(Run, TrivialCases) {
  auto k2 = run(gen::complete(2), config(Variant::pushpull, set_of(2, {1}), 99));
  EXPECT_EQ(k2.t_all, 1u);
  EXPECT_EQ(k2.t_half, 1u);
  EXPECT_TRUE(k2.completed);
  EXPECT_DOUBLE_EQ(k2.rounds[0].psi, 1.5);

  auto full = run(gen::cycle(5), config(Variant::push, NodeSet::full(5)));
  EXPECT_EQ(full.t_all, 0u);
  EXPECT_EQ(full.rounds.size(), 1u);

  EXPECT_THROW(run(gen::cycle(5), config(Variant::push, NodeSet(5))), InputError);

  auto capped = config(Variant::push, set_of(64, {0}));
  capped.max_rounds = 1;
  auto tr = run(gen::path(64), capped);
  EXPECT_FALSE(tr.completed);
  EXPECT_FALSE(tr.t_all);
  EXPECT_EQ(tr.rounds.size(), 2u);
}

TEST(Run, Deterministic) {
  Graph c6 = gen::cycle(6);
  auto cfg = config(Variant::pushpull, set_of(6, {0}), 42);
  cfg.record_full_sets = true;
  EXPECT_TRUE(same_trace(run(c6, cfg), run(c6, cfg)));
  Graph g = gen::random_regular(200, 4, 3);
  auto cfg2 = config(Variant::push, set_of(200, {7}), 5);
  EXPECT_TRUE(same_trace(run(g, cfg2), run(g, cfg2)));
}

TEST(Run, TraceInvariants) {
  CounterStream rs(21);
  for (int it = 0; it < 40; ++it) {
    Graph g = testing_support::random_connected(rs, 2, 50);
    const std::size_t n = g.num_nodes();
    auto cfg = config(static_cast<Variant>(rs.below(3)), testing_support::random_ball(rs, g, 0), rs());
    cfg.record_full_sets = true;
    auto tr = run(g, cfg);
    for (std::size_t t = 0; t < tr.rounds.size(); ++t) {
      const auto& r = tr.rounds[t];
      EXPECT_EQ(r.round, t);
      EXPECT_DOUBLE_EQ(r.psi, r.informed + r.boundary / 2.0);
      EXPECT_GT(r.psi, 1.0);
      EXPECT_LE(r.psi, static_cast<double>(n));
      EXPECT_EQ(r.psi == static_cast<double>(n), r.informed == n);
      // Incremental bookkeeping agrees with recomputation from scratch.
      EXPECT_EQ(closure(g, *r.informed_set).size(), r.closure);
      EXPECT_NEAR(harmonic_mass(g, *r.informed_set), r.harmonic_mass, 1e-9);
      if (t > 0) {
        const auto& prev = tr.rounds[t - 1];
        EXPECT_TRUE(prev.informed_set->is_subset_of(*r.informed_set));
        EXPECT_GE(r.closure, prev.closure);
        EXPECT_GE(r.psi, prev.psi);
      }
    }
    if (tr.t_half) {
      EXPECT_GE(tr.rounds[*tr.t_half].informed, n / 2 + 1);
    }
    EXPECT_EQ(tr.completed, tr.rounds.back().informed == n);
  }
}

TEST(Run, PushPullDominatesUnderCoupling) {
  CounterStream rs(23);
  for (int it = 0; it < 30; ++it) {
    Graph g = testing_support::random_connected(rs, 4, 60);
    NodeSet init = testing_support::random_ball(rs, g, 0);
    const std::uint64_t seed = rs();
    auto rec = [&](Variant v) {
      auto c = config(v, init, seed);
      c.record_full_sets = true;
      c.max_rounds = 30;
      return run(g, c);
    };
    auto pp = rec(Variant::pushpull), push = rec(Variant::push), pull = rec(Variant::pull);
    for (const SpreadTrace* other : {&push, &pull}) {
      for (std::size_t t = 0; t < other->rounds.size(); ++t) {
        const NodeSet& big = pp.rounds[std::min(t, pp.rounds.size() - 1)].informed_set.value();
        EXPECT_TRUE(other->rounds[t].informed_set->is_subset_of(big));
      }
    }
  }
}

TEST(FirstArrival, Basics) {
  Graph p = gen::path(4);
  EXPECT_EQ(first_arrival(p, set_of(4, {0}), set_of(4, {0, 3}), Variant::push, 1, 0, 10), 0u);
  EXPECT_EQ(first_arrival(p, set_of(4, {0}), set_of(4, {1}), Variant::push, 1, 0, 10), 1u);
  EXPECT_FALSE(first_arrival(gen::path(40), set_of(40, {0}), set_of(40, {39}), Variant::push, 1, 0, 5));
}

TEST(Restricted, FullParticipationReducesToPushPull) {
  // On K5 with S = {0}, every node is in S+ so P = A = V.
  Graph k5 = gen::complete(5);
  NodeSet s = set_of(5, {0});
  auto part = compute_participating(k5, s, ParticipatingConfig{});
  ASSERT_TRUE(part.active.is_full());
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto cfg = config(Variant::pushpull, set_of(5, {2}), seed);
    auto a = run_restricted(k5, s, 2, cfg, part);
    auto b = run(k5, cfg);
    EXPECT_EQ(a.t_all, b.t_all);
    EXPECT_EQ(a.rounds.size(), b.rounds.size());
  }
}

TEST(Restricted, HitsSetInFirstRoundAtExpectedRate) {
  // Path 0-1-2-3-4, S = {0}: origin 1 draws 0 with probability 1/2, and 0 also
  // pulls from 1 because its only neighbor is 1.
  Graph p = gen::path(5);
  NodeSet s = set_of(5, {0});
  auto part = compute_participating(p, s, {0.15, 0.5});
  const int trials = 4000;
  int hits = 0;
  for (int k = 0; k < trials; ++k) {
    auto cfg = config(Variant::pushpull, set_of(5, {1}), 77);
    cfg.trial = static_cast<std::uint64_t>(k);
    auto tr = run_restricted(p, s, 1, cfg, part);
    ASSERT_TRUE(tr.t_hit_target);
    if (*tr.t_hit_target == 1) ++hits;
    EXPECT_TRUE(tr.completed);
  }
  const double freq = hits / static_cast<double>(trials);
  EXPECT_GE(freq, 0.5 - 4 * std::sqrt(0.25 / trials));
  EXPECT_EQ(hits, trials);
}

TEST(Restricted, PassiveNodesNeedAnActiveNeighbor) {
  Graph p = gen::path(5);
  NodeSet s = set_of(5, {0});
  auto part = compute_participating(p, s, {0.15, 0.5});
  ASSERT_EQ(part.passive.members(), (std::vector<NodeId>{2}));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto cfg = config(Variant::pushpull, set_of(5, {1}), seed);
    cfg.record_full_sets = true;
    auto tr = run_restricted(p, s, 1, cfg, part);
    for (const auto& r : tr.rounds) {
      EXPECT_FALSE(r.informed_set->contains(3));
      EXPECT_FALSE(r.informed_set->contains(4));
    }
  }
  EXPECT_THROW(run_restricted(p, s, 2, config(Variant::pushpull, set_of(5, {2})), part), InputError);
  EXPECT_THROW(run_restricted(p, s, 0, config(Variant::pushpull, set_of(5, {0})), part), InputError);
}

TEST(MonteCarlo, TrivialGraphs) {
  auto k2 = monte_carlo(gen::complete(2), config(Variant::pushpull, set_of(2, {0})), 100);
  EXPECT_EQ(k2.completed, 100u);
  for (const auto& t : k2.trials) EXPECT_EQ(t.t_all, 1u);
  auto star = monte_carlo(gen::star(100), config(Variant::pull, set_of(101, {0})), 50);
  for (const auto& t : star.trials) EXPECT_EQ(t.t_all, 1u);
  EXPECT_DOUBLE_EQ(star.median(), 1.0);
  EXPECT_THROW(monte_carlo(gen::complete(2), config(Variant::push, set_of(2, {0})), 0), InputError);
}

TEST(MonteCarlo, ReproducibleAcrossThreadCounts) {
  Graph q = gen::hypercube(8);
  auto cfg = config(Variant::pushpull, set_of(256, {5}), 2024);
  auto a = monte_carlo(q, cfg, 40, {.threads = 1});
  auto b = monte_carlo(q, cfg, 40, {.threads = 3});
  EXPECT_EQ(a.sorted_t_all, b.sorted_t_all);
  for (std::size_t i = 0; i < 40; ++i) EXPECT_EQ(a.trials[i].t_all, b.trials[i].t_all);
  EXPECT_EQ(a.median(), b.median());
}

TEST(MonteCarlo, QuantilesTreatIncompleteAsInfinite) {
  EXPECT_DOUBLE_EQ(quantile_sorted({1, 2, 3, 4}, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile_sorted({1, 2, 3, 4}, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile_sorted({1, 2, 3, 4}, 1.0), 4.0);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_DOUBLE_EQ(quantile_sorted({1, 2, inf}, 0.5), 2.0);
  EXPECT_TRUE(std::isinf(quantile_sorted({1, 2, inf}, 0.9)));
  EXPECT_THROW(quantile_sorted({}, 0.5), InputError);

  auto cfg = config(Variant::push, set_of(30, {0}), 1);
  cfg.max_rounds = 3;
  auto sum = monte_carlo(gen::path(30), cfg, 5);
  EXPECT_EQ(sum.completed, 0u);
  EXPECT_TRUE(std::isinf(sum.median()));
}

TEST(PullGrowth, Examples) {
  auto dom = pull_growth_check(gen::star(6), set_of(7, {0}), 100, 1);
  EXPECT_EQ(dom.bound, 0.0);
  EXPECT_TRUE(dom.passed);
  auto path = pull_growth_check(gen::path(4), set_of(4, {0}), 20000, 2);
  EXPECT_DOUBLE_EQ(path.bound, 0.5);
  EXPECT_TRUE(path.passed) << path.mean_growth << " +- " << path.stderr_estimate;
  // a pushes to b with certainty, so the growth is always {c}.
  EXPECT_DOUBLE_EQ(path.mean_growth, 1.0);
}

TEST(PullGrowth, RandomInstances) {
  CounterStream rs(29);
  for (int it = 0; it < 30; ++it) {
    Graph g = testing_support::random_connected(rs, 4, 40);
    NodeSet s = testing_support::random_ball(rs, g, rs.below(2));
    auto rep = pull_growth_check(g, s, 2000, rs());
    EXPECT_TRUE(rep.passed) << rep.mean_growth << " vs " << rep.bound;
  }
}

TEST(Doubling, Examples) {
  auto k2 = run(gen::complete(2), config(Variant::pushpull, set_of(2, {0})));
  auto w = doubling_times(k2);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].t, 0u);
  EXPECT_EQ(w[0].rounds, 1u);

  auto q = run(gen::hypercube(8), config(Variant::pushpull, set_of(256, {0}), 3));
  ASSERT_TRUE(q.completed);
  auto wins = doubling_times(q);
  ASSERT_FALSE(wins.empty());
  for (const auto& d : wins) EXPECT_GE(d.rounds, 1u);
  for (std::size_t i = 1; i < wins.size(); ++i) EXPECT_GT(wins[i].t, wins[i - 1].t);
}
