#include <gtest/gtest.h>

#include "rumor/expansion.hpp"
#include "rumor/family.hpp"
#include "rumor/generators.hpp"
#include "test_support.hpp"

using namespace rumor;
using testing_support::set_of;

TEST(Deterministic, CountsAndShapes) {
  Graph k4 = gen::complete(4);
  EXPECT_EQ(k4.num_edges(), 6u);
  EXPECT_EQ(k4.max_degree(), 3u);
  EXPECT_EQ(k4.min_degree(), 3u);

  Graph q3 = gen::hypercube(3);
  EXPECT_EQ(q3.num_nodes(), 8u);
  EXPECT_EQ(q3.num_edges(), 12u);
  EXPECT_TRUE(q3.is_regular());
  EXPECT_EQ(q3.max_degree(), 3u);
  EXPECT_EQ(diameter(q3), 3u);
  for (auto [u, v] : q3.edges()) EXPECT_EQ(__builtin_popcount(u ^ v), 1);

  Graph star = gen::star(5);
  EXPECT_EQ(star.degree(0), 5u);
  EXPECT_EQ(diameter(star), 2u);

  EXPECT_EQ(gen::cycle(7).num_edges(), 7u);
  EXPECT_EQ(gen::path(7).num_edges(), 6u);
}

TEST(Deterministic, DegenerateSizesRejected) {
  EXPECT_THROW(gen::complete(1), InputError);
  EXPECT_THROW(gen::path(1), InputError);
  EXPECT_THROW(gen::cycle(2), InputError);
  EXPECT_THROW(gen::hypercube(0), InputError);
  EXPECT_THROW(gen::star(0), InputError);
  EXPECT_THROW(gen::two_cliques_shared_vertex(1), InputError);
  EXPECT_THROW(gen::dumbbell(1), InputError);
}

TEST(TwoCliques, Structure) {
  Graph p3 = gen::two_cliques_shared_vertex(2);
  EXPECT_EQ(p3.num_nodes(), 3u);
  EXPECT_EQ(p3.num_edges(), 2u);
  EXPECT_EQ(p3.degree(0), 2u);

  Graph g = gen::two_cliques_shared_vertex(4);
  EXPECT_EQ(g.num_nodes(), 7u);
  EXPECT_EQ(g.num_edges(), 12u);
  EXPECT_EQ(diameter(g), 2u);
  for (std::size_t m = 2; m < 8; ++m) EXPECT_EQ(diameter(gen::two_cliques_shared_vertex(m)), 2u);

  // One clique minus the shared node has boundary {0}.
  NodeSet s = set_of(7, {1, 2, 3});
  EXPECT_DOUBLE_EQ(vertex_expansion_set(g, s), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(vertex_expansion_graph(g).value, 1.0 / 3.0);
}

TEST(Dumbbell, Structure) {
  Graph p4 = gen::dumbbell(2);
  EXPECT_EQ(p4.num_edges(), 3u);
  EXPECT_EQ(diameter(p4), 3u);
  EXPECT_EQ(p4.max_degree(), 2u);
  for (std::size_t m = 2; m < 8; ++m) {
    Graph g = gen::dumbbell(m);
    EXPECT_EQ(g.num_nodes(), 2 * m);
    EXPECT_EQ(g.num_edges(), m * (m - 1) + 1);
    EXPECT_EQ(diameter(g), 3u);
    NodeSet clique(2 * m);
    for (NodeId v = 0; v < m; ++v) clique.insert(v);
    EXPECT_DOUBLE_EQ(conductance_set(g, clique), 1.0 / static_cast<double>(m * (m - 1) + 1));
  }
}

TEST(RandomRegular, Examples) {
  EXPECT_EQ(gen::random_regular(4, 3, 1).edges(), gen::complete(4).edges());
  Graph g = gen::random_regular(10, 4, 7);
  EXPECT_TRUE(g.is_regular());
  EXPECT_EQ(g.max_degree(), 4u);
  EXPECT_EQ(g.num_edges(), 20u);
  EXPECT_THROW(gen::random_regular(5, 3, 1), InputError);
  EXPECT_THROW(gen::random_regular(5, 5, 1), InputError);
}

TEST(RandomRegular, DeterministicAndRegularAtScale) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Graph a = gen::random_regular(200, 3, seed);
    EXPECT_TRUE(a.is_regular());
    EXPECT_EQ(a.edges(), gen::random_regular(200, 3, seed).edges());
  }
  EXPECT_NE(gen::random_regular(200, 3, 1).edges(), gen::random_regular(200, 3, 2).edges());
  Graph big = gen::random_regular(4096, 8, 11);
  EXPECT_TRUE(big.is_regular());
  EXPECT_EQ(big.max_degree(), 8u);
  EXPECT_EQ(big.num_edges(), 4096u * 4u);
}

TEST(ClusteredRegular, Structure) {
  Graph g = gen::clustered_regular(2, 4, 2, 3);
  EXPECT_EQ(g.num_nodes(), 16u);
  EXPECT_GE(g.min_degree(), 4u);
  // Each component keeps its internal regular part; every node gains its own draw
  // unless that draw repeats an edge.
  std::size_t internal_total = 0;
  for (NodeId u = 0; u < 16; ++u) {
    std::size_t internal = 0;
    for (NodeId v : g.neighbors(u))
      if (u / 8 == v / 8) ++internal;
    EXPECT_GE(internal, 4u);
    EXPECT_LE(g.degree(u), 4u + 1u + 16u);
    internal_total += internal;
  }
  EXPECT_GE(internal_total, 16u * 4u);
  EXPECT_EQ(g.edges(), gen::clustered_regular(2, 4, 2, 3).edges());
  EXPECT_THROW(gen::clustered_regular(1, 4, 2, 3), InputError);
  EXPECT_THROW(gen::clustered_regular(2, 4, 1, 3), InputError);
}

TEST(ErdosRenyi, Examples) {
  EXPECT_EQ(gen::erdos_renyi(6, 1.0, 3).edges(), gen::complete(6).edges());
  EXPECT_EQ(gen::erdos_renyi(2, 0.4, 3).num_edges(), 1u);
  EXPECT_EQ(gen::erdos_renyi(30, 0.3, 5).edges(), gen::erdos_renyi(30, 0.3, 5).edges());
  EXPECT_THROW(gen::erdos_renyi(10, 0.0, 1), InputError);
  EXPECT_THROW(gen::erdos_renyi(10, 1.5, 1), InputError);
  EXPECT_THROW(gen::erdos_renyi(200, 0.0001, 1), ConstructionError);
}

TEST(GreedyDominatingSet, Examples) {
  EXPECT_EQ(gen::greedy_dominating_set(gen::star(6)).members(), (std::vector<NodeId>{0}));
  EXPECT_EQ(gen::greedy_dominating_set(gen::complete(5)).members(), (std::vector<NodeId>{0}));
  EXPECT_EQ(gen::greedy_dominating_set(gen::cycle(6)).members(), (std::vector<NodeId>{0, 3}));
  CounterStream rs(3);
  for (int it = 0; it < 30; ++it) {
    Graph g = testing_support::random_connected(rs, 2, 60);
    EXPECT_TRUE(is_dominating(g, gen::greedy_dominating_set(g)));
  }
  EXPECT_TRUE(is_dominating(gen::random_regular(512, 8, 1), gen::greedy_dominating_set(gen::random_regular(512, 8, 1))));
}

TEST(Family, BuildAndProvenance) {
  FamilySpec f{"hypercube", {{"d", 3}}, 0};
  EXPECT_EQ(build(f).num_nodes(), 8u);
  EXPECT_FALSE(f.randomized());
  FamilySpec r{"random_regular", {{"n", 10}, {"delta", 4}}, 7};
  EXPECT_TRUE(r.randomized());
  EXPECT_EQ(build(r).edges(), gen::random_regular(10, 4, 7).edges());
  auto lines = r.provenance();
  EXPECT_EQ(lines.front(), "family: random_regular");
  EXPECT_NE(std::find(lines.begin(), lines.end(), "seed: 7"), lines.end());
  EXPECT_NE(std::find(lines.begin(), lines.end(), "delta: 4"), lines.end());
  FamilySpec c{"clustered_regular", {{"ell", 2}, {"delta", 4}, {"c", 2}}, 1};
  auto cl = c.provenance();
  EXPECT_NE(std::find_if(cl.begin(), cl.end(), [](const std::string& s) { return s.find("deduplicated") != std::string::npos; }), cl.end());
  EXPECT_THROW(build(FamilySpec{"petersen", {}, 0}), InputError);
  EXPECT_THROW(build(FamilySpec{"hypercube", {}, 0}), InputError);
  EXPECT_THROW(build(FamilySpec{"hypercube", {{"d", 2.5}}, 0}), InputError);
  for (const auto& name : known_families()) EXPECT_FALSE(name.empty());
}
