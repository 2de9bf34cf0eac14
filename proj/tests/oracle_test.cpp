#include <gtest/gtest.h>

#include "cliqueorder/oracle.hpp"
#include "support.hpp"

using namespace cliqueorder;

TEST(PermLoss, MatchesPositionFormula) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Graph g = er_generate(7, 0.5, s);
    const auto perm = random_order(g, s);
    const auto cost = cost_lemma(7);
    BigInt direct = 0;
    for (Vertex u = 0; u < 7; ++u)
      for (Vertex v = 0; v < 7; ++v)
        if (u != v && !g.adjacent(u, v)) direct += cost(perm.position(u), perm.position(v));
    EXPECT_EQ(oracle::perm_loss(g, perm, cost), direct);
  }
}

TEST(PermLoss, RelabelInvariance) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const std::size_t n = 3 + s % 6;
    const Graph g = er_generate(n, 0.5, s);
    const Permutation r = random_order(g, 2 * s + 1);
    const Permutation q = random_order(g, 2 * s + 2);
    // Relabeling by r and then ordering by r^-1 then q places each vertex where q alone would.
    const Graph h = relabel(g, r);
    const Permutation composed = r.inverse().then(q);
    EXPECT_EQ(oracle::perm_loss(h, composed, cost_lemma(n)), oracle::perm_loss(g, q, cost_lemma(n)));
  }
}

TEST(BruteForcePermMin, SixVertexGraphPutsCliqueFirst) {
  const Graph g = testsupport::six_vertex_graph();
  const auto best = oracle::brute_force_perm_min(g, cost_lemma(6));
  const auto order = best.perm.order();
  std::vector<Vertex> prefix(order.begin(), order.begin() + 4);
  std::sort(prefix.begin(), prefix.end());
  EXPECT_EQ(prefix, (std::vector<Vertex>{0, 2, 4, 5}));
  EXPECT_THROW(oracle::brute_force_perm_min(Graph(9), cost_lemma(9)), std::invalid_argument);
}

TEST(LemmaVerify, SmallCases) {
  const auto complete = oracle::lemma_verify(er_generate(5, 1.0, 0), "k5");
  EXPECT_TRUE(complete.passed());
  EXPECT_TRUE(complete.vacuous);
  EXPECT_EQ(complete.min_loss, 0);
  EXPECT_EQ(complete.upper_bound, 0);

  const auto six = oracle::lemma_verify(testsupport::six_vertex_graph(), "six");
  EXPECT_TRUE(six.passed());
  EXPECT_EQ(six.omega, 4u);
  EXPECT_FALSE(six.vacuous);
  // (36 - 16) * 36 and 36^2.
  EXPECT_EQ(six.upper_bound, 720);
  EXPECT_EQ(six.lower_bound, 1296);
  ASSERT_TRUE(six.min_nonprefix_loss.has_value());
  EXPECT_GE(*six.min_nonprefix_loss, six.lower_bound);
  EXPECT_LE(six.max_prefix_loss, six.upper_bound);
  EXPECT_THROW(oracle::lemma_verify(Graph(9)), std::invalid_argument);
}

TEST(LemmaVerify, SampledGraphs) {
  for (std::uint64_t s = 0; s < 15; ++s) {
    const auto r = oracle::lemma_verify(er_generate(6, 0.5, s));
    EXPECT_TRUE(r.passed()) << "seed " << s;
  }
}
