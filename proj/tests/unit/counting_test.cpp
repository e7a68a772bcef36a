#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "tightham/constructions.hpp"
#include "tightham/counting.hpp"
#include "tightham/error.hpp"
#include "tightham/random.hpp"

using namespace tightham;

namespace {

PairGraph random_pair_graph(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  PairGraph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) g.add_edge(u, v);
  return g;
}

std::uint64_t triangles_by_loop(const PairGraph& g) {
  std::uint64_t t = 0;
  const Vertex n = static_cast<Vertex>(g.order());
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = b + 1; c < n; ++c)
        if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) ++t;
  return t;
}

// Labelled assignments of 6 distinct vertices into pairs P1,P2,P3, each copy
// counted 3! * 2^3 = 48 times.
std::uint64_t k222_by_nested_loops(const Hypergraph3& h) {
  oracle::EdgeSet e(h);
  const Vertex n = static_cast<Vertex>(h.order());
  std::uint64_t hits = 0;
  std::vector<Vertex> s(6);
  auto rec = [&](auto&& self, int d) -> void {
    if (d == 6) {
      for (int i : {0, 1})
        for (int j : {2, 3})
          for (int k : {4, 5})
            if (!e.has(s[i], s[j], s[k])) return;
      ++hits;
      return;
    }
    for (Vertex v = 0; v < n; ++v) {
      if (std::find(s.begin(), s.begin() + d, v) != s.begin() + d) continue;
      s[d] = v;
      self(self, d + 1);
    }
  };
  rec(rec, 0);
  return hits / 48;
}

}  // namespace

TEST(Triangles, SmallGraphs) {
  PairGraph k5(5), c5(5);
  for (Vertex u = 0; u < 5; ++u) {
    for (Vertex v = u + 1; v < 5; ++v) k5.add_edge(u, v);
    c5.add_edge(u, (u + 1) % 5);
  }
  EXPECT_EQ(count_triangles(k5), 10u);
  EXPECT_EQ(count_triangles(c5), 0u);
}

TEST(Triangles, MatchesTripleLoop) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = random_pair_graph(30, 0.7, seed);
    EXPECT_EQ(count_triangles(g), triangles_by_loop(g));
  }
}

TEST(NsBound, Values) {
  EXPECT_EQ(ns_lower_bound(10, 50), Rational(500, 3));
  EXPECT_EQ(ns_lower_bound(10, 25), Rational(0));
  EXPECT_EQ(ns_lower_bound(10, 3), Rational(0));
  EXPECT_THROW(ns_lower_bound(2, 1), Error);
}

TEST(NsBound, HoldsOnRandomAndStructuredGraphs) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 5 + seed % 25;
    auto g = random_pair_graph(n, 0.3 + 0.7 * static_cast<double>(seed % 7) / 7, seed);
    EXPECT_GE(Rational(count_triangles(g)), ns_lower_bound(n, g.edge_count()));
  }
  // Complete bipartite graphs are triangle-free with m = n^2/4: the bound must be 0 there.
  for (std::size_t n = 4; n <= 20; n += 2) {
    PairGraph g(n);
    for (Vertex u = 0; u < n / 2; ++u)
      for (Vertex v = static_cast<Vertex>(n / 2); v < n; ++v) g.add_edge(u, v);
    EXPECT_EQ(count_triangles(g), 0u);
    EXPECT_EQ(ns_lower_bound(n, g.edge_count()), Rational(0));
  }
}

TEST(NsBound, DensityFormAtRhoPoint709) {
  // With m = rho n^2/2 the bound is rho(2 rho - 1) n^3/6.
  const Rational rho(709, 1000);
  EXPECT_EQ(rho * (2 * rho - 1), Rational(296362, 1000000));
  EXPECT_NE(rho * (2 * rho - 1), Rational(296262, 1000000));
  const std::uint64_t n = 1000;
  const Rational m = rho * n * n / 2;
  ASSERT_EQ(m, Rational(354500));
  EXPECT_EQ(ns_lower_bound(n, 354500), Rational(354500) * (4 * Rational(354500) - n * n) / (3 * n));
}

TEST(LinkTriangles, MatchesEnumeration) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto h = oracle::random_graph(12, 0.6, seed);
    auto hp = h_prime(h);
    const Vertex x = static_cast<Vertex>(seed % 12);
    auto t = triangles_of_link_in(hp, x);
    for (Vertex a = 0; a < 12; ++a)
      for (Vertex b = a + 1; b < 12; ++b)
        for (Vertex c = b + 1; c < 12; ++c) {
          bool tri = a != x && b != x && c != x && hp.has_edge(x, a, b) && hp.has_edge(x, b, c) &&
                     hp.has_edge(x, a, c);
          ASSERT_EQ(t.has_edge(a, b, c), tri);
        }
  }
  auto k = Hypergraph3::complete(7);
  EXPECT_EQ(triangles_of_link_in(k, 3).size(), choose3(6));
  EXPECT_EQ(triangles_of_link_in(Hypergraph3(7), 3).size(), 0u);
}

TEST(KHhh, CompleteAndEmpty) {
  auto r = find_k_hhh(Hypergraph3::complete(6), 2);
  ASSERT_EQ(r.outcome, SearchOutcome::Found);
  EXPECT_TRUE(is_k_hhh(Hypergraph3::complete(6), *r.copy));
  EXPECT_EQ(find_k_hhh(Hypergraph3(6), 1).outcome, SearchOutcome::Absent);
  EXPECT_EQ(find_k_hhh(Hypergraph3::complete(5), 2).outcome, SearchOutcome::Absent);
  EXPECT_THROW(find_k_hhh(Hypergraph3(6), 0), Error);
}

TEST(KHhh, DenseRandomFindsCopy) {
  auto h = random_h3(24, 0.9, 11);
  auto r = find_k_hhh(h, 2);
  ASSERT_EQ(r.outcome, SearchOutcome::Found);
  EXPECT_TRUE(is_k_hhh(h, *r.copy));
}

TEST(KHhh, RespectsParts) {
  auto h = random_h3(18, 0.8, 3);
  std::array<VertexSet, 3> parts{VertexSet(18), VertexSet(18), VertexSet(18)};
  for (Vertex v = 0; v < 18; ++v) parts[v % 3].insert(v);
  auto r = find_k_hhh(h, 2, parts);
  ASSERT_EQ(r.outcome, SearchOutcome::Found);
  for (int i = 0; i < 3; ++i)
    for (Vertex v : r.copy->parts[i]) EXPECT_TRUE(parts[i].contains(v));
}

TEST(KHhh, AbsenceAgreesWithCount) {
  // Exhaustive search must report Absent exactly when the exact count is zero.
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto h = oracle::random_graph(8, 0.35 + 0.02 * static_cast<double>(seed), seed);
    auto r = find_k_hhh(h, 2);
    ASSERT_NE(r.outcome, SearchOutcome::BudgetExhausted);
    EXPECT_EQ(r.outcome == SearchOutcome::Found, count_k222(h) > 0) << seed;
  }
}

TEST(KHhh, BudgetIsDistinctFromAbsence) {
  KSearchOptions opt;
  opt.node_budget = 3;
  auto r = find_k_hhh(random_h3(20, 0.2, 1), 2, std::nullopt, opt);
  EXPECT_EQ(r.outcome, SearchOutcome::BudgetExhausted);
}

TEST(K222, CompleteSixIsFifteen) {
  EXPECT_EQ(k222_by_nested_loops(Hypergraph3::complete(6)), 15u);
  EXPECT_EQ(count_k222(Hypergraph3::complete(6)), 15u);
  EXPECT_EQ(count_k222(Hypergraph3(9)), 0u);
  EXPECT_THROW(count_k222(Hypergraph3(21)), Error);
}

TEST(K222, MatchesNestedLoops) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto h = oracle::random_graph(10, 0.6, seed);
    EXPECT_EQ(count_k222(h), k222_by_nested_loops(h));
  }
}

TEST(K222, EstimateIsClose) {
  auto h = random_h3(14, 0.7, 5);
  const double exact = static_cast<double>(count_k222(h));
  const double est = estimate_k222(h, 20000, 9);
  EXPECT_NEAR(est / exact, 1.0, 0.1);
}
