#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "tightham/constructions.hpp"
#include "tightham/error.hpp"

using namespace tightham;

namespace {

std::uint64_t count_edges_with_x(std::size_t n, std::size_t x, bool (*keep)(unsigned)) {
  std::uint64_t m = 0;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = b + 1; c < n; ++c)
        if (keep((a < x) + (b < x) + (c < x))) ++m;
  return m;
}

}  // namespace

TEST(Constructions, XSizes) {
  EXPECT_EQ(construction_x_size(1, 9), 4u);
  EXPECT_EQ(construction_x_size(2, 9), 6u);
  EXPECT_EQ(construction_x_size(3, 9), 2u);
  EXPECT_EQ(construction_x_size(1, 4), 2u);
  EXPECT_EQ(construction_x_size(2, 10), 7u);
}

TEST(Constructions, EdgeCounts) {
  EXPECT_EQ(construction_i(9).size(), 54u);
  // n=4, |X|=2: only {x, y1, y2} for each x in X.
  EXPECT_EQ(construction_i(4).size(), 2u);
  auto not2 = [](unsigned k) { return k != 2; };
  EXPECT_EQ(construction_ii(9).size(), count_edges_with_x(9, 6, not2));
  EXPECT_EQ(construction_ii(9).size(), 39u);  // C(6,3) + 6*C(3,2) + C(3,3)
}

TEST(Constructions, NoEdgeHasTwoXVertices) {
  for (std::size_t n = 4; n <= 15; ++n) {
    for (auto [h, x] : {std::pair{construction_i(n), construction_x_size(1, n)},
                        std::pair{construction_ii(n), construction_x_size(2, n)}})
      h.for_each_edge([&](const Triple& t) { EXPECT_NE((t[0] < x) + (t[1] < x) + (t[2] < x), 2); });
  }
}

TEST(Constructions, IiiMatchingBelowThird) {
  for (std::size_t n = 6; n <= 15; ++n) {
    auto h = construction_iii(n);
    auto m = max_matching(h);
    ASSERT_TRUE(m.certified);
    EXPECT_LE(m.edges.size(), construction_x_size(3, n));
    EXPECT_LT(m.edges.size(), n / 3);
  }
  EXPECT_THROW(construction_iii(5), Error);
  EXPECT_EQ(max_matching(construction_iii(9)).edges.size(), 2u);
}

TEST(Constructions, NotHamiltonianAtNine) {
  for (const auto& h : {construction_i(9), construction_ii(9), construction_iii(9)})
    EXPECT_EQ(find_tight_ham_cycle(h).verdict, Verdict::Absent);
  EXPECT_EQ(find_tight_ham_cycle(construction_ii(6)).verdict, Verdict::Absent);
}

TEST(RandomH3, ExtremesAndDeterminism) {
  EXPECT_EQ(random_h3(9, 1.0, 3), Hypergraph3::complete(9));
  EXPECT_EQ(random_h3(9, 0.0, 3).size(), 0u);
  EXPECT_EQ(random_h3(20, 0.5, 7), random_h3(20, 0.5, 7));
  EXPECT_NE(random_h3(20, 0.5, 7), random_h3(20, 0.5, 8));
  EXPECT_THROW(random_h3(5, 1.5, 1), Error);
}

TEST(MinDegRatio, ConstructionsNearFiveNinths) {
  for (std::size_t n = 9; n <= 30; ++n) {
    const Rational five_ninths(5, 9);
    EXPECT_GE(min_deg_ratio(construction_i(n)), five_ninths - Rational(3, n)) << n;
    EXPECT_GE(min_deg_ratio(construction_iii(n)), five_ninths - Rational(3, n)) << n;
  }
  EXPECT_EQ(min_deg_ratio(Hypergraph3::complete(8)), Rational(1));
}

TEST(Threshold, SmallExact) {
  auto r3 = threshold_witness_search(3);
  EXPECT_TRUE(r3.certified);
  EXPECT_EQ(r3.best_delta1 + 1, 1u);
  auto r4 = threshold_witness_search(4);
  EXPECT_TRUE(r4.certified);
  EXPECT_EQ(r4.best_delta1, 2u);
}

TEST(Threshold, FiveByIndependentEnumeration) {
  // Oracle: every 3-graph on 5 vertices, permutation Ham check.
  std::uint64_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << 10); ++mask) {
    Hypergraph3 h(5);
    for (std::uint32_t i = 0; i < 10; ++i)
      if (mask >> i & 1) {
        auto t = triple_unrank(i);
        h.add_edge(t[0], t[1], t[2]);
      }
    if (oracle::has_tight_ham_cycle(h)) continue;
    best = std::max(best, min_degrees(h).vertex);
  }
  auto r = threshold_witness_search(5);
  EXPECT_TRUE(r.certified);
  EXPECT_EQ(r.best_delta1, best);
  EXPECT_EQ(min_degrees(r.witness).vertex, best);
  EXPECT_FALSE(oracle::has_tight_ham_cycle(r.witness));
}

TEST(Threshold, HillClimbStartsFromConstructions) {
  ThresholdOptions opt;
  opt.restarts = 3;
  opt.iterations = 60;
  opt.seed = 4;
  auto r = threshold_witness_search(9, opt);
  EXPECT_FALSE(r.certified);
  EXPECT_GE(r.best_delta1, min_degrees(construction_i(9)).vertex);
  EXPECT_EQ(find_tight_ham_cycle(r.witness).verdict, Verdict::Absent);
  EXPECT_THROW(threshold_witness_search(15), Error);
}
