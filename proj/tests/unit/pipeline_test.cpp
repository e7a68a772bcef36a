#include <gtest/gtest.h>

#include <algorithm>
#include <nlohmann/json.hpp>

#include "support/oracles.hpp"
#include "tightham/constructions.hpp"
#include "tightham/error.hpp"
#include "tightham/pipeline.hpp"

using namespace tightham;

namespace {

// Every vertex exactly once and every cyclic window an edge, read off the raw
// edge set.
bool is_ham_cycle(const Hypergraph3& h, const std::vector<Vertex>& c) {
  const oracle::EdgeSet e(h);
  std::vector<Vertex> s = c;
  std::sort(s.begin(), s.end());
  if (s.size() != h.order()) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] != i) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!e.has(c[i], c[(i + 1) % c.size()], c[(i + 2) % c.size()])) return false;
  return true;
}

// Some ordering of `block` that is a tight path with both endpairs large.
std::optional<TightPath> path_on(const Hypergraph3& h, const PairGraph& large, std::vector<Vertex> block) {
  const oracle::EdgeSet e(h);
  std::sort(block.begin(), block.end());
  do {
    bool ok = large.has_edge(block[0], block[1]) && large.has_edge(block[block.size() - 1], block[block.size() - 2]);
    for (std::size_t i = 0; ok && i + 2 < block.size(); ++i) ok = e.has(block[i], block[i + 1], block[i + 2]);
    if (ok) return TightPath{block};
  } while (std::next_permutation(block.begin(), block.end()));
  return std::nullopt;
}

VertexSet range_set(std::size_t n, Vertex from, Vertex to) {
  VertexSet s(n);
  for (Vertex v = from; v < to; ++v) s.insert(v);
  return s;
}

}  // namespace

TEST(Pipeline, CompleteGraphOnSixtyVertices) {
  const auto h = Hypergraph3::complete(60);
  const auto r = run(h);
  ASSERT_TRUE(r.success);
  ASSERT_TRUE(r.cycle);
  EXPECT_TRUE(is_ham_cycle(h, r.cycle->vertices));
  EXPECT_EQ(r.verdict, "cycle");
  EXPECT_TRUE(r.degree_applicable);
  const auto& a = r.attempts.back();
  ASSERT_TRUE(a.audit);
  EXPECT_TRUE(a.audit->ok());
  EXPECT_EQ(a.reservoir, kBridgeInterior * a.connections);
  EXPECT_EQ(r.leftover.size(), a.audit->uncovered);
}

TEST(Pipeline, DenseRandomRunIsVerifiedAndRepeatable) {
  const auto h = oracle::random_graph(100, 0.95, 5);
  PipelineConfig cfg = PipelineConfig::desk();
  cfg.seed = 17;
  const auto r1 = run(h, cfg);
  const auto r2 = run(h, cfg);
  ASSERT_TRUE(r1.success);
  EXPECT_TRUE(is_ham_cycle(h, r1.cycle->vertices));
  EXPECT_EQ(to_json(r1, false), to_json(r2, false));
  EXPECT_EQ(r1.cycle->vertices, r2.cycle->vertices);
}

TEST(Pipeline, StageSizesAddUpToN) {
  const auto h = oracle::random_graph(100, 0.95, 8);
  const auto r = run(h);
  ASSERT_TRUE(r.success);
  // |A| + |R| + cover paths + T = n
  const auto& a = r.attempts.back();
  std::size_t cover = 0;
  for (auto o : a.path_orders) cover += o;
  EXPECT_EQ(a.absorbing_order + a.reservoir + cover + r.leftover.size(), h.order());
  EXPECT_EQ(a.connections, a.path_orders.size() + 1);
}

TEST(Pipeline, ConstructionOneGivesAFailureReport) {
  const auto h = construction_i(30);
  const auto r = run(h);
  EXPECT_FALSE(r.success);
  EXPECT_FALSE(r.cycle);
  EXPECT_FALSE(r.degree_applicable);
  ASSERT_FALSE(r.attempts.empty());
  for (const auto& a : r.attempts) {
    ASSERT_TRUE(a.failed_stage);
    EXPECT_FALSE(a.cause.empty());
  }
  const auto j = nlohmann::json::parse(to_json(r));
  EXPECT_EQ(j["verdict"], "failed");
  EXPECT_TRUE(j["cycle"].is_null());
  EXPECT_EQ(j["flags"][0], "inapplicable-degree");
  EXPECT_TRUE(j["attempts"][0].contains("salvage"));
  EXPECT_TRUE(j["attempts"][0]["failed_stage"].is_string());
}

TEST(Pipeline, ConstructionOneAtSixtyFailsInALaterStage) {
  const auto r = run(construction_i(60));
  EXPECT_FALSE(r.success);
  bool past_sizing = false;
  for (const auto& a : r.attempts) past_sizing |= *a.failed_stage >= Stage::Cover;
  EXPECT_TRUE(past_sizing);
}

TEST(Pipeline, JsonFieldsAreStable) {
  const auto r = run(Hypergraph3::complete(40));
  ASSERT_TRUE(r.success);
  const auto j = nlohmann::json::parse(to_json(r));
  for (const char* k : {"schema", "preset", "seed", "n", "edges", "min_degree_ratio", "flags", "verdict", "success",
                        "attempts", "leftover", "cycle"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["schema"], "tightham.run/1");
  EXPECT_EQ(j["min_degree_ratio"], "1");
  EXPECT_TRUE(j["attempts"][0].contains("timings_ms"));
  EXPECT_FALSE(nlohmann::json::parse(to_json(r, false))["attempts"][0].contains("timings_ms"));
}

TEST(PipelineConfig, PaperPresetDerivesRhoAndL) {
  const auto c = PipelineConfig::paper();
  EXPECT_EQ(c.gamma, ratio(1, 3'000'000));
  EXPECT_EQ(c.rho, c.gamma * c.gamma * c.gamma);
  // gamma^-3 / 3 = 27 * 10^18 / 3
  EXPECT_EQ(c.L, std::size_t{9'000'000'000'000'000'000u});
  EXPECT_EQ(c.lambda, ratio(1, 9));
  const auto d = PipelineConfig::desk();
  EXPECT_EQ(d.gamma, ratio(3, 10));
  EXPECT_EQ(d.L, 2u);
  EXPECT_EQ(d.p(), ratio(3, 100));
}

TEST(ConnectAll, SinglePathAroundCompleteGraph) {
  const std::size_t n = 30;
  const auto h = Hypergraph3::complete(n);
  const TightPath a{{0, 1, 2, 3, 4}};
  const VertexSet r = range_set(n, 10, 24);
  const auto res = connect_all_through_reservoir(h, {a}, r);
  ASSERT_TRUE(res.cycle);
  ASSERT_EQ(res.bridges.size(), 1u);
  EXPECT_EQ(res.bridges[0].order(), 18u);
  EXPECT_EQ(res.cycle->vertices.size(), 5u + 14u);
  EXPECT_TRUE(verify_cycle(h, *res.cycle).ok);
  for (std::size_t j = 2; j < 16; ++j) EXPECT_TRUE(r.contains(res.bridges[0].vertices[j]));
}

TEST(ConnectAll, SmallReservoirIsRejectedUpFront) {
  const auto h = Hypergraph3::complete(40);
  const std::vector<TightPath> paths{TightPath{{0, 1, 2, 3}}, TightPath{{4, 5, 6, 7}}};
  try {
    connect_all_through_reservoir(h, paths, range_set(40, 10, 37));
    FAIL() << "expected a capacity error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Capacity);
  }
}

TEST(ConnectAll, RejectsBadInputs) {
  const auto h = Hypergraph3::complete(40);
  // Path meets R.
  EXPECT_THROW(connect_all_through_reservoir(h, {TightPath{{0, 1, 2, 3}}}, range_set(40, 3, 30)), Error);
  // Endpair not large: {0,1,2} is the only edge left through {0,1}.
  auto g = Hypergraph3::complete(40);
  for (Vertex w = 3; w < 40; ++w) g.remove_edge(0, 1, w);
  EXPECT_THROW(connect_all_through_reservoir(g, {TightPath{{0, 1, 2, 3}}}, range_set(40, 10, 30)), Error);
}

TEST(ConnectAll, FourPathsOnDenseInstance) {
  const std::size_t n = 80;
  const auto h = oracle::random_graph(n, 0.95, 31);
  const auto large = large_pair_graph(h, Rational(1, 3));
  std::vector<TightPath> paths;
  for (Vertex b = 0; b < 24; b += 6) {
    auto p = path_on(h, large, {b, b + 1, b + 2, b + 3, b + 4, b + 5});
    ASSERT_TRUE(p);
    paths.push_back(*p);
  }
  const VertexSet r = range_set(n, 24, 80);
  const auto res = connect_all_through_reservoir(h, paths, r);
  ASSERT_TRUE(res.cycle) << to_string(res.failed_step) << " at " << res.failed_index;
  ASSERT_EQ(res.bridges.size(), 4u);
  VertexSet seen(n);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& b = res.bridges[i].vertices;
    EXPECT_EQ(b.size(), 18u);
    EXPECT_TRUE(verify_path(h, res.bridges[i]).ok);
    EXPECT_EQ(b[0], paths[i].vertices[4]);
    EXPECT_EQ(b[17], paths[(i + 1) % 4].vertices[1]);
    for (std::size_t j = 2; j < 16; ++j) {
      EXPECT_TRUE(r.contains(b[j]));
      EXPECT_FALSE(seen.contains(b[j]));
      seen.insert(b[j]);
    }
  }
  // 56 = 4 * 14: the last connection used every remaining reservoir vertex.
  EXPECT_EQ(seen, r);
  EXPECT_TRUE(is_ham_cycle(h, res.cycle->vertices));
}

TEST(LeftoverAudit, ShrunkFamilyReportsExactDeficit) {
  const std::size_t n = 20;
  const auto h = Hypergraph3::complete(n);
  AbsorbingPath a;
  a.path = TightPath{{0, 1, 2, 3, 4}};
  AbsorberRecord rec;
  rec.path = a.path;
  rec.absorbable = range_set(n, 5, 20);
  a.absorbers.push_back(rec);
  a.offsets.push_back(0);
  const auto bad = leftover_audit(a, VertexSet::of(n, {7, 8, 9}));
  EXPECT_FALSE(bad.ok());
  EXPECT_EQ(bad.uncovered, 3u);
  EXPECT_EQ(bad.capacity, 1u);
  EXPECT_EQ(bad.assignable, 1u);
  EXPECT_EQ(bad.deficit, 2u);
  EXPECT_EQ(bad.unassigned.size(), 2u);
  EXPECT_TRUE(leftover_audit(a, VertexSet(n)).ok());
  EXPECT_TRUE(leftover_audit(a, VertexSet::of(n, {11})).ok());
}
