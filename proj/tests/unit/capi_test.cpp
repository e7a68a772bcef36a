#include <gtest/gtest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <nlohmann/json.hpp>
#include <string>

#include "tightham.h"

using nlohmann::json;

namespace {

struct GraphDeleter {
  void operator()(th_graph* g) const { th_graph_free(g); }
};
using GraphPtr = std::unique_ptr<th_graph, GraphDeleter>;

GraphPtr make(const char* family, uint32_t n, double p = 0.5, uint64_t seed = 1) {
  th_graph* g = nullptr;
  EXPECT_EQ(th_graph_generate(family, n, p, seed, &g), TH_OK) << th_last_error();
  return GraphPtr(g);
}

json take(char* s) {
  json j = json::parse(s);
  th_free_string(s);
  return j;
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("tightham_capi_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(CApi, VersionAndSeedSplit) {
  EXPECT_STRNE(th_version(), "");
  EXPECT_EQ(th_derive_seed(7, 3), th_derive_seed(7, 3));
  EXPECT_NE(th_derive_seed(7, 3), th_derive_seed(7, 4));
  EXPECT_NE(th_derive_seed(7, 3), th_derive_seed(8, 3));
}

TEST(CApi, NullArgumentsAreRejected) {
  uint32_t n = 0;
  EXPECT_EQ(th_graph_order(nullptr, &n), TH_INVALID_ARGUMENT);
  EXPECT_STRNE(th_last_error(), "");
  th_graph* g = nullptr;
  EXPECT_EQ(th_graph_generate(nullptr, 5, 0.5, 1, &g), TH_INVALID_ARGUMENT);
  EXPECT_EQ(th_graph_create(5, nullptr), TH_INVALID_ARGUMENT);
  th_graph_free(nullptr);
  th_free_string(nullptr);
}

TEST(CApi, EdgesAndBounds) {
  th_graph* raw = nullptr;
  ASSERT_EQ(th_graph_create(6, &raw), TH_OK);
  GraphPtr g(raw);
  ASSERT_EQ(th_graph_add_edge(g.get(), 4, 0, 2), TH_OK);
  int has = 0;
  ASSERT_EQ(th_graph_has_edge(g.get(), 2, 4, 0, &has), TH_OK);
  EXPECT_EQ(has, 1);
  uint64_t m = 0;
  ASSERT_EQ(th_graph_edge_count(g.get(), &m), TH_OK);
  EXPECT_EQ(m, 1u);
  EXPECT_EQ(th_graph_add_edge(g.get(), 0, 1, 6), TH_OUT_OF_RANGE);
  EXPECT_EQ(th_graph_add_edge(g.get(), 0, 1, 1), TH_INVALID_ARGUMENT);
}

TEST(CApi, UnknownFamilyIsInvalid) {
  th_graph* g = nullptr;
  EXPECT_EQ(th_graph_generate("iv", 9, 0.5, 1, &g), TH_INVALID_ARGUMENT);
  EXPECT_EQ(g, nullptr);
  EXPECT_NE(std::string(th_last_error()).find("iv"), std::string::npos);
}

TEST(CApi, SaveLoadRoundTripsBothFormats) {
  auto g = make("random", 13, 0.4, 9);
  for (int binary : {0, 1}) {
    const auto path = scratch(binary ? "b.h3" : "t.h3");
    ASSERT_EQ(th_graph_save(g.get(), path.c_str(), binary), TH_OK);
    th_graph* raw = nullptr;
    ASSERT_EQ(th_graph_load(path.c_str(), &raw), TH_OK) << th_last_error();
    GraphPtr back(raw);
    char* a = nullptr;
    char* b = nullptr;
    ASSERT_EQ(th_graph_stats(g.get(), &a), TH_OK);
    ASSERT_EQ(th_graph_stats(back.get(), &b), TH_OK);
    EXPECT_EQ(take(a), take(b));
    for (uint32_t x = 0; x < 13; ++x)
      for (uint32_t y = x + 1; y < 13; ++y)
        for (uint32_t z = y + 1; z < 13; ++z) {
          int p = 0, q = 0;
          th_graph_has_edge(g.get(), x, y, z, &p);
          th_graph_has_edge(back.get(), x, y, z, &q);
          ASSERT_EQ(p, q);
        }
    std::filesystem::remove(path);
  }
}

TEST(CApi, MalformedFileNamesTheLine) {
  const auto path = scratch("bad.h3");
  std::ofstream(path) << "5 2\n0 1 2\n3 3 4\n";
  th_graph* g = nullptr;
  EXPECT_EQ(th_graph_load(path.c_str(), &g), TH_PARSE);
  EXPECT_EQ(g, nullptr);
  EXPECT_NE(std::string(th_last_error()).find("line 3"), std::string::npos) << th_last_error();
  std::filesystem::remove(path);
  EXPECT_EQ(th_graph_load(path.c_str(), &g), TH_IO);
}

TEST(CApi, SolverVerdicts) {
  auto absent = make("i", 9);
  char* out = nullptr;
  ASSERT_EQ(th_solve_cycle(absent.get(), 1'000'000, &out), TH_OK);
  EXPECT_EQ(take(out)["ham"], "absent");

  auto complete = make("complete", 8);
  ASSERT_EQ(th_solve_cycle(complete.get(), 1'000'000, &out), TH_OK);
  const auto j = take(out);
  EXPECT_EQ(j["ham"], "present");
  const auto cycle = j["cycle"].get<std::vector<uint32_t>>();
  ASSERT_EQ(th_check_cycle(complete.get(), cycle.data(), cycle.size(), &out), TH_OK);
  EXPECT_TRUE(take(out)["hamiltonian"]);

  auto big = make("complete", 65);
  EXPECT_EQ(th_solve_cycle(big.get(), 1000, &out), TH_CAPACITY);
}

TEST(CApi, CheckCycleReportsReason) {
  auto g = make("i", 9);
  const uint32_t order[] = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  char* out = nullptr;
  ASSERT_EQ(th_check_cycle(g.get(), order, 9, &out), TH_OK);
  const auto j = take(out);
  EXPECT_FALSE(j["ok"]);
  EXPECT_FALSE(j["hamiltonian"]);
  EXPECT_FALSE(j["reason"].get<std::string>().empty());
}

TEST(CApi, BadOptionsAreParseErrors) {
  auto g = make("complete", 30);
  char* out = nullptr;
  EXPECT_EQ(th_pipeline(g.get(), "{not json", &out), TH_PARSE);
  EXPECT_EQ(th_cover(g.get(), R"({"rho": "1/0"})", &out), TH_PARSE);
  EXPECT_EQ(th_cover(g.get(), R"({"mode": "best"})", &out), TH_INVALID_ARGUMENT);
}

TEST(CApi, PipelineReportIsDeterministic) {
  auto g = make("complete", 60);
  const char* opts = R"({"seed": 4, "timings": false})";
  char* a = nullptr;
  char* b = nullptr;
  ASSERT_EQ(th_pipeline(g.get(), opts, &a), TH_OK);
  ASSERT_EQ(th_pipeline(g.get(), opts, &b), TH_OK);
  EXPECT_STREQ(a, b);
  const auto j = take(a);
  th_free_string(b);
  EXPECT_EQ(j["schema"], "tightham.run/1");
  EXPECT_TRUE(j["success"]);
  const auto cycle = j["cycle"].get<std::vector<uint32_t>>();
  char* out = nullptr;
  ASSERT_EQ(th_check_cycle(g.get(), cycle.data(), cycle.size(), &out), TH_OK);
  EXPECT_TRUE(take(out)["hamiltonian"]);
}

TEST(CApi, InvariantsAndConnectTrials) {
  auto g = make("random", 40, 0.95, 3);
  char* out = nullptr;
  ASSERT_EQ(th_invariants(g.get(), 1, &out), TH_OK);
  EXPECT_TRUE(take(out)["ok"]);
  ASSERT_EQ(th_connect_trials(g.get(), 20, R"({"seed": 2})", &out), TH_OK);
  const auto j = take(out);
  EXPECT_EQ(j["trials"], 20);
  EXPECT_LE(j["successes"].get<int>(), j["attempted"].get<int>());
  EXPECT_GE(j["rate"].get<double>(), 0.9);
}

TEST(CApi, ThresholdReturnsWitness) {
  char* out = nullptr;
  th_graph* w = nullptr;
  ASSERT_EQ(th_threshold(7, R"({"seed": 1, "restarts": 2, "iterations": 50})", &out, &w), TH_OK);
  GraphPtr witness(w);
  const auto j = take(out);
  uint32_t n = 0;
  ASSERT_EQ(th_graph_order(witness.get(), &n), TH_OK);
  EXPECT_EQ(n, 7u);
  uint64_t m = 0;
  th_graph_edge_count(witness.get(), &m);
  EXPECT_EQ(j["witness_edges"].get<uint64_t>(), m);
  ASSERT_EQ(th_solve_cycle(witness.get(), 10'000'000, &out), TH_OK);
  EXPECT_EQ(take(out)["ham"], "absent");
}
