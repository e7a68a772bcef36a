#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tightham/absorbing.hpp"
#include "tightham/connector.hpp"
#include "tightham/cover.hpp"
#include "tightham/hypergraph.hpp"
#include "tightham/rational.hpp"
#include "tightham/solver.hpp"

namespace tightham {

// Reservoir vertices used by one connection: two bridge vertices on each side
// plus the ten interior vertices of the inner length-12 path.
inline constexpr std::size_t kBridgeInterior = 14;

struct PipelineConfig {
  std::string preset = "desk";
  Rational gamma = ratio(3, 10);
  Rational rho = ratio(1, 10);
  Rational lambda = ratio(1, 9);
  std::size_t L = 2;
  AlphaSchedule schedule = AlphaSchedule::standard();
  Rational degree_threshold = ratio(8, 10);  // below it the run is flagged, not refused
  std::uint64_t seed = 1;

  std::size_t global_retries = 6;
  std::optional<std::size_t> absorbers;  // family size; sized from n when unset
  std::size_t reservoir_retries = 200;
  std::size_t bridge_attempts = 12;  // (w,w',z,z') choices tried per connection
  RetryPolicy connect;
  FamilyOptions family;
  CoverMode cover_mode = CoverMode::Greedy;
  std::uint64_t cover_budget = 2'000'000;
  bool trace = false;  // keep each attempt's absorber records

  // gamma = .3, L = 2, rho = .1, lambda = 1/9.
  static PipelineConfig desk();
  // gamma = 10^-6 / 3, rho = gamma^3, L = ceil(gamma^-3 / 3), lambda = 1/9.
  // For reference and constant checks only; it presumes n >= 10^12.
  static PipelineConfig paper();
  // Reservoir rate gamma^2 / 3.
  Rational p() const { return gamma * gamma / 3; }
};

enum class Stage { Absorbing = 1, Reservoir = 2, Cover = 3, Connect = 4, Absorb = 5 };

const char* to_string(Stage s);

enum class BridgeStep { None, BridgeLeft, BridgeRight, InnerConnect };

const char* to_string(BridgeStep s);

struct ConnectAllResult {
  std::optional<TightCycle> cycle;
  std::vector<TightPath> bridges;  // Pi_i: u v w w' ... z' z y x, order 18
  std::size_t failed_index = 0;    // connection paths[i] -> paths[i+1] that failed
  BridgeStep failed_step = BridgeStep::None;
  std::size_t inner_attempts = 0;
};

struct ConnectAllOptions {
  AlphaSchedule schedule = AlphaSchedule::standard();  // for the inner connections in H[R_i]
  std::size_t bridge_attempts = 12;
  RetryPolicy policy;
};

// Joins paths[0], paths[1], ..., paths[m-1] into one tight cycle in this
// order. Connection i uses exactly 14 vertices of R, drawn from
// R_i = R minus the earlier connections. Throws Capacity when |R| < 14 m and
// InvalidArgument when the endpairs are not in G_{1/3} or the paths meet each
// other or R.
ConnectAllResult connect_all_through_reservoir(const Hypergraph3& h, const std::vector<TightPath>& paths,
                                               const VertexSet& reservoir, const ConnectAllOptions& opt = {});

struct LeftoverAudit {
  std::size_t uncovered = 0;   // |V \ V(C)|
  std::size_t capacity = 0;    // absorbers on A
  std::size_t assignable = 0;  // size of the largest vertex-to-absorber matching
  std::size_t deficit = 0;     // uncovered - assignable
  std::vector<Vertex> unassigned;
  bool ok() const noexcept { return deficit == 0; }
};

LeftoverAudit leftover_audit(const AbsorbingPath& a, const VertexSet& uncovered);

struct StageTiming {
  Stage stage;
  double ms = 0;
};

struct AttemptReport {
  std::size_t attempt = 0;
  std::uint64_t seed = 0;
  std::size_t absorbers_target = 0;
  std::size_t absorbers = 0;
  std::size_t absorbing_order = 0;
  std::size_t reservoir_target = 0;
  std::size_t reservoir = 0;
  std::size_t reservoir_samples = 0;
  std::size_t cover_target = 0;  // K_{L,L,L} copies the sizing asked for
  std::size_t cover_copies = 0;
  std::vector<std::size_t> path_orders;
  std::size_t connections = 0;
  std::optional<LeftoverAudit> audit;
  std::optional<Stage> failed_stage;
  std::string cause;
  std::vector<StageTiming> timings;
  // Salvage data of the stage that failed.
  std::vector<Vertex> absorbing_path;
  std::vector<Vertex> reservoir_vertices;
  std::vector<std::vector<Vertex>> paths;
  std::vector<AbsorberRecord> trace;
};

struct RunReport {
  std::string preset;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::uint64_t edges = 0;
  Rational min_degree_ratio;
  bool degree_applicable = false;  // delta_1 >= threshold C(n-1, 2)
  std::vector<AttemptReport> attempts;
  bool success = false;
  std::optional<TightCycle> cycle;  // verified, Hamiltonian
  std::vector<Vertex> leftover;     // T: the vertices absorbed in the last stage
  std::string verdict;              // "cycle" or "failed"
};

// The five stages with global retries; never throws on stage failure.
RunReport run(const Hypergraph3& h, const PipelineConfig& cfg = PipelineConfig::desk());

// Stable JSON; timings are left out when `timings` is false so reruns can be
// compared byte for byte.
std::string to_json(const RunReport& r, bool timings = true);

}  // namespace tightham
