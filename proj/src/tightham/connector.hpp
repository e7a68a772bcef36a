#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tightham/hypergraph.hpp"
#include "tightham/random.hpp"
#include "tightham/rational.hpp"
#include "tightham/solver.hpp"

namespace tightham {

// g_c(alpha) = (c - alpha) / (1 - alpha). Requires 0 < alpha < c < 1.
Rational g(const Rational& c, const Rational& alpha);

struct AlphaSchedule {
  std::vector<Rational> alphas;  // increasing; alphas[0] is the entry threshold
  Rational c;

  // .33, .39, .48, .58, .65 with c = .799.
  static AlphaSchedule standard();

  // alpha_i + g_c(alpha_{i+1}) - 1 for consecutive pairs; all must be > 0.
  std::vector<Rational> margins() const;
  bool feasible() const;
  // Throws InvalidArgument naming the first broken condition.
  void validate() const;
};

struct ClaimFCheck {
  enum class Status { Holds, Violated, Inapplicable };
  Status status = Status::Inapplicable;
  std::uint64_t min_large_degree = 0;  // delta(G_alpha)
  Rational bound;                      // g_c(alpha)(n-1)
  std::optional<Vertex> witness;       // a vertex below the bound
};

// If delta_1(H) >= c C(n-1,2), checks delta(G_alpha) >= g_c(alpha)(n-1) exactly.
ClaimFCheck check_claim_f(const Hypergraph3& h, const Rational& alpha, const Rational& c);

struct PiCount {
  std::uint64_t size = 0;   // |B||R| - C(|B ∩ R| + 1, 2)
  std::uint64_t bound = 0;  // C(|B|, 2)
};

// Unordered pairs {b, r} with b in B, r in R, b != r. Requires |B| <= |R|.
PiCount pi_lower_bound(const VertexSet& b, const VertexSet& r);

// The per-step slack g(alpha_{i+1})(n-1) >= (1 - alpha_i)(n-2) + 20, step in 1..4.
bool escalation_slack_holds(const AlphaSchedule& s, std::size_t step, std::uint64_t n);
// Least n from which the slack holds for good (it is linear in n), or none.
std::optional<std::uint64_t> escalation_slack_from(const AlphaSchedule& s, std::size_t step);
// alpha_1 (n-2) + (1 - alpha_1)(n-1) + 20 > n + 18.
bool escalation_union_holds(const AlphaSchedule& s, std::uint64_t n);

// H plus the pair graphs G_alpha of every schedule entry and the co-neighbourhood
// table, computed once from the ORIGINAL graph.
class ConnectorContext {
 public:
  ConnectorContext(const Hypergraph3& h, AlphaSchedule schedule);

  const Hypergraph3& graph() const noexcept { return h_; }
  const AlphaSchedule& schedule() const noexcept { return schedule_; }
  const PairGraph& large(std::size_t i) const { return large_.at(i); }  // G_{alphas[i]}
  const PairNeighborhoods& nbh() const noexcept { return *nbh_; }

 private:
  const Hypergraph3& h_;
  AlphaSchedule schedule_;
  std::vector<PairGraph> large_;
  std::unique_ptr<PairNeighborhoods> nbh_;
};

enum class PickMode { Greedy, Random };

struct ConnectOptions {
  PickMode mode = PickMode::Greedy;
  std::uint64_t seed = 0;
  bool solver_fallback = false;
  std::uint64_t solver_budget = 5'000'000;
};

struct EscalateResult {
  std::optional<TightPath> path;
  std::size_t failed_step = 0;  // 1-based step with no candidate; 0 on success
};

// Walks u0 u1 -> u5, each new pair u_i u_{i+1} in G_{alphas[i]}. `avoid` holds
// vertices that may not be used as new path vertices.
EscalateResult escalate(const ConnectorContext& ctx, OrderedPair e, const VertexSet& avoid,
                        PickMode mode = PickMode::Greedy, Rng* rng = nullptr);

enum class ConnectFailure { None, EscalateFirst, EscalateSecond, Join };

const char* to_string(ConnectFailure f);

struct ConnectResult {
  std::optional<TightPath> path;  // order 14: u0..u5 u6 v6 v5..v0
  ConnectFailure failure = ConnectFailure::None;
  std::size_t failed_step = 0;
  bool used_solver = false;
};

// Length-12 path from (e.first, e.second) to endpair f, interior outside
// `forbidden`. Throws on bad endpairs (overlap, or e/f not in G_{alphas[0]}).
ConnectResult connect(const ConnectorContext& ctx, OrderedPair e, OrderedPair f, const VertexSet& forbidden,
                      const ConnectOptions& opt = {});

// Greedy first, then seeded random picks, then (optionally) the exact search.
struct RetryPolicy {
  std::size_t random_attempts = 8;
  bool solver_fallback = true;
  std::uint64_t seed = 0;
  std::uint64_t solver_budget = 5'000'000;
};

ConnectResult connect_with_retries(const ConnectorContext& ctx, OrderedPair e, OrderedPair f,
                                   const VertexSet& forbidden, const RetryPolicy& policy = {});

}  // namespace tightham
