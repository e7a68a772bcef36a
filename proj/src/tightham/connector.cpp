#include "tightham/connector.hpp"

#include <algorithm>

#include "tightham/error.hpp"

namespace tightham {

Rational g(const Rational& c, const Rational& alpha) {
  if (!(alpha > 0 && alpha < c && c < 1))
    fail(ErrorCode::InvalidArgument, "g_c(alpha) needs 0 < alpha < c < 1, got c=" + to_string(c) +
                                         " alpha=" + to_string(alpha));
  return (c - alpha) / (1 - alpha);
}

AlphaSchedule AlphaSchedule::standard() {
  return {{ratio(33, 100), ratio(39, 100), ratio(48, 100), ratio(58, 100), ratio(65, 100)}, ratio(799, 1000)};
}

std::vector<Rational> AlphaSchedule::margins() const {
  std::vector<Rational> m;
  for (std::size_t i = 0; i + 1 < alphas.size(); ++i) m.push_back(alphas[i] + g(c, alphas[i + 1]) - 1);
  return m;
}

void AlphaSchedule::validate() const {
  if (alphas.size() < 2) fail(ErrorCode::InvalidArgument, "schedule needs at least two thresholds");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0 && alphas[i] < c))
      fail(ErrorCode::InvalidArgument, "threshold " + to_string(alphas[i]) + " outside (0, c)");
    if (i && alphas[i] <= alphas[i - 1]) fail(ErrorCode::InvalidArgument, "thresholds must increase");
  }
  if (!(c < 1)) fail(ErrorCode::InvalidArgument, "c must be below 1");
  auto m = margins();
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] <= 0)
      fail(ErrorCode::InvalidArgument, "alpha_" + std::to_string(i + 1) + " + g(alpha_" + std::to_string(i + 2) +
                                           ") = " + to_string(m[i] + 1) + " is not > 1");
}

bool AlphaSchedule::feasible() const {
  try {
    validate();
    return true;
  } catch (const Error&) {
    return false;
  }
}

ClaimFCheck check_claim_f(const Hypergraph3& h, const Rational& alpha, const Rational& c) {
  const Rational gc = g(c, alpha);
  const std::size_t n = h.order();
  ClaimFCheck r;
  r.bound = gc * Rational(n - 1);
  if (n < 3 || Rational(min_degrees(h).vertex) < c * Rational(choose2(n - 1))) return r;
  const PairGraph large = large_pair_graph(h, alpha);
  r.status = ClaimFCheck::Status::Holds;
  r.min_large_degree = n;
  for (Vertex v = 0; v < n; ++v) {
    const std::uint64_t d = large.degree(v);
    if (d < r.min_large_degree) r.min_large_degree = d;
    if (Rational(d) < r.bound && !r.witness) {
      r.status = ClaimFCheck::Status::Violated;
      r.witness = v;
    }
  }
  return r;
}

PiCount pi_lower_bound(const VertexSet& b, const VertexSet& r) {
  const std::uint64_t nb = b.count(), nr = r.count();
  if (nb > nr) fail(ErrorCode::InvalidArgument, "Pi(B,R) needs |B| <= |R|");
  const std::uint64_t common = b.intersection_count(r);
  return {nb * nr - choose2(common + 1), choose2(nb)};
}

bool escalation_slack_holds(const AlphaSchedule& s, std::size_t step, std::uint64_t n) {
  if (step < 1 || step >= s.alphas.size()) fail(ErrorCode::OutOfRange, "escalation step out of range");
  if (n < 2) return false;
  const Rational lhs = g(s.c, s.alphas[step]) * Rational(n - 1);
  const Rational rhs = (1 - s.alphas[step - 1]) * Rational(n - 2) + 20;
  return lhs >= rhs;
}

std::optional<std::uint64_t> escalation_slack_from(const AlphaSchedule& s, std::size_t step) {
  if (step < 1 || step >= s.alphas.size()) fail(ErrorCode::OutOfRange, "escalation step out of range");
  // g (n-1) >= (1-a)(n-2) + 20  <=>  (g - 1 + a) n >= g - 2(1-a) + 20.
  const Rational gg = g(s.c, s.alphas[step]);
  const Rational a = s.alphas[step - 1];
  const Rational slope = gg - 1 + a;
  if (slope <= 0) return std::nullopt;
  const Rational rhs = gg - 2 * (1 - a) + 20;
  BigInt n = ceil(rhs / slope);
  if (n < 2) n = 2;
  return n.convert_to<std::uint64_t>();
}

bool escalation_union_holds(const AlphaSchedule& s, std::uint64_t n) {
  const Rational a = s.alphas.at(0);
  return a * Rational(n - 2) + (1 - a) * Rational(n - 1) + 20 > Rational(n) + 18;
}

ConnectorContext::ConnectorContext(const Hypergraph3& h, AlphaSchedule schedule)
    : h_(h), schedule_(std::move(schedule)) {
  schedule_.validate();
  for (const auto& a : schedule_.alphas) large_.push_back(large_pair_graph(h, a));
  nbh_ = std::make_unique<PairNeighborhoods>(h);
}

namespace {

std::optional<Vertex> pick(const VertexSet& cand, PickMode mode, Rng* rng) {
  if (mode == PickMode::Greedy || !rng) return cand.first();
  const std::size_t k = cand.count();
  if (k == 0) return std::nullopt;
  std::size_t skip = rng->below(k);
  for (auto v = cand.first(); v; v = cand.next(*v + 1))
    if (skip-- == 0) return v;
  return std::nullopt;
}

}  // namespace

EscalateResult escalate(const ConnectorContext& ctx, OrderedPair e, const VertexSet& avoid, PickMode mode, Rng* rng) {
  const std::size_t n = ctx.graph().order();
  if (avoid.universe() != n) fail(ErrorCode::InvalidArgument, "avoid set universe does not match n");
  if (e.first >= n || e.second >= n || e.first == e.second)
    fail(ErrorCode::InvalidArgument, "endpair must be two distinct vertices in range");
  if (!ctx.large(0).has_edge(e.first, e.second))
    fail(ErrorCode::InvalidArgument, "endpair (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                                         ") is not in G_" + to_string(ctx.schedule().alphas[0]));
  std::vector<Vertex> seq = {e.first, e.second};
  VertexSet blocked = avoid;
  blocked.insert(e.first);
  blocked.insert(e.second);
  EscalateResult r;
  for (std::size_t step = 1; step < ctx.schedule().alphas.size(); ++step) {
    const Vertex a = seq[seq.size() - 2], b = seq.back();
    VertexSet cand = ctx.nbh().of(a, b) & ctx.large(step).neighbors(b);
    cand -= blocked;
    auto v = pick(cand, mode, rng);
    if (!v) {
      r.failed_step = step;
      return r;
    }
    seq.push_back(*v);
    blocked.insert(*v);
  }
  r.path = TightPath{std::move(seq)};
  return r;
}

const char* to_string(ConnectFailure f) {
  switch (f) {
    case ConnectFailure::None: return "none";
    case ConnectFailure::EscalateFirst: return "escalate-first";
    case ConnectFailure::EscalateSecond: return "escalate-second";
    case ConnectFailure::Join: return "join";
  }
  return "none";
}

namespace {

// x = u6 in N(u4,u5), y = v6 in N(v4,v5), with {u5,x,y} and {x,y,v5} edges.
// x is tried by decreasing |N(v4,v5) ∩ N(u5,x)|, then y lowest (or random).
std::optional<std::pair<Vertex, Vertex>> join(const ConnectorContext& ctx, const std::vector<Vertex>& pu,
                                              const std::vector<Vertex>& pv, const VertexSet& blocked,
                                              PickMode mode, Rng* rng) {
  const auto& nbh = ctx.nbh();
  const Vertex u4 = pu[4], u5 = pu[5], v4 = pv[4], v5 = pv[5];
  const VertexSet b = nbh.of(u4, u5) - blocked;
  const VertexSet r = nbh.of(v4, v5) - blocked;
  std::vector<std::pair<std::size_t, Vertex>> xs;
  b.for_each([&](Vertex x) { xs.emplace_back(r.intersection_count(nbh.of(u5, x)), x); });
  std::stable_sort(xs.begin(), xs.end(), [](const auto& p, const auto& q) { return p.first > q.first; });
  for (auto [score, x] : xs) {
    if (score == 0) break;
    VertexSet ys = r & nbh.of(u5, x) & nbh.of(x, v5);
    ys.erase(x);
    if (auto y = pick(ys, mode, rng)) return std::pair{x, *y};
  }
  return std::nullopt;
}

}  // namespace

ConnectResult connect(const ConnectorContext& ctx, OrderedPair e, OrderedPair f, const VertexSet& forbidden,
                      const ConnectOptions& opt) {
  const Hypergraph3& h = ctx.graph();
  const std::size_t n = h.order();
  if (forbidden.universe() != n) fail(ErrorCode::InvalidArgument, "forbidden set universe does not match n");
  const Vertex ends[4] = {e.first, e.second, f.first, f.second};
  for (Vertex v : ends)
    if (v >= n) fail(ErrorCode::OutOfRange, "endpair vertex " + std::to_string(v) + " out of range");
  {
    std::vector<Vertex> s(ends, ends + 4);
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      fail(ErrorCode::InvalidArgument, "endpairs must be four distinct vertices");
  }
  Rng rng(opt.seed);
  Rng* rp = opt.mode == PickMode::Random ? &rng : nullptr;
  ConnectResult res;

  auto fallback = [&]() {
    if (!opt.solver_fallback) return;
    VertexSet allowed = forbidden.complement();
    for (Vertex v : ends) allowed.insert(v);
    auto p = find_tight_path(h, e, f, {14, 14}, allowed, opt.solver_budget);
    if (p.path) {
      res.path = std::move(p.path);
      res.failure = ConnectFailure::None;
      res.failed_step = 0;
      res.used_solver = true;
    }
  };

  VertexSet avoid = forbidden;
  avoid.insert(f.first);
  avoid.insert(f.second);
  auto pu = escalate(ctx, e, avoid, opt.mode, rp);
  if (!pu.path) {
    res.failure = ConnectFailure::EscalateFirst;
    res.failed_step = pu.failed_step;
    fallback();
    return res;
  }
  avoid = forbidden;
  for (Vertex v : pu.path->vertices) avoid.insert(v);
  auto pv = escalate(ctx, f, avoid, opt.mode, rp);
  if (!pv.path) {
    res.failure = ConnectFailure::EscalateSecond;
    res.failed_step = pv.failed_step;
    fallback();
    return res;
  }
  for (Vertex v : pv.path->vertices) avoid.insert(v);
  auto xy = join(ctx, pu.path->vertices, pv.path->vertices, avoid, opt.mode, rp);
  if (!xy) {
    res.failure = ConnectFailure::Join;
    fallback();
    return res;
  }
  std::vector<Vertex> seq = pu.path->vertices;
  seq.push_back(xy->first);
  seq.push_back(xy->second);
  seq.insert(seq.end(), pv.path->vertices.rbegin(), pv.path->vertices.rend());
  TightPath p{std::move(seq)};
  auto check = verify_path(h, p);
  if (!check.ok) fail(ErrorCode::Internal, "connect produced an invalid path: " + check.reason);
  res.path = std::move(p);
  return res;
}

ConnectResult connect_with_retries(const ConnectorContext& ctx, OrderedPair e, OrderedPair f,
                                   const VertexSet& forbidden, const RetryPolicy& policy) {
  ConnectOptions opt;
  auto r = connect(ctx, e, f, forbidden, opt);
  if (r.path) return r;
  opt.mode = PickMode::Random;
  for (std::size_t i = 0; i < policy.random_attempts; ++i) {
    opt.seed = derive_seed(policy.seed, i);
    auto again = connect(ctx, e, f, forbidden, opt);
    if (again.path) return again;
  }
  if (policy.solver_fallback) {
    opt.mode = PickMode::Greedy;
    opt.solver_fallback = true;
    opt.solver_budget = policy.solver_budget;
    auto last = connect(ctx, e, f, forbidden, opt);
    if (last.path) return last;
  }
  return r;
}

}  // namespace tightham
