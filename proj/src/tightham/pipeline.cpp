#include "tightham/pipeline.hpp"

#include <chrono>
#include <nlohmann/json.hpp>

#include "tightham/error.hpp"
#include "tightham/random.hpp"
#include "tightham/reservoir.hpp"

namespace tightham {

PipelineConfig PipelineConfig::desk() { return PipelineConfig{}; }

PipelineConfig PipelineConfig::paper() {
  PipelineConfig c;
  c.preset = "paper";
  // gamma0 depends on an unspecified supersaturation constant; the second
  // term of the min is the binding one we can state.
  c.gamma = ratio(1, 3'000'000);
  c.rho = c.gamma * c.gamma * c.gamma;
  c.L = ceil(1 / (3 * c.rho)).convert_to<std::size_t>();
  c.lambda = ratio(1, 9);
  return c;
}

const char* to_string(Stage s) {
  switch (s) {
    case Stage::Absorbing: return "absorbing";
    case Stage::Reservoir: return "reservoir";
    case Stage::Cover: return "cover";
    case Stage::Connect: return "connect";
    case Stage::Absorb: return "absorb";
  }
  return "absorbing";
}

const char* to_string(BridgeStep s) {
  switch (s) {
    case BridgeStep::None: return "none";
    case BridgeStep::BridgeLeft: return "bridge-left";
    case BridgeStep::BridgeRight: return "bridge-right";
    case BridgeStep::InnerConnect: return "inner-connect";
  }
  return "none";
}

ConnectAllResult connect_all_through_reservoir(const Hypergraph3& h, const std::vector<TightPath>& paths,
                                               const VertexSet& reservoir, const ConnectAllOptions& opt) {
  const std::size_t n = h.order();
  const std::size_t m = paths.size();
  if (m == 0) fail(ErrorCode::InvalidArgument, "no paths to connect");
  if (reservoir.universe() != n) fail(ErrorCode::InvalidArgument, "reservoir universe does not match n");
  if (reservoir.count() < kBridgeInterior * m)
    fail(ErrorCode::Capacity, "reservoir of " + std::to_string(reservoir.count()) + " vertices cannot host " +
                                  std::to_string(m) + " connections of " + std::to_string(kBridgeInterior));
  const PairGraph g13 = large_pair_graph(h, Rational(1, 3));
  VertexSet on_paths(n);
  for (const auto& p : paths) {
    if (p.order() < 2) fail(ErrorCode::InvalidArgument, "paths need at least two vertices");
    for (Vertex v : p.vertices) {
      if (v >= n) fail(ErrorCode::InvalidArgument, "path vertex out of range");
      if (on_paths.contains(v) || reservoir.contains(v))
        fail(ErrorCode::InvalidArgument, "vertex " + std::to_string(v) + " is shared by two paths or lies in R");
      on_paths.insert(v);
    }
    for (auto [a, b] : {p.start_pair(), p.end_pair()})
      if (!g13.has_edge(a, b))
        fail(ErrorCode::InvalidArgument,
             "endpair " + std::to_string(a) + "," + std::to_string(b) + " is not in G_{1/3}");
  }

  ConnectAllResult res;
  VertexSet avail = reservoir;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& p = paths[i].vertices;
    const auto& q = paths[(i + 1) % m].vertices;
    const Vertex u = p[p.size() - 2], v = p.back();
    const Vertex y = q[0], x = q[1];

    const Compacted sub = compact(h, avail);
    std::vector<Vertex> local(n, 0);
    for (Vertex j = 0; j < sub.original.size(); ++j) local[sub.original[j]] = j;
    const ConnectorContext ctx(sub.graph, opt.schedule);
    const PairGraph& entry = ctx.large(0);

    // ... u v w w' ... with uvw, vww' in H and vw, ww' in G_{1/3}; ww' must
    // also be an entry pair of H[R_i] for the inner connection. At most two
    // choices of w' per w keep the candidate list varied.
    using Bridge = std::pair<Vertex, Vertex>;
    auto bridges = [&](Vertex outer, Vertex inner, const VertexSet& skip) {
      std::vector<Bridge> out;
      const auto pool = (avail - skip).to_vector();
      for (Vertex w : pool) {
        if (!h.has_edge(outer, inner, w) || !g13.has_edge(inner, w)) continue;
        std::size_t per_w = 0;
        for (Vertex w2 : pool) {
          if (w2 == w || !h.has_edge(inner, w, w2) || !g13.has_edge(w, w2)) continue;
          if (!entry.has_edge(local[w], local[w2])) continue;
          out.emplace_back(w, w2);
          if (out.size() >= opt.bridge_attempts) return out;
          if (++per_w == 2) break;
        }
      }
      return out;
    };
    const auto left = bridges(u, v, VertexSet(n));
    if (left.empty()) {
      res.failed_index = i;
      res.failed_step = BridgeStep::BridgeLeft;
      return res;
    }

    std::optional<TightPath> inner;
    std::size_t tried = 0;
    bool any_right = false;
    for (const auto& [w, w2] : left) {
      const auto right = bridges(x, y, VertexSet::of(n, {w, w2}));
      any_right |= !right.empty();
      for (const auto& [z, z2] : right) {
        if (tried >= opt.bridge_attempts) break;
        RetryPolicy pol = opt.policy;
        pol.seed = derive_seed(opt.policy.seed, (std::uint64_t{i} << 20) | tried);
        ++tried;
        auto c = connect_with_retries(ctx, {local[w], local[w2]}, {local[z], local[z2]},
                                      VertexSet(sub.original.size()), pol);
        if (c.path) {
          inner = TightPath{};
          for (Vertex a : c.path->vertices) inner->vertices.push_back(sub.original[a]);
          break;
        }
      }
      if (inner || tried >= opt.bridge_attempts) break;
    }
    if (!any_right) {
      res.failed_index = i;
      res.failed_step = BridgeStep::BridgeRight;
      return res;
    }
    res.inner_attempts += tried;
    if (!inner) {
      res.failed_index = i;
      res.failed_step = BridgeStep::InnerConnect;
      return res;
    }
    TightPath pi;
    pi.vertices = {u, v};
    pi.vertices.insert(pi.vertices.end(), inner->vertices.begin(), inner->vertices.end());
    pi.vertices.push_back(y);
    pi.vertices.push_back(x);
    if (auto chk = verify_path(h, pi); !chk.ok)
      fail(ErrorCode::Internal, "connection " + std::to_string(i) + " is not a tight path: " + chk.reason);
    for (Vertex a : inner->vertices) avail.erase(a);
    res.bridges.push_back(std::move(pi));
  }

  TightCycle c;
  for (std::size_t i = 0; i < m; ++i) {
    c.vertices.insert(c.vertices.end(), paths[i].vertices.begin(), paths[i].vertices.end());
    const auto& b = res.bridges[i].vertices;
    c.vertices.insert(c.vertices.end(), b.begin() + 2, b.end() - 2);
  }
  if (auto chk = verify_cycle(h, c); !chk.ok) fail(ErrorCode::Internal, "spliced cycle is invalid: " + chk.reason);
  res.cycle = std::move(c);
  return res;
}

LeftoverAudit leftover_audit(const AbsorbingPath& a, const VertexSet& uncovered) {
  LeftoverAudit au;
  const auto xs = uncovered.to_vector();
  au.uncovered = xs.size();
  au.capacity = a.capacity();
  const auto match = assign_absorbers(a, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (match[i] >= 0)
      ++au.assignable;
    else
      au.unassigned.push_back(xs[i]);
  }
  au.deficit = au.uncovered - au.assignable;
  return au;
}

namespace {

using Clock = std::chrono::steady_clock;

// Vertices one connection plus one cover path consume.
std::size_t period(std::size_t L) { return kBridgeInterior + 3 * L; }

// Smallest family size a >= from whose projected leftover fits a absorbers,
// assuming order-5 absorbers joined by length-12 connections.
std::optional<std::size_t> plan_absorbers(std::size_t n, std::size_t L, std::size_t from) {
  for (std::size_t a = std::max<std::size_t>(from, 1);; ++a) {
    const std::size_t order = 15 * a - 10;
    if (order + kBridgeInterior > n) return std::nullopt;
    if ((n - order - kBridgeInterior) % period(L) <= a) return a;
  }
}

enum class Next { Done, Retry, Larger, Stop };

struct Attempt {
  const Hypergraph3& h;
  const Hypergraph3& hp;
  const PairGraph& g13;
  const ConnectorContext& ctx;
  const PipelineConfig& cfg;
  AttemptReport& ar;
  RunReport& rep;

  Stage stage = Stage::Absorbing;
  Clock::time_point t0 = Clock::now();

  void tick() {
    const auto now = Clock::now();
    ar.timings.push_back({stage, std::chrono::duration<double, std::milli>(now - t0).count()});
    t0 = now;
  }

  Next failed(const std::string& cause, Next next) {
    tick();
    ar.failed_stage = stage;
    ar.cause = cause;
    return next;
  }

  Next go() {
    const std::size_t n = h.order();
    const std::uint64_t sk = ar.seed;

    FamilyOptions fo = cfg.family;
    fo.target = ar.absorbers_target;
    const Family fam = select_family(h, cfg.gamma, derive_seed(sk, streams::kAbsorbers), VertexSet(n), fo);
    if (cfg.trace) ar.trace = fam.records;
    if (fam.records.empty()) return failed("no K_{2,2,2} found in H'", Next::Retry);
    RetryPolicy pol = cfg.connect;
    pol.seed = derive_seed(sk, streams::kConnect);
    const auto built = build_absorbing_path(h, fam.records, make_connect_fn(ctx, pol), VertexSet(n));
    if (!built.absorbing)
      return failed("joining absorber " + std::to_string(built.failed_index) + " to its predecessor failed",
                    Next::Retry);
    const AbsorbingPath& a = *built.absorbing;
    ar.absorbers = a.capacity();
    ar.absorbing_order = a.path.order();
    ar.absorbing_path = a.path.vertices;
    const VertexSet on_a = VertexSet::of(n, a.path.vertices);
    tick();

    stage = Stage::Reservoir;
    const std::size_t rest = n - a.path.order();
    if (rest < kBridgeInterior)
      return failed(std::to_string(rest) + " vertices remain outside A; closing the cycle needs " +
                        std::to_string(kBridgeInterior),
                    Next::Stop);
    const std::size_t c = (rest - kBridgeInterior) / period(cfg.L);
    const std::size_t projected = rest - kBridgeInterior - c * period(cfg.L);
    ar.cover_target = c;
    ar.reservoir_target = kBridgeInterior * (c + 1);
    if (projected > a.capacity())
      return failed("sizing leaves " + std::to_string(projected) + " vertices for " +
                        std::to_string(a.capacity()) + " absorbers",
                    Next::Larger);
    const ReservoirMenu menu = reservoir_menu(h, on_a, cfg.gamma);
    VertexSet r(n);
    if (ar.reservoir_target == rest) {
      r = menu.ground;
    } else {
      // The rate is pinned to the size the later stages consume exactly.
      ReservoirConstraints rc = menu.constraints;
      const Rational want(ar.reservoir_target);
      rc.window = std::make_pair(want, want);
      const auto sampled = sample_reservoir(menu.ground, want / Rational(rest), rc,
                                            derive_seed(sk, streams::kReservoir), cfg.reservoir_retries);
      ar.reservoir_samples = sampled.attempts;
      if (!sampled.reservoir) {
        std::string why = "no sample met the constraints";
        if (!sampled.violations.empty()) {
          const auto& v = sampled.violations.front();
          why += "; last attempt failed " + std::string(to_string(v.kind)) + (v.label.empty() ? "" : " " + v.label);
        }
        return failed(why, Next::Retry);
      }
      r = *sampled.reservoir;
    }
    ar.reservoir = r.count();
    ar.reservoir_vertices = r.to_vector();
    tick();

    stage = Stage::Cover;
    std::vector<TightPath> paths{a.path};
    if (c > 0) {
      CoverOptions co;
      co.mode = cfg.cover_mode;
      co.rho = cfg.rho;
      co.lambda = cfg.lambda;
      co.L = cfg.L;
      co.seed = derive_seed(sk, streams::kCover);
      co.search_budget = cfg.cover_budget;
      co.max_copies = c;
      const auto cover = cover_klll(hp, co, menu.ground - r);
      ar.cover_copies = cover.copies.size();
      for (const auto& q : cover.copies)
        if (auto p = klll_path(q, g13)) {
          ar.path_orders.push_back(p->order());
          ar.paths.push_back(p->vertices);
          paths.push_back(std::move(*p));
        }
    }
    std::size_t placed = a.path.order() + kBridgeInterior * paths.size();
    for (std::size_t i = 1; i < paths.size(); ++i) placed += paths[i].order();
    if (n - placed > a.capacity())
      return failed(std::to_string(paths.size() - 1) + " of " + std::to_string(c) + " cover paths leave " +
                        std::to_string(n - placed) + " vertices for " + std::to_string(a.capacity()) +
                        " absorbers",
                    Next::Larger);
    tick();

    stage = Stage::Connect;
    ConnectAllOptions ca;
    ca.schedule = cfg.schedule;
    ca.bridge_attempts = cfg.bridge_attempts;
    ca.policy = cfg.connect;
    ca.policy.seed = derive_seed(sk, streams::kConnect + 1);
    const auto joined = connect_all_through_reservoir(h, paths, r, ca);
    ar.connections = joined.bridges.size();
    if (!joined.cycle)
      return failed("connection " + std::to_string(joined.failed_index) + " failed at " +
                        to_string(joined.failed_step),
                    Next::Retry);
    tick();

    stage = Stage::Absorb;
    VertexSet covered = VertexSet::of(n, joined.cycle->vertices);
    const VertexSet u = covered.complement();
    ar.audit = leftover_audit(a, u);
    if (!ar.audit->ok())
      return failed(std::to_string(ar.audit->deficit) + " uncovered vertices have no free absorber", Next::Larger);
    const TightPath au = absorb(a, u, h);
    TightCycle cycle;
    cycle.vertices = au.vertices;
    // The cycle starts with A, so A_U replaces its first |A| entries.
    cycle.vertices.insert(cycle.vertices.end(), joined.cycle->vertices.begin() + a.path.order(),
                          joined.cycle->vertices.end());
    if (cycle.vertices.size() != n) fail(ErrorCode::Internal, "spliced cycle misses vertices");
    if (auto chk = verify_cycle(h, cycle); !chk.ok)
      fail(ErrorCode::Internal, "final cycle failed verification: " + chk.reason);
    tick();
    rep.leftover = u.to_vector();
    rep.cycle = std::move(cycle);
    return Next::Done;
  }
};

}  // namespace

RunReport run(const Hypergraph3& h, const PipelineConfig& cfg) {
  const std::size_t n = h.order();
  if (cfg.L < 1) fail(ErrorCode::InvalidArgument, "L must be positive");
  if (!(cfg.gamma > 0 && cfg.gamma < 1)) fail(ErrorCode::InvalidArgument, "gamma must lie in (0,1)");
  cfg.schedule.validate();

  RunReport rep;
  rep.preset = cfg.preset;
  rep.seed = cfg.seed;
  rep.n = n;
  rep.edges = h.size();
  rep.min_degree_ratio = n >= 3 ? min_deg_ratio(h) : Rational(0);
  rep.degree_applicable = n >= 3 && rep.min_degree_ratio >= cfg.degree_threshold;
  rep.verdict = "failed";
  if (n < 6) {
    AttemptReport ar;
    ar.failed_stage = Stage::Absorbing;
    ar.cause = "n = " + std::to_string(n) + " is too small for an absorber";
    rep.attempts.push_back(std::move(ar));
    return rep;
  }

  const Hypergraph3 hp = h_prime(h);
  const PairGraph g13 = large_pair_graph(h, Rational(1, 3));
  const ConnectorContext ctx(h, cfg.schedule);
  std::size_t a = cfg.absorbers.value_or(plan_absorbers(n, cfg.L, 1).value_or(1));

  for (std::size_t k = 0; k < cfg.global_retries; ++k) {
    AttemptReport ar;
    ar.attempt = k;
    ar.seed = derive_seed(cfg.seed, (streams::kRetry << 32) | k);
    ar.absorbers_target = a;
    Attempt at{h, hp, g13, ctx, cfg, ar, rep};
    Next next;
    try {
      next = at.go();
    } catch (const Error& e) {
      next = at.failed(e.what(), e.code() == ErrorCode::Capacity ? Next::Larger : Next::Stop);
    }
    rep.attempts.push_back(std::move(ar));
    if (next == Next::Done) {
      rep.success = true;
      rep.verdict = "cycle";
      break;
    }
    if (next == Next::Stop) break;
    if (next == Next::Larger) {
      // No larger family fits: another seed cannot change the sizing.
      auto bigger = plan_absorbers(n, cfg.L, a + 1);
      if (!bigger && rep.attempts.back().failed_stage == Stage::Reservoir) break;
      if (bigger) a = *bigger;
    }
  }
  return rep;
}

namespace {

nlohmann::json audit_json(const LeftoverAudit& a) {
  return {{"uncovered", a.uncovered},   {"capacity", a.capacity},     {"assignable", a.assignable},
          {"deficit", a.deficit},       {"unassigned", a.unassigned}, {"ok", a.ok()}};
}

}  // namespace

std::string to_json(const RunReport& r, bool timings) {
  using nlohmann::json;
  json attempts = json::array();
  for (const auto& a : r.attempts) {
    json j = {{"attempt", a.attempt},
              {"seed", a.seed},
              {"absorbers_target", a.absorbers_target},
              {"absorbers", a.absorbers},
              {"absorbing_order", a.absorbing_order},
              {"reservoir_target", a.reservoir_target},
              {"reservoir", a.reservoir},
              {"reservoir_samples", a.reservoir_samples},
              {"cover_target", a.cover_target},
              {"cover_copies", a.cover_copies},
              {"path_orders", a.path_orders},
              {"connections", a.connections},
              {"audit", a.audit ? audit_json(*a.audit) : json(nullptr)},
              {"failed_stage", a.failed_stage ? json(to_string(*a.failed_stage)) : json(nullptr)},
              {"cause", a.cause}};
    if (a.failed_stage)
      j["salvage"] = {
          {"absorbing_path", a.absorbing_path}, {"reservoir", a.reservoir_vertices}, {"paths", a.paths}};
    if (!a.trace.empty()) {
      json recs = json::array();
      for (const auto& rec : a.trace)
        recs.push_back({{"path", rec.path.vertices},
                        {"absorbable", rec.absorbable.to_vector()},
                        {"source", rec.source}});
      j["trace"] = {{"absorbers", std::move(recs)}};
    }
    if (timings) {
      json t = json::object();
      for (const auto& s : a.timings) t[to_string(s.stage)] = s.ms;
      j["timings_ms"] = std::move(t);
    }
    attempts.push_back(std::move(j));
  }
  json flags = json::array();
  if (!r.degree_applicable) flags.push_back("inapplicable-degree");
  json out = {{"schema", "tightham.run/1"},
              {"preset", r.preset},
              {"seed", r.seed},
              {"n", r.n},
              {"edges", r.edges},
              {"min_degree_ratio", to_string(r.min_degree_ratio)},
              {"flags", flags},
              {"verdict", r.verdict},
              {"success", r.success},
              {"attempts", std::move(attempts)},
              {"leftover", r.leftover},
              {"cycle", r.cycle ? json(r.cycle->vertices) : json(nullptr)}};
  return out.dump();
}

}  // namespace tightham
