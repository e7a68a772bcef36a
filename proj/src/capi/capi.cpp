#include <cstdlib>
#include <cstring>
#include <new>
#include <nlohmann/json.hpp>
#include <string>

#include "tightham.h"
#include "tightham/connector.hpp"
#include "tightham/constructions.hpp"
#include "tightham/cover.hpp"
#include "tightham/error.hpp"
#include "tightham/hypergraph.hpp"
#include "tightham/invariants.hpp"
#include "tightham/io.hpp"
#include "tightham/pipeline.hpp"
#include "tightham/random.hpp"
#include "tightham/solver.hpp"

struct th_graph {
  tightham::Hypergraph3 h;
};

namespace {

using nlohmann::json;
using namespace tightham;

thread_local std::string g_last_error;

th_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return TH_INVALID_ARGUMENT;
    case ErrorCode::OutOfRange: return TH_OUT_OF_RANGE;
    case ErrorCode::Parse: return TH_PARSE;
    case ErrorCode::Io: return TH_IO;
    case ErrorCode::Capacity: return TH_CAPACITY;
    case ErrorCode::Internal: return TH_INTERNAL;
  }
  return TH_INTERNAL;
}

template <class F>
th_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return TH_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const json::exception& e) {
    g_last_error = std::string("options: ") + e.what();
    return TH_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return TH_CAPACITY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TH_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const json& j, char** out) {
  need(out, "output");
  *out = dup(j.dump());
}

json options(const char* text) {
  if (!text || !*text) return json::object();
  json j = json::parse(text);
  if (!j.is_object()) fail(ErrorCode::Parse, "options must be a JSON object");
  return j;
}

Rational rational_of(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_number()) return parse_rational(v.dump());
  fail(ErrorCode::Parse, "expected a rational, got " + v.dump());
}

template <class T>
void read(const json& o, const char* key, T& into) {
  if (o.contains(key)) into = o.at(key).get<T>();
}

void read_rational(const json& o, const char* key, Rational& into) {
  if (o.contains(key)) into = rational_of(o.at(key));
}

const Hypergraph3& graph(const th_graph* g) {
  need(g, "graph");
  return g->h;
}

CoverMode cover_mode(const std::string& s) {
  if (s == "greedy") return CoverMode::Greedy;
  if (s == "regularity") return CoverMode::Regularity;
  fail(ErrorCode::InvalidArgument, "unknown cover mode '" + s + "'");
}

}  // namespace

extern "C" {

const char* th_version(void) { return "0.1.0"; }

const char* th_last_error(void) { return g_last_error.c_str(); }

void th_free_string(char* s) { std::free(s); }

uint64_t th_derive_seed(uint64_t root, uint64_t stream) { return derive_seed(root, stream); }

th_status th_graph_create(uint32_t n, th_graph** out) {
  return guarded([&] {
    need(out, "output");
    if (n > kMaxVertices) fail(ErrorCode::OutOfRange, "n exceeds the build cap " + std::to_string(kMaxVertices));
    *out = new th_graph{Hypergraph3(n)};
  });
}

th_status th_graph_generate(const char* family, uint32_t n, double p, uint64_t seed, th_graph** out) {
  return guarded([&] {
    need(family, "family");
    need(out, "output");
    if (n > kMaxVertices) fail(ErrorCode::OutOfRange, "n exceeds the build cap " + std::to_string(kMaxVertices));
    const std::string f = family;
    Hypergraph3 h;
    if (f == "i")
      h = construction_i(n);
    else if (f == "ii")
      h = construction_ii(n);
    else if (f == "iii")
      h = construction_iii(n);
    else if (f == "random")
      h = random_h3(n, p, seed);
    else if (f == "complete")
      h = Hypergraph3::complete(n);
    else
      fail(ErrorCode::InvalidArgument, "unknown family '" + f + "'");
    *out = new th_graph{std::move(h)};
  });
}

th_status th_graph_load(const char* path, th_graph** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "output");
    *out = new th_graph{io::read_file(path)};
  });
}

th_status th_graph_save(const th_graph* g, const char* path, int binary) {
  return guarded([&] {
    need(path, "path");
    io::write_file(path, graph(g), binary != 0);
  });
}

void th_graph_free(th_graph* g) { delete g; }

th_status th_graph_order(const th_graph* g, uint32_t* n) {
  return guarded([&] {
    need(n, "output");
    *n = static_cast<uint32_t>(graph(g).order());
  });
}

th_status th_graph_edge_count(const th_graph* g, uint64_t* m) {
  return guarded([&] {
    need(m, "output");
    *m = graph(g).size();
  });
}

th_status th_graph_add_edge(th_graph* g, uint32_t a, uint32_t b, uint32_t c) {
  return guarded([&] {
    need(g, "graph");
    const std::size_t n = g->h.order();
    if (a >= n || b >= n || c >= n) fail(ErrorCode::OutOfRange, "vertex out of range");
    if (a == b || b == c || a == c) fail(ErrorCode::InvalidArgument, "edge vertices must be distinct");
    g->h.add_edge(a, b, c);
  });
}

th_status th_graph_has_edge(const th_graph* g, uint32_t a, uint32_t b, uint32_t c, int* out) {
  return guarded([&] {
    need(out, "output");
    *out = graph(g).has_edge(a, b, c) ? 1 : 0;
  });
}

th_status th_graph_stats(const th_graph* g, char** out) {
  return guarded([&] {
    const auto& h = graph(g);
    json j = {{"n", h.order()}, {"edges", h.size()}};
    if (h.order() >= 3) {
      const auto md = min_degrees(h);
      const Rational r = min_deg_ratio(h);
      j["min_degree"] = md.vertex;
      j["min_codegree"] = md.pair;
      j["min_degree_ratio"] = to_string(r);
      j["min_degree_ratio_value"] = to_double(r);
    }
    emit(j, out);
  });
}

th_status th_solve_cycle(const th_graph* g, uint64_t node_budget, char** out) {
  return guarded([&] {
    const auto r = find_tight_ham_cycle(graph(g), node_budget);
    json j = {{"ham", to_string(r.verdict)},
              {"cycle", r.cycle ? json(r.cycle->vertices) : json(nullptr)},
              {"nodes", r.nodes}};
    emit(j, out);
  });
}

th_status th_solve_path(const th_graph* g, uint32_t e0, uint32_t e1, uint32_t f0, uint32_t f1, uint32_t min_order,
                        uint32_t max_order, uint64_t node_budget, char** out) {
  return guarded([&] {
    const auto& h = graph(g);
    const auto r =
        find_tight_path(h, {e0, e1}, {f0, f1}, {min_order, max_order}, VertexSet::full(h.order()), node_budget);
    json j = {{"path", to_string(r.verdict)},
              {"vertices", r.path ? json(r.path->vertices) : json(nullptr)},
              {"nodes", r.nodes}};
    emit(j, out);
  });
}

th_status th_solve_matching(const th_graph* g, uint64_t node_budget, char** out) {
  return guarded([&] {
    const auto r = max_matching(graph(g), node_budget);
    json j = {{"matching", r.edges}, {"size", r.edges.size()}, {"certified", r.certified}, {"nodes", r.nodes}};
    emit(j, out);
  });
}

th_status th_check_cycle(const th_graph* g, const uint32_t* vertices, size_t len, char** out) {
  return guarded([&] {
    const auto& h = graph(g);
    if (len) need(vertices, "vertices");
    TightCycle c;
    c.vertices.assign(vertices, vertices + len);
    const auto r = verify_cycle(h, c);
    emit({{"ok", r.ok}, {"reason", r.reason}, {"hamiltonian", r.ok && len == h.order()}}, out);
  });
}

th_status th_invariants(const th_graph* g, uint64_t seed, char** out) {
  return guarded([&] {
    const auto checks = run_invariants(graph(g), seed);
    json arr = json::array();
    bool ok = true;
    for (const auto& c : checks) {
      arr.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
      ok &= c.ok;
    }
    emit({{"schema", "tightham.verify/1"}, {"ok", ok}, {"checks", arr}}, out);
  });
}

th_status th_cover(const th_graph* g, const char* opts, char** out) {
  return guarded([&] {
    const auto& h = graph(g);
    const json o = options(opts);
    CoverOptions co;
    if (o.contains("mode")) co.mode = cover_mode(o.at("mode").get<std::string>());
    read(o, "L", co.L);
    read_rational(o, "rho", co.rho);
    read_rational(o, "lambda", co.lambda);
    read(o, "seed", co.seed);
    if (o.contains("epsilon")) co.epsilon = rational_of(o.at("epsilon"));
    read(o, "t0", co.t0);
    read(o, "samples", co.samples);
    read(o, "budget", co.search_budget);
    const auto r = cover_klll(h, co);
    const PairGraph g13 = large_pair_graph(h, Rational(1, 3));
    json copies = json::array(), paths = json::array();
    bool crossing = true;
    VertexSet seen(h.order());
    bool disjoint = true;
    for (const auto& q : r.copies) {
      copies.push_back(q.parts);
      crossing &= is_k_hhh(h, q);
      for (const auto& part : q.parts)
        for (Vertex v : part) {
          disjoint &= !seen.contains(v);
          seen.insert(v);
        }
      auto p = klll_path(q, g13);
      paths.push_back(p ? json(p->vertices) : json(nullptr));
    }
    json j = {{"schema", "tightham.cover/1"},
              {"mode", co.mode == CoverMode::Greedy ? "greedy" : "regularity"},
              {"L", co.L},
              {"active", r.active},
              {"covered", r.covered},
              {"coverage", to_string(r.coverage)},
              {"coverage_value", to_double(r.coverage)},
              {"target_met", r.target_met},
              {"exhausted", r.exhausted},
              {"copies", copies},
              {"paths", paths},
              {"audit", {{"crossing", crossing}, {"disjoint", disjoint}}}};
    if (r.partition) {
      const auto& p = *r.partition;
      json energy = json::array();
      for (const auto& e : p.energy) energy.push_back(to_string(e));
      j["partition"] = {{"t", p.t()},
                        {"rounds", p.rounds},
                        {"certified", p.certified},
                        {"epsilon", to_string(p.epsilon)},
                        {"irregular", p.irregular_count()},
                        {"energy", energy}};
      j["matching"] = r.matching;
    }
    emit(j, out);
  });
}

th_status th_pipeline(const th_graph* g, const char* opts, char** out) {
  return guarded([&] {
    const auto& h = graph(g);
    const json o = options(opts);
    PipelineConfig cfg = PipelineConfig::desk();
    if (o.contains("preset")) {
      const auto p = o.at("preset").get<std::string>();
      if (p == "paper")
        cfg = PipelineConfig::paper();
      else if (p != "desk")
        fail(ErrorCode::InvalidArgument, "unknown preset '" + p + "'");
    }
    read(o, "seed", cfg.seed);
    read(o, "trace", cfg.trace);
    read(o, "retries", cfg.global_retries);
    if (o.contains("absorbers")) cfg.absorbers = o.at("absorbers").get<std::size_t>();
    read_rational(o, "gamma", cfg.gamma);
    read(o, "L", cfg.L);
    read_rational(o, "rho", cfg.rho);
    read_rational(o, "lambda", cfg.lambda);
    if (o.contains("cover_mode")) cfg.cover_mode = cover_mode(o.at("cover_mode").get<std::string>());
    bool timings = true;
    read(o, "timings", timings);
    const auto r = run(h, cfg);
    need(out, "output");
    *out = dup(to_json(r, timings));
  });
}

th_status th_threshold(uint32_t n, const char* opts, char** out, th_graph** witness) {
  return guarded([&] {
    const json o = options(opts);
    ThresholdOptions to;
    read(o, "seed", to.seed);
    read(o, "restarts", to.restarts);
    read(o, "iterations", to.iterations);
    read(o, "budget", to.solver_budget);
    auto r = threshold_witness_search(n, to);
    const Rational ratio_value = Rational(r.best_delta1) / Rational(choose2(n - 1));
    json j = {{"schema", "tightham.threshold/1"},
              {"n", r.n},
              {"best_delta1", r.best_delta1},
              {"ratio", to_string(ratio_value)},
              {"ratio_value", to_double(ratio_value)},
              {"certified", r.certified},
              {"exhaustive", r.exhaustive},
              {"h_n", r.certified ? json(r.best_delta1 + 1) : json(nullptr)},
              {"witness_edges", r.witness.size()},
              {"solver_calls", r.solver_calls},
              {"solver_unknown", r.solver_unknown}};
    emit(j, out);
    if (witness) *witness = new th_graph{std::move(r.witness)};
  });
}

constexpr std::size_t kPairDraws = 10'000;

th_status th_connect_trials(const th_graph* g, uint32_t trials, const char* opts, char** out) {
  return guarded([&] {
    const auto& h = graph(g);
    const json o = options(opts);
    std::uint64_t seed = 1;
    bool retries = false;
    read(o, "seed", seed);
    read(o, "retries", retries);
    const std::size_t n = h.order();
    if (n < 4) fail(ErrorCode::InvalidArgument, "connections need at least 4 vertices");
    const ConnectorContext ctx(h, AlphaSchedule::standard());
    Rng rng(seed);
    std::uint64_t attempted = 0, ok = 0;
    for (uint32_t t = 0; t < trials; ++t) {
      // Redraw until both pairs are in G_{.33}; a trial with no such draw
      // counts as a failure.
      std::vector<std::uint32_t> v;
      bool found = false;
      for (std::size_t d = 0; d < kPairDraws && !found; ++d) {
        v = rng.sample(static_cast<std::uint32_t>(n), 4);
        found = ctx.large(0).has_edge(v[0], v[1]) && ctx.large(0).has_edge(v[2], v[3]);
      }
      if (!found) continue;
      ++attempted;
      RetryPolicy pol;
      pol.seed = derive_seed(seed, t);
      const auto r = retries ? connect_with_retries(ctx, {v[0], v[1]}, {v[2], v[3]}, VertexSet(n), pol)
                             : connect(ctx, {v[0], v[1]}, {v[2], v[3]}, VertexSet(n));
      if (r.path && r.path->length() == 12 && verify_path(h, *r.path).ok) ++ok;
    }
    const double rate = trials ? static_cast<double>(ok) / trials : 0.0;
    emit({{"trials", trials}, {"attempted", attempted}, {"successes", ok}, {"rate", rate}}, out);
  });
}

}  // extern "C"
