// Command-line front end. Talks to the library only through tightham.h.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tightham.h"

namespace {

using nlohmann::json;

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kBudget = 3 };

// Stream ids for th_derive_seed; the library uses the same numbering.
constexpr std::uint64_t kStreamSweep = 8;

struct ApiError {
  th_status status;
  std::string message;
};

void check(th_status s) {
  if (s != TH_OK) throw ApiError{s, th_last_error()};
}

int exit_for(th_status s) { return s == TH_CAPACITY || s == TH_INTERNAL ? kBudget : kUsage; }

std::string take(char* s) {
  std::string out = s ? s : "";
  th_free_string(s);
  return out;
}

class Graph {
 public:
  Graph() = default;
  explicit Graph(th_graph* g) : g_(g) {}
  Graph(Graph&& o) noexcept : g_(o.g_) { o.g_ = nullptr; }
  Graph& operator=(Graph&& o) noexcept {
    std::swap(g_, o.g_);
    return *this;
  }
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;
  ~Graph() { th_graph_free(g_); }

  static Graph load(const std::string& path) {
    th_graph* g = nullptr;
    check(th_graph_load(path.c_str(), &g));
    return Graph(g);
  }
  static Graph generate(const std::string& family, std::uint32_t n, double p, std::uint64_t seed) {
    th_graph* g = nullptr;
    check(th_graph_generate(family.c_str(), n, p, seed, &g));
    return Graph(g);
  }

  th_graph* get() const { return g_; }
  std::uint32_t order() const {
    std::uint32_t n = 0;
    check(th_graph_order(g_, &n));
    return n;
  }

 private:
  th_graph* g_ = nullptr;
};

json stats(const Graph& g) {
  char* out = nullptr;
  check(th_graph_stats(g.get(), &out));
  return json::parse(take(out));
}

// "a,b" -> pair
std::pair<std::uint32_t, std::uint32_t> parse_pair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("pair", "expected 'a,b', got '" + s + "'");
  try {
    return {static_cast<std::uint32_t>(std::stoul(s.substr(0, comma))),
            static_cast<std::uint32_t>(std::stoul(s.substr(comma + 1)))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("pair", "expected 'a,b', got '" + s + "'");
  }
}

void print(const json& j, bool as_json, const std::vector<std::string>& keys) {
  if (as_json) {
    std::cout << j.dump() << "\n";
    return;
  }
  for (const auto& k : keys)
    if (j.contains(k)) std::cout << k << ": " << (j[k].is_string() ? j[k].get<std::string>() : j[k].dump()) << "\n";
}

// ---- gen ----

struct GenArgs {
  std::string family;
  std::uint32_t n = 0;
  double p = 0.5;
  std::uint64_t seed = 1;
  std::string out;
  bool binary = false;
};

int cmd_gen(const GenArgs& a) {
  Graph g = Graph::generate(a.family, a.n, a.p, a.seed);
  check(th_graph_save(g.get(), a.out.c_str(), a.binary ? 1 : 0));
  return kOk;
}

// ---- solve ----

struct SolveArgs {
  std::string file;
  std::vector<std::string> path;
  std::uint32_t min_order = 4;
  std::uint32_t max_order = 14;
  bool matching = false;
  std::uint64_t budget = 50'000'000;
  bool text = false;
};

int verdict_exit(const std::string& v) {
  if (v == "present") return kOk;
  if (v == "absent") return kFailure;
  return kBudget;
}

int cmd_solve(const SolveArgs& a) {
  Graph g = Graph::load(a.file);
  char* out = nullptr;
  if (a.matching) {
    check(th_solve_matching(g.get(), a.budget, &out));
    const json j = json::parse(take(out));
    print(j, !a.text, {"size", "certified", "matching"});
    return j["certified"].get<bool>() ? kOk : kBudget;
  }
  if (!a.path.empty()) {
    const auto e = parse_pair(a.path.at(0));
    const auto f = parse_pair(a.path.at(1));
    check(th_solve_path(g.get(), e.first, e.second, f.first, f.second, a.min_order, a.max_order, a.budget, &out));
    const json j = json::parse(take(out));
    print(j, !a.text, {"path", "vertices", "nodes"});
    return verdict_exit(j["path"]);
  }
  check(th_solve_cycle(g.get(), a.budget, &out));
  const json j = json::parse(take(out));
  print(j, !a.text, {"ham", "cycle", "nodes"});
  return verdict_exit(j["ham"]);
}

// ---- cover ----

struct CoverArgs {
  std::string file;
  std::string mode = "greedy";
  std::size_t L = 2;
  std::string rho = "1/10";
  std::string lambda = "1/9";
  std::optional<std::string> epsilon;
  std::size_t t0 = 3;
  std::uint64_t seed = 1;
  bool text = false;
};

int cmd_cover(const CoverArgs& a) {
  Graph g = Graph::load(a.file);
  json o = {{"mode", a.mode}, {"L", a.L}, {"rho", a.rho}, {"lambda", a.lambda}, {"t0", a.t0}, {"seed", a.seed}};
  if (a.epsilon) o["epsilon"] = *a.epsilon;
  char* out = nullptr;
  check(th_cover(g.get(), o.dump().c_str(), &out));
  const json j = json::parse(take(out));
  print(j, !a.text, {"mode", "L", "active", "covered", "coverage", "target_met", "exhausted", "audit"});
  return j["target_met"].get<bool>() ? kOk : kFailure;
}

// ---- pipeline ----

struct PipelineArgs {
  std::string file;
  std::string preset = "desk";
  std::uint64_t seed = 1;
  std::optional<std::size_t> retries;
  bool text = false;
  bool trace = false;
  bool no_timings = false;
};

int cmd_pipeline(const PipelineArgs& a) {
  Graph g = Graph::load(a.file);
  json o = {{"preset", a.preset}, {"seed", a.seed}, {"trace", a.trace}, {"timings", !a.no_timings}};
  if (a.retries) o["retries"] = *a.retries;
  char* out = nullptr;
  check(th_pipeline(g.get(), o.dump().c_str(), &out));
  const json j = json::parse(take(out));
  if (!a.text) {
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "verdict: " << j["verdict"].get<std::string>() << "\n";
    std::cout << "attempts: " << j["attempts"].size() << "\n";
    for (const auto& at : j["attempts"])
      if (!at["failed_stage"].is_null())
        std::cout << "  attempt " << at["attempt"] << " failed at " << at["failed_stage"].get<std::string>() << ": "
                  << at["cause"].get<std::string>() << "\n";
    if (!j["cycle"].is_null()) std::cout << "cycle: " << j["cycle"].dump() << "\n";
  }
  return j["success"].get<bool>() ? kOk : kFailure;
}

// ---- verify ----

struct VerifyArgs {
  std::string file;
  std::optional<std::string> cycle;
  std::uint64_t seed = 1;
  bool text = false;
};

int cmd_verify(const VerifyArgs& a) {
  Graph g = Graph::load(a.file);
  char* out = nullptr;
  check(th_invariants(g.get(), a.seed, &out));
  json j = json::parse(take(out));
  bool ok = j["ok"];
  if (a.cycle) {
    std::ifstream in(*a.cycle);
    if (!in) throw ApiError{TH_IO, "cannot open " + *a.cycle};
    std::vector<std::uint32_t> vs;
    std::string tok;
    while (in >> tok) {
      tok.erase(std::remove_if(tok.begin(), tok.end(), [](char c) { return c == ',' || c == '[' || c == ']'; }),
                tok.end());
      if (tok.empty()) continue;
      try {
        vs.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
      } catch (const std::exception&) {
        throw ApiError{TH_PARSE, "cycle file: not a vertex '" + tok + "'"};
      }
    }
    check(th_check_cycle(g.get(), vs.data(), vs.size(), &out));
    j["cycle"] = json::parse(take(out));
    ok &= j["cycle"]["hamiltonian"].get<bool>();
    j["ok"] = ok;
  }
  if (!a.text) {
    std::cout << j.dump() << "\n";
  } else {
    for (const auto& c : j["checks"])
      std::cout << (c["ok"].get<bool>() ? "ok   " : "FAIL ") << c["name"].get<std::string>()
                << (c["detail"].get<std::string>().empty() ? "" : "  " + c["detail"].get<std::string>()) << "\n";
    if (j.contains("cycle"))
      std::cout << (j["cycle"]["hamiltonian"].get<bool>() ? "ok   " : "FAIL ") << "cycle"
                << (j["cycle"]["reason"].get<std::string>().empty() ? "" : "  " + j["cycle"]["reason"].get<std::string>())
                << "\n";
  }
  return ok ? kOk : kFailure;
}

// ---- threshold ----

struct ThresholdArgs {
  std::uint32_t n = 0;
  std::uint64_t seed = 1;
  std::size_t restarts = 8;
  std::size_t iterations = 400;
  std::optional<std::string> out;
  bool text = false;
};

int cmd_threshold(const ThresholdArgs& a) {
  json o = {{"seed", a.seed}, {"restarts", a.restarts}, {"iterations", a.iterations}};
  char* out = nullptr;
  th_graph* w = nullptr;
  check(th_threshold(a.n, o.dump().c_str(), &out, &w));
  Graph witness(w);
  const json j = json::parse(take(out));
  if (a.out) check(th_graph_save(witness.get(), a.out->c_str(), 0));
  print(j, !a.text, {"n", "best_delta1", "ratio", "certified", "h_n", "solver_unknown"});
  return kOk;
}

// ---- bench ----

struct BenchArgs {
  std::string what = "pipeline";
  std::string family = "random";
  std::uint32_t n = 60;
  double p = 0.95;
  std::uint64_t seed = 1;
  std::size_t runs = 5;
};

int cmd_bench(const BenchArgs& a) {
  Graph g = Graph::generate(a.family, a.n, a.p, a.seed);
  std::vector<double> ms;
  json results = json::array();
  for (std::size_t r = 0; r < a.runs; ++r) {
    const std::uint64_t s = th_derive_seed(a.seed, r);
    char* out = nullptr;
    const auto t0 = std::chrono::steady_clock::now();
    if (a.what == "pipeline") {
      check(th_pipeline(g.get(), json{{"seed", s}, {"timings", false}}.dump().c_str(), &out));
      results.push_back(json::parse(take(out))["verdict"]);
    } else if (a.what == "solve") {
      check(th_solve_cycle(g.get(), 50'000'000, &out));
      results.push_back(json::parse(take(out))["ham"]);
    } else if (a.what == "connect") {
      check(th_connect_trials(g.get(), 100, json{{"seed", s}}.dump().c_str(), &out));
      results.push_back(json::parse(take(out))["rate"]);
    } else if (a.what == "cover") {
      check(th_cover(g.get(), json{{"seed", s}}.dump().c_str(), &out));
      results.push_back(json::parse(take(out))["coverage_value"]);
    } else {
      throw CLI::ValidationError("--what", "one of pipeline, solve, connect, cover");
    }
    ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  double total = 0;
  for (double x : ms) total += x;
  json j = {{"what", a.what}, {"family", a.family}, {"n", a.n}, {"runs", a.runs}, {"ms", ms}, {"results", results}};
  if (!ms.empty()) {
    j["mean_ms"] = total / static_cast<double>(ms.size());
    j["min_ms"] = *std::min_element(ms.begin(), ms.end());
    j["max_ms"] = *std::max_element(ms.begin(), ms.end());
  }
  std::cout << j.dump() << "\n";
  return kOk;
}

// ---- sweep ----

std::atomic<bool> g_interrupted{false};

extern "C" void on_interrupt(int) { g_interrupted = true; }

struct Cell {
  std::string family;
  std::uint32_t n = 0;
  std::optional<double> p;
  std::optional<std::uint64_t> seed;
};

struct SweepPlan {
  std::vector<Cell> cells;
  bool ratio = false, solver = false, pipeline = false, connect = false;
  std::uint32_t connect_trials = 100;
  std::uint64_t solver_budget = 5'000'000;
};

bool deterministic(const std::string& family) { return family != "random"; }

SweepPlan plan_sweep(const json& spec) {
  SweepPlan plan;
  std::vector<std::uint32_t> ns;
  if (spec.contains("n")) {
    const auto& n = spec["n"];
    if (n.is_array()) {
      ns = n.get<std::vector<std::uint32_t>>();
    } else {
      const auto from = n.at("from").get<std::uint32_t>(), to = n.at("to").get<std::uint32_t>();
      const auto step = n.value("step", 1u);
      if (step == 0) throw ApiError{TH_INVALID_ARGUMENT, "sweep: n.step must be positive"};
      for (std::uint32_t v = from; v <= to; v += step) ns.push_back(v);
    }
  }
  const auto families = spec.value("families", std::vector<std::string>{});
  const auto ps = spec.value("p", std::vector<double>{0.5});
  const auto seeds = spec.value("seeds", std::vector<std::uint64_t>{1});
  for (const auto& m : spec.value("measures", std::vector<std::string>{})) {
    if (m == "ratio")
      plan.ratio = true;
    else if (m == "solver")
      plan.solver = true;
    else if (m == "pipeline")
      plan.pipeline = true;
    else if (m == "connect")
      plan.connect = true;
    else
      throw ApiError{TH_INVALID_ARGUMENT, "sweep: unknown measure '" + m + "'"};
  }
  plan.connect_trials = spec.value("connect_trials", 100u);
  plan.solver_budget = spec.value("solver_budget", std::uint64_t{5'000'000});
  for (const auto& f : families)
    for (auto n : ns) {
      if (deterministic(f)) {
        plan.cells.push_back({f, n, std::nullopt, std::nullopt});
        continue;
      }
      for (double p : ps)
        for (auto s : seeds) plan.cells.push_back({f, n, p, s});
    }
  return plan;
}

const char* kSweepHeader = "schema,family,n,p,seed,edges,min_degree_ratio,solver,pipeline,connect_rate";

std::string sweep_row(const SweepPlan& plan, const Cell& c, std::size_t index, std::uint64_t root) {
  Graph g = Graph::generate(c.family, c.n, c.p.value_or(0), c.seed.value_or(0));
  const json st = stats(g);
  std::ostringstream row;
  row << "sweep/1," << c.family << "," << c.n << ",";
  if (c.p) row << *c.p;
  row << ",";
  if (c.seed) row << *c.seed;
  row << "," << st["edges"].get<std::uint64_t>() << ",";
  if (plan.ratio && st.contains("min_degree_ratio_value")) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", st["min_degree_ratio_value"].get<double>());
    row << buf;
  }
  row << ",";
  char* out = nullptr;
  if (plan.solver) {
    if (c.n < 3 || c.n > 64) {
      row << "skipped";
    } else {
      check(th_solve_cycle(g.get(), plan.solver_budget, &out));
      row << json::parse(take(out))["ham"].get<std::string>();
    }
  }
  row << ",";
  const std::uint64_t s = th_derive_seed(root, (kStreamSweep << 32) | index);
  if (plan.pipeline) {
    check(th_pipeline(g.get(), json{{"seed", s}, {"timings", false}}.dump().c_str(), &out));
    row << json::parse(take(out))["verdict"].get<std::string>();
  }
  row << ",";
  if (plan.connect) {
    check(th_connect_trials(g.get(), plan.connect_trials, json{{"seed", s}}.dump().c_str(), &out));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", json::parse(take(out))["rate"].get<double>());
    row << buf;
  }
  return row.str();
}

struct SweepArgs {
  std::string spec;
  std::optional<std::string> out;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
};

std::size_t default_threads() {
  if (const char* env = std::getenv("TIGHTHAM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_sweep(const SweepArgs& a) {
  std::ifstream in(a.spec);
  if (!in) throw ApiError{TH_IO, "cannot open " + a.spec};
  json spec;
  try {
    spec = json::parse(in);
  } catch (const json::exception& e) {
    throw ApiError{TH_PARSE, std::string("sweep spec: ") + e.what()};
  }
  const SweepPlan plan = plan_sweep(spec);

  std::ofstream file;
  if (a.out) {
    file.open(*a.out);
    if (!file) throw ApiError{TH_IO, "cannot write " + *a.out};
  }
  std::ostream& os = a.out ? file : std::cout;
  os << kSweepHeader << "\n" << std::flush;

  const std::size_t total = plan.cells.size();
  std::vector<std::optional<std::string>> rows(total);
  std::optional<ApiError> error;
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      if (g_interrupted) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      std::string row;
      try {
        row = sweep_row(plan, plan.cells[i], i, a.seed);
      } catch (const ApiError& e) {
        std::lock_guard lock(mu);
        if (!error) error = e;
        g_interrupted = true;
        ready.notify_all();
        return;
      }
      std::lock_guard lock(mu);
      rows[i] = std::move(row);
      ready.notify_all();
    }
  };
  auto previous = std::signal(SIGINT, on_interrupt);
  const std::size_t workers = std::min(a.threads ? a.threads : default_threads(), std::max<std::size_t>(total, 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  // Rows leave in cell order; an interrupt flushes the finished prefix.
  std::size_t written = 0;
  {
    std::unique_lock lock(mu);
    while (written < total) {
      ready.wait_for(lock, std::chrono::milliseconds(100), [&] { return rows[written] || g_interrupted.load(); });
      while (written < total && rows[written]) {
        os << *rows[written] << "\n";
        rows[written].reset();
        ++written;
      }
      os.flush();
      if (g_interrupted) break;
    }
  }
  for (auto& t : pool) t.join();
  for (; written < total && rows[written]; ++written) os << *rows[written] << "\n";
  os.flush();
  std::signal(SIGINT, previous);
  if (error) throw *error;
  if (written < total) {
    std::cerr << "sweep interrupted after " << written << " of " << total << " rows\n";
    return kBudget;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tight Hamiltonian cycles in dense 3-graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(th_version()));

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a 3-graph");
  g->add_option("--family", gen.family, "i, ii, iii, random or complete")
      ->required()
      ->check(CLI::IsMember({"i", "ii", "iii", "random", "complete"}));
  g->add_option("--n", gen.n, "Number of vertices")->required();
  g->add_option("--p", gen.p, "Edge probability (random)");
  g->add_option("--seed", gen.seed, "Seed (random)");
  g->add_option("-o,--out", gen.out, "Output .h3 file")->required();
  g->add_flag("--binary", gen.binary, "Write the binary format");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Exact tight Hamiltonian cycle, path or matching search");
  s->add_option("file", solve.file)->required();
  s->add_option("--path", solve.path, "Endpairs 'a,b' 'c,d': path from (a,b) to endpair (c,d)")->expected(2);
  s->add_option("--min-order", solve.min_order, "Shortest path order");
  s->add_option("--max-order", solve.max_order, "Longest path order");
  s->add_flag("--matching", solve.matching, "Maximum matching instead");
  s->add_option("--budget", solve.budget, "Search node budget");
  s->add_flag("--json", "JSON output (the default)");
  s->add_flag("--text", solve.text, "Human-readable summary");

  CoverArgs cover;
  auto* c = app.add_subcommand("cover", "Cover by vertex-disjoint K_{L,L,L}");
  c->add_option("file", cover.file)->required();
  c->add_option("--mode", cover.mode)->check(CLI::IsMember({"greedy", "regularity"}));
  c->add_option("--L", cover.L);
  c->add_option("--rho", cover.rho);
  c->add_option("--lambda", cover.lambda);
  c->add_option("--epsilon", cover.epsilon);
  c->add_option("--t0", cover.t0);
  c->add_option("--seed", cover.seed);
  c->add_flag("--json", "JSON output (the default)");
  c->add_flag("--text", cover.text, "Human-readable summary");

  PipelineArgs pipe;
  auto* p = app.add_subcommand("pipeline", "Absorbing-path construction of a tight Hamiltonian cycle");
  p->add_option("file", pipe.file)->required();
  p->add_option("--preset", pipe.preset)->check(CLI::IsMember({"desk", "paper"}));
  p->add_option("--seed", pipe.seed);
  p->add_option("--retries", pipe.retries, "Global retries");
  p->add_flag("--json", "JSON output (the default)");
  p->add_flag("--text", pipe.text, "Human-readable summary");
  p->add_flag("--trace", pipe.trace, "Include absorber records");
  p->add_flag("--no-timings", pipe.no_timings, "Omit wall-clock timings");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run the invariant suite on a file");
  v->add_option("file", verify.file)->required();
  v->add_option("--cycle", verify.cycle, "File with a cyclic vertex order to check");
  v->add_option("--seed", verify.seed);
  v->add_flag("--json", "JSON output (the default)");
  v->add_flag("--text", verify.text, "Human-readable summary");

  ThresholdArgs thr;
  auto* t = app.add_subcommand("threshold", "Search for dense 3-graphs without a tight Hamiltonian cycle");
  t->add_option("--n", thr.n)->required();
  t->add_option("--seed", thr.seed);
  t->add_option("--restarts", thr.restarts);
  t->add_option("--iterations", thr.iterations);
  t->add_option("-o,--out", thr.out, "Write the witness");
  t->add_flag("--json", "JSON output (the default)");
  t->add_flag("--text", thr.text, "Human-readable summary");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Time a stage on generated instances");
  b->add_option("--what", bench.what)->check(CLI::IsMember({"pipeline", "solve", "connect", "cover"}));
  b->add_option("--family", bench.family)->check(CLI::IsMember({"i", "ii", "iii", "random", "complete"}));
  b->add_option("--n", bench.n);
  b->add_option("--p", bench.p);
  b->add_option("--seed", bench.seed);
  b->add_option("--runs", bench.runs);

  SweepArgs sweep;
  auto* w = app.add_subcommand("sweep", "Run an experiment grid and write CSV");
  w->add_option("spec", sweep.spec, "JSON sweep specification")->required();
  w->add_option("-o,--out", sweep.out, "CSV file (default stdout)");
  w->add_option("--seed", sweep.seed, "Root seed for per-cell seeds");
  w->add_option("--threads", sweep.threads, "Worker count (default TIGHTHAM_THREADS or all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*s) return cmd_solve(solve);
    if (*c) return cmd_cover(cover);
    if (*p) return cmd_pipeline(pipe);
    if (*v) return cmd_verify(verify);
    if (*t) return cmd_threshold(thr);
    if (*b) return cmd_bench(bench);
    if (*w) return cmd_sweep(sweep);
  } catch (const ApiError& e) {
    std::cerr << "error: " << e.message << "\n";
    return exit_for(e.status);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
