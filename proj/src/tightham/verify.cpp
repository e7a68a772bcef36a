// Certificate checkers. Deliberately standalone: edge lookup is recomputed from
// the raw colex words so a bug in the search-side helpers cannot hide here.
#include <algorithm>
#include <string>
#include <vector>

#include "tightham/solver.hpp"

namespace tightham {

namespace {

bool raw_edge(const Hypergraph3& h, Vertex x, Vertex y, Vertex z) {
  Vertex t[3] = {x, y, z};
  std::sort(t, t + 3);
  if (t[0] == t[1] || t[1] == t[2] || t[2] >= h.order()) return false;
  const std::uint64_t a = t[0], b = t[1], c = t[2];
  const std::uint64_t r = c * (c - 1) * (c - 2) / 6 + b * (b - 1) / 2 + a;
  auto w = h.words();
  return (w[r / 64] >> (r % 64)) & 1;
}

std::string show(Vertex a, Vertex b, Vertex c) {
  return "{" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "}";
}

CheckResult bad(std::string why) {
  CheckResult r;
  r.ok = false;
  r.reason = std::move(why);
  return r;
}

// Distinct, in range.
CheckResult check_vertices(const Hypergraph3& h, const std::vector<Vertex>& vs) {
  std::vector<char> seen(h.order(), 0);
  for (Vertex v : vs) {
    if (v >= h.order()) return bad("vertex " + std::to_string(v) + " out of range");
    if (seen[v]) return bad("vertex " + std::to_string(v) + " repeated");
    seen[v] = 1;
  }
  return {};
}

}  // namespace

CheckResult verify_path(const Hypergraph3& h, const TightPath& p) {
  const auto& v = p.vertices;
  if (v.size() < 3) return bad("a tight path needs at least 3 vertices");
  if (auto r = check_vertices(h, v); !r.ok) return r;
  for (std::size_t i = 0; i + 2 < v.size(); ++i)
    if (!raw_edge(h, v[i], v[i + 1], v[i + 2])) {
      auto r = bad("missing edge " + show(v[i], v[i + 1], v[i + 2]) + " at position " + std::to_string(i));
      r.bad_triple = Triple{v[i], v[i + 1], v[i + 2]};
      return r;
    }
  return {};
}

CheckResult verify_cycle(const Hypergraph3& h, const TightCycle& c) {
  const auto& v = c.vertices;
  if (v.size() < 3) return bad("a tight cycle needs at least 3 vertices");
  if (auto r = check_vertices(h, v); !r.ok) return r;
  const std::size_t k = v.size();
  // For k = 3 all three windows are the same triple.
  for (std::size_t i = 0; i < k; ++i) {
    Vertex a = v[i], b = v[(i + 1) % k], d = v[(i + 2) % k];
    if (!raw_edge(h, a, b, d)) {
      auto r = bad("missing edge " + show(a, b, d) + " at position " + std::to_string(i));
      r.bad_triple = Triple{a, b, d};
      return r;
    }
  }
  return {};
}

CheckResult verify_matching(const Hypergraph3& h, const std::vector<Triple>& m) {
  std::vector<Vertex> all;
  for (const auto& t : m) {
    if (!raw_edge(h, t[0], t[1], t[2])) {
      auto r = bad("not an edge " + show(t[0], t[1], t[2]));
      r.bad_triple = t;
      return r;
    }
    all.insert(all.end(), t.begin(), t.end());
  }
  return check_vertices(h, all);
}

}  // namespace tightham
