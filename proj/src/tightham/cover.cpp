#include "tightham/cover.hpp"

#include <algorithm>
#include <numeric>

#include "tightham/error.hpp"
#include "tightham/parallel.hpp"
#include "tightham/random.hpp"

namespace tightham {

Rational eps_of(const Rational& rho, const Rational& lambda) {
  if (rho <= 0 || lambda <= 0) fail(ErrorCode::InvalidArgument, "rho and lambda must be positive");
  const Rational a = rho * rho / 4, b = lambda * lambda / 400;
  return a < b ? a : b;
}

const char* to_string(RegVerdict v) {
  switch (v) {
    case RegVerdict::Regular: return "regular";
    case RegVerdict::RegularSampled: return "regular (sampled)";
    case RegVerdict::Irregular: return "irregular";
  }
  return "regular";
}

namespace {

using i128 = __int128;

std::int64_t small(const BigInt& x, const char* what) {
  if (x > BigInt(INT64_MAX) || x < BigInt(INT64_MIN)) fail(ErrorCode::Capacity, std::string(what) + " too large");
  return x.convert_to<std::int64_t>();
}

// Deviation |e/q - E/P| as the fraction num/den, kept in integers.
struct Dev {
  i128 num = 0;
  i128 den = 1;
  bool up = false;  // e/q > E/P
};

// The three parts of one triple plus exact helpers over them.
class Box {
 public:
  Box(const PairNeighborhoods& nbh, const std::array<const std::vector<Vertex>*, 3>& parts, const Rational& eps)
      : nbh_(nbh) {
    const std::size_t n = nbh.order();
    for (int i = 0; i < 3; ++i) {
      v_[i] = *parts[i];
      set_[i] = VertexSet::of(n, v_[i]);
      if (v_[i].empty()) fail(ErrorCode::InvalidArgument, "regularity parts must be non-empty");
      // s_i = ceil(eps |V_i|) and the lemma needs it to be at least one vertex.
      if (eps * v_[i].size() < 1)
        fail(ErrorCode::InvalidArgument, "part of size " + std::to_string(v_[i].size()) + " is below 1/eps");
      s_[i] = ceil(eps * v_[i].size()).convert_to<std::size_t>();
    }
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (set_[i].intersects(set_[j])) fail(ErrorCode::InvalidArgument, "regularity parts must be disjoint");
    eps_num_ = small(boost::multiprecision::numerator(eps), "eps numerator");
    eps_den_ = small(boost::multiprecision::denominator(eps), "eps denominator");
    total_ = edges(v_[0], v_[1], set_[2]);
    vol_ = static_cast<i128>(v_[0].size()) * v_[1].size() * v_[2].size();
  }

  const std::vector<Vertex>& part(int i) const { return v_[i]; }
  std::size_t min_size(int i) const { return s_[i]; }
  std::uint64_t total() const { return total_; }
  bool has(Vertex a, Vertex b, Vertex c) const { return nbh_.of(a, b).contains(c); }
  Rational density() const { return Rational(total_) / Rational(static_cast<std::uint64_t>(vol_)); }

  std::uint64_t edges(const std::vector<Vertex>& a, const std::vector<Vertex>& b, const VertexSet& c) const {
    std::uint64_t e = 0;
    for (Vertex x : a)
      for (Vertex y : b) e += nbh_.of(x, y).intersection_count(c);
    return e;
  }

  Dev deviation(std::uint64_t e, i128 q) const {
    const i128 lhs = static_cast<i128>(e) * vol_, rhs = static_cast<i128>(total_) * q;
    Dev d;
    d.up = lhs > rhs;
    d.num = d.up ? lhs - rhs : rhs - lhs;
    d.den = q * vol_;
    return d;
  }

  bool beyond_eps(const Dev& d) const { return d.num * eps_den_ > static_cast<i128>(eps_num_) * d.den; }

  Dev deviation(const std::array<std::vector<Vertex>, 3>& a) const {
    const VertexSet c = VertexSet::of(nbh_.order(), a[2]);
    const i128 q = static_cast<i128>(a[0].size()) * a[1].size() * a[2].size();
    return deviation(edges(a[0], a[1], c), q);
  }

  // e({v}, A_j, A_k) for v in part i.
  std::vector<std::uint64_t> scores(int i, const std::array<std::vector<Vertex>, 3>& a) const {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const VertexSet ck = VertexSet::of(nbh_.order(), a[k]);
    std::vector<std::uint64_t> s(v_[i].size(), 0);
    for (std::size_t x = 0; x < v_[i].size(); ++x)
      for (Vertex y : a[j]) s[x] += nbh_.of(v_[i][x], y).intersection_count(ck);
    return s;
  }

  // Replace each A_i by every vertex of V_i leaning the witness's way, as long
  // as the result is still a witness.
  void enlarge(std::array<std::vector<Vertex>, 3>& a, bool up) const {
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3, k = (i + 2) % 3;
      const auto sc = scores(i, a);
      const i128 pair_vol = static_cast<i128>(a[j].size()) * a[k].size();
      std::vector<Vertex> grown;
      for (std::size_t x = 0; x < v_[i].size(); ++x) {
        // density of v into A_j x A_k compared with d(V)
        const i128 lhs = static_cast<i128>(sc[x]) * vol_, rhs = static_cast<i128>(total_) * pair_vol;
        if (up ? lhs > rhs : lhs < rhs) grown.push_back(v_[i][x]);
      }
      if (grown.size() < s_[i]) continue;
      auto trial = a;
      trial[i] = std::move(grown);
      const Dev d = deviation(trial);
      if (d.up == up && beyond_eps(d)) a = std::move(trial);
    }
  }

  RegWitness witness(std::array<std::vector<Vertex>, 3> a, bool up) const {
    enlarge(a, up);
    for (auto& s : a) std::sort(s.begin(), s.end());
    const VertexSet c = VertexSet::of(nbh_.order(), a[2]);
    const std::uint64_t q = a[0].size() * a[1].size() * a[2].size();
    return RegWitness{a, Rational(edges(a[0], a[1], c)) / Rational(q)};
  }

 private:
  const PairNeighborhoods& nbh_;
  std::array<std::vector<Vertex>, 3> v_;
  std::array<VertexSet, 3> set_;
  std::array<std::size_t, 3> s_{};
  std::int64_t eps_num_ = 0, eps_den_ = 1;
  std::uint64_t total_ = 0;
  i128 vol_ = 1;
};


bool dev_less(const Dev& a, const Dev& b) { return a.num * b.den < b.num * a.den; }

RegCheck check_exhaustive(const Box& box) {
  const auto& v1 = box.part(0);
  const auto& v2 = box.part(1);
  const auto& v3 = box.part(2);
  const std::size_t n1 = v1.size(), n2 = v2.size(), n3 = v3.size();
  if (n1 + n2 + n3 > kExhaustiveRegularityCap || n1 > 16 || n2 > 16)
    fail(ErrorCode::Capacity, "exhaustive regularity check supports parts totalling <= " +
                                  std::to_string(kExhaustiveRegularityCap) + " vertices");
  RegCheck r;
  r.density = box.density();
  std::optional<Dev> best;
  std::array<std::vector<Vertex>, 3> best_sets;
  // w[b*n3 + c] = #{a in A_1 : a, v2[b], v3[c] is an edge}; cnt over subsets of V_2 built by lowest bit.
  std::vector<std::uint32_t> w(n2 * n3), cnt((std::size_t{1} << n2) * n3);
  std::vector<std::size_t> order(n3);
  for (std::uint32_t m1 = 1; m1 < (1u << n1); ++m1) {
    if (static_cast<std::size_t>(std::popcount(m1)) < box.min_size(0)) continue;
    std::fill(w.begin(), w.end(), 0);
    for (std::size_t b = 0; b < n2; ++b)
      for (std::size_t c = 0; c < n3; ++c)
        for (std::size_t a = 0; a < n1; ++a)
          if (m1 >> a & 1) w[b * n3 + c] += box.has(v1[a], v2[b], v3[c]);
    std::fill(cnt.begin(), cnt.begin() + static_cast<std::ptrdiff_t>(n3), 0);
    for (std::uint32_t m2 = 1; m2 < (1u << n2); ++m2) {
      const std::uint32_t low = static_cast<std::uint32_t>(std::countr_zero(m2));
      const std::uint32_t prev = m2 & (m2 - 1);
      for (std::size_t c = 0; c < n3; ++c) cnt[m2 * n3 + c] = cnt[prev * n3 + c] + w[low * n3 + c];
      const std::size_t k2 = static_cast<std::size_t>(std::popcount(m2));
      if (k2 < box.min_size(1)) continue;
      ++r.probes;
      const std::uint32_t* row = &cnt[m2 * n3];
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return row[x] > row[y]; });
      const i128 q12 = static_cast<i128>(std::popcount(m1)) * k2;
      std::uint64_t top = 0, bottom = 0;
      for (std::size_t k3 = 1; k3 <= n3; ++k3) {
        top += row[order[k3 - 1]];
        bottom += row[order[n3 - k3]];
        if (k3 < box.min_size(2)) continue;
        for (int side = 0; side < 2; ++side) {
          const Dev d = box.deviation(side == 0 ? top : bottom, q12 * static_cast<i128>(k3));
          if (best && !dev_less(*best, d)) continue;
          best = d;
          for (auto& s : best_sets) s.clear();
          for (std::size_t a = 0; a < n1; ++a)
            if (m1 >> a & 1) best_sets[0].push_back(v1[a]);
          for (std::size_t b = 0; b < n2; ++b)
            if (m2 >> b & 1) best_sets[1].push_back(v2[b]);
          for (std::size_t i = 0; i < k3; ++i) best_sets[2].push_back(v3[order[side == 0 ? i : n3 - 1 - i]]);
        }
      }
    }
  }
  if (best && box.beyond_eps(*best)) {
    r.verdict = RegVerdict::Irregular;
    r.witness = box.witness(best_sets, best->up);
  } else {
    r.verdict = RegVerdict::Regular;
  }
  return r;
}

std::vector<Vertex> pick(const std::vector<Vertex>& from, std::size_t k, Rng& rng) {
  std::vector<Vertex> out;
  for (auto i : rng.sample(static_cast<std::uint32_t>(from.size()), static_cast<std::uint32_t>(k))) out.push_back(from[i]);
  return out;
}

// The k best-scoring vertices of V_i (ties to the earlier vertex).
std::vector<Vertex> best_k(const std::vector<Vertex>& from, const std::vector<std::uint64_t>& score, std::size_t k,
                           bool high) {
  std::vector<std::size_t> idx(from.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t x, std::size_t y) { return high ? score[x] > score[y] : score[x] < score[y]; });
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(from[idx[i]]);
  return out;
}

RegCheck check_sampled(const Box& box, std::size_t samples, std::uint64_t seed) {
  RegCheck r;
  r.density = box.density();
  for (std::size_t k = 0; k < samples; ++k) {
    Rng rng(derive_seed(seed, k));
    std::array<std::vector<Vertex>, 3> a;
    for (int i = 0; i < 3; ++i) a[i] = pick(box.part(i), box.min_size(i), rng);
    if (k % 2 == 1) {
      // Best responses: each part in turn takes the vertices densest (or
      // sparsest) towards the other two.
      const bool high = (k / 2) % 2 == 0;
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i < 3; ++i) a[i] = best_k(box.part(i), box.scores(i, a), box.min_size(i), high);
    }
    ++r.probes;
    const Dev d = box.deviation(a);
    if (box.beyond_eps(d)) {
      r.verdict = RegVerdict::Irregular;
      r.witness = box.witness(std::move(a), d.up);
      return r;
    }
  }
  r.verdict = RegVerdict::RegularSampled;
  return r;
}

RegCheck run_check(const Box& box, const RegCheckOptions& opt) {
  return opt.mode == RegMode::Exhaustive ? check_exhaustive(box) : check_sampled(box, opt.samples, opt.seed);
}

}  // namespace

RegCheck regularity_check(const PairNeighborhoods& nbh, const std::vector<Vertex>& a1, const std::vector<Vertex>& a2,
                          const std::vector<Vertex>& a3, const Rational& eps, const RegCheckOptions& opt) {
  if (!(eps > 0 && eps < 1)) fail(ErrorCode::InvalidArgument, "eps must lie in (0,1)");
  for (const auto* part : {&a1, &a2, &a3})
    for (Vertex v : *part)
      if (v >= nbh.order()) fail(ErrorCode::OutOfRange, "vertex " + std::to_string(v) + " out of range");
  const Box box(nbh, {&a1, &a2, &a3}, eps);
  return run_check(box, opt);
}

RegCheck regularity_check(const Hypergraph3& h, const std::vector<Vertex>& a1, const std::vector<Vertex>& a2,
                          const std::vector<Vertex>& a3, const Rational& eps, const RegCheckOptions& opt) {
  const PairNeighborhoods nbh(h);
  return regularity_check(nbh, a1, a2, a3, eps, opt);
}

std::size_t RegPartition::irregular_count() const {
  return static_cast<std::size_t>(std::count_if(triples.begin(), triples.end(),
                                                [](const TripleStat& s) { return s.verdict == RegVerdict::Irregular; }));
}

namespace {

// Crossing-edge counts for every class triple i < j < l, flattened as i*t*t + j*t + l.
std::vector<std::uint64_t> triple_counts(const Hypergraph3& h, const std::vector<std::vector<Vertex>>& classes) {
  const std::size_t t = classes.size();
  std::vector<std::uint32_t> cls(h.order(), UINT32_MAX);
  for (std::uint32_t i = 0; i < t; ++i)
    for (Vertex v : classes[i]) cls[v] = i;
  std::vector<std::uint64_t> cnt(t * t * t, 0);
  h.for_each_edge([&](const Triple& e) {
    std::uint32_t c[3] = {cls[e[0]], cls[e[1]], cls[e[2]]};
    if (c[0] == UINT32_MAX || c[1] == UINT32_MAX || c[2] == UINT32_MAX) return;
    std::sort(c, c + 3);
    if (c[0] == c[1] || c[1] == c[2]) return;
    ++cnt[(c[0] * t + c[1]) * t + c[2]];
  });
  return cnt;
}

std::vector<std::vector<Vertex>> equitable(const std::vector<Vertex>& order, std::size_t t) {
  std::vector<std::vector<Vertex>> out(t);
  const std::size_t n = order.size(), m = n / t, r = n % t;
  std::size_t pos = 0;
  // Smaller classes first so sizes are non-decreasing.
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t sz = m + (i >= t - r ? 1 : 0);
    out[i].assign(order.begin() + static_cast<std::ptrdiff_t>(pos), order.begin() + static_cast<std::ptrdiff_t>(pos + sz));
    std::sort(out[i].begin(), out[i].end());
    pos += sz;
  }
  return out;
}

struct Atom {
  std::vector<Vertex> vertices;
  bool inside = false;  // was on the witness side of its split
};

void sort_by_size(std::vector<std::vector<Vertex>>& classes) {
  for (auto& c : classes) std::sort(c.begin(), c.end());
  std::stable_sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
}

// Equitable t'-partition that keeps whole pieces of atoms where it can; the
// remainders are pooled (witness-side atoms first) and cut in order.
std::vector<std::vector<Vertex>> carve(const std::vector<Atom>& atoms, std::size_t n, std::size_t tp) {
  const std::size_t m = n / tp;
  std::size_t big = n % tp, small_left = tp - big;
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> pool_in, pool_out;
  for (const auto& a : atoms) {
    std::size_t pos = 0;
    const auto& v = a.vertices;
    auto take = [&](std::size_t k) {
      out.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(pos), v.begin() + static_cast<std::ptrdiff_t>(pos + k));
      pos += k;
    };
    while (big && v.size() - pos >= m + 1) {
      take(m + 1);
      --big;
    }
    while (small_left && v.size() - pos >= m) {
      take(m);
      --small_left;
    }
    auto& pool = a.inside ? pool_in : pool_out;
    pool.insert(pool.end(), v.begin() + static_cast<std::ptrdiff_t>(pos), v.end());
  }
  pool_in.insert(pool_in.end(), pool_out.begin(), pool_out.end());
  std::size_t pos = 0;
  auto cut = [&](std::size_t k) {
    out.emplace_back(pool_in.begin() + static_cast<std::ptrdiff_t>(pos), pool_in.begin() + static_cast<std::ptrdiff_t>(pos + k));
    pos += k;
  };
  for (; big; --big) cut(m + 1);
  for (; small_left; --small_left) cut(m);
  sort_by_size(out);
  return out;
}

// Common refinement of the atoms into pieces of size m or m+1, for the
// largest m that every atom admits. Sizes of m and m+1 fill a exactly when
// ceil(a / (m+1)) * m <= a.
std::vector<std::vector<Vertex>> split_atoms(const std::vector<Atom>& atoms) {
  std::size_t m = SIZE_MAX;
  for (const auto& a : atoms) m = std::min(m, a.vertices.size());
  auto fits = [&](std::size_t mm) {
    for (const auto& a : atoms) {
      const std::size_t s = a.vertices.size(), k = (s + mm) / (mm + 1);
      if (k * mm > s) return false;
    }
    return true;
  };
  while (m > 1 && !fits(m)) --m;
  std::vector<std::vector<Vertex>> out;
  for (const auto& a : atoms) {
    const std::size_t s = a.vertices.size(), k = (s + m) / (m + 1), extra = s - k * m;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t sz = m + (i < extra ? 1 : 0);
      out.emplace_back(a.vertices.begin() + static_cast<std::ptrdiff_t>(pos),
                       a.vertices.begin() + static_cast<std::ptrdiff_t>(pos + sz));
      pos += sz;
    }
  }
  sort_by_size(out);
  return out;
}

std::size_t smallest_class(const std::vector<std::vector<Vertex>>& c) {
  std::size_t m = SIZE_MAX;
  for (const auto& x : c) m = std::min(m, x.size());
  return m;
}

}  // namespace

Rational partition_energy(const Hypergraph3& h, const std::vector<std::vector<Vertex>>& classes) {
  const std::size_t t = classes.size();
  const auto cnt = triple_counts(h, classes);
  Rational sum = 0;
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i + 1; j < t; ++j)
      for (std::size_t l = j + 1; l < t; ++l) {
        const std::uint64_t e = cnt[(i * t + j) * t + l];
        if (!e) continue;
        const std::uint64_t vol = classes[i].size() * classes[j].size() * classes[l].size();
        sum += Rational(e * e) / Rational(vol);
      }
  const Rational n = Rational(h.order());
  return sum / (n * n * n);
}

RegPartition weak_regularize(const Hypergraph3& h, const Rational& eps, std::size_t t0, std::uint64_t seed,
                             const RegularizeOptions& opt) {
  const std::size_t n = h.order();
  if (!(eps > 0 && eps < 1)) fail(ErrorCode::InvalidArgument, "eps must lie in (0,1)");
  if (t0 < 3) fail(ErrorCode::InvalidArgument, "t0 must be at least 3");
  if (Rational(n) * eps < t0) fail(ErrorCode::InvalidArgument, "weak regularisation needs n >= t0 / eps");
  if (opt.L == 0) fail(ErrorCode::InvalidArgument, "L must be positive");
  const std::size_t cap = std::max(t0, opt.t_cap ? opt.t_cap : n / (3 * opt.L));
  const PairNeighborhoods nbh(h);

  RegPartition p;
  p.epsilon = eps;
  {
    Rng rng(derive_seed(seed, streams::kRegularity));
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    p.classes = equitable(order, t0);
  }
  p.energy.push_back(partition_energy(h, p.classes));

  auto evaluate = [&] {
    const std::size_t t = p.t();
    p.triples.clear();
    for (std::uint32_t i = 0; i < t; ++i)
      for (std::uint32_t j = i + 1; j < t; ++j)
        for (std::uint32_t l = j + 1; l < t; ++l) p.triples.push_back(TripleStat{{i, j, l}, {}, {}, {}});
    parallel_for(p.triples.size(), [&](std::size_t k) {
      auto& s = p.triples[k];
      const Box box(nbh, {&p.classes[s.classes[0]], &p.classes[s.classes[1]], &p.classes[s.classes[2]]}, eps);
      RegCheckOptions o;
      o.mode = opt.mode;
      o.samples = opt.samples;
      o.seed = derive_seed(seed, (static_cast<std::uint64_t>(p.rounds) << 32) | k);
      auto r = run_check(box, o);
      s.density = r.density;
      s.verdict = r.verdict;
      s.witness = std::move(r.witness);
    });
    p.certified = Rational(p.irregular_count()) < eps * Rational(choose3(t));
  };

  // One refinement round; false when no acceptable partition fits the cap.
  auto refine = [&]() -> bool {
    const std::size_t t = p.t();
    std::vector<std::vector<Atom>> atoms(t);
    for (std::size_t i = 0; i < t; ++i) atoms[i].push_back({p.classes[i], false});
    std::vector<bool> split(t, false);
    for (const auto& s : p.triples) {
      if (s.verdict != RegVerdict::Irregular || !s.witness) continue;
      for (int k = 0; k < 3; ++k) {
        const std::uint32_t c = s.classes[k];
        if (split[c]) continue;
        const VertexSet in = VertexSet::of(n, s.witness->sets[k]);
        Atom a{{}, true}, b{{}, false};
        for (Vertex v : p.classes[c]) (in.contains(v) ? a : b).vertices.push_back(v);
        if (a.vertices.empty() || b.vertices.empty()) continue;
        atoms[c] = {std::move(a), std::move(b)};
        split[c] = true;
      }
    }
    std::vector<Atom> flat;
    for (auto& group : atoms)
      for (auto& a : group) flat.push_back(std::move(a));
    std::vector<std::vector<Vertex>> fine;
    for (const auto& a : flat) fine.push_back(a.vertices);
    const Rational q_prev = p.energy.back();
    const Rational q_fine = partition_energy(h, fine);
    if (q_fine <= q_prev) return false;
    auto admissible = [&](const std::vector<std::vector<Vertex>>& c) {
      return c.size() <= cap && eps * Rational(smallest_class(c)) >= 1;
    };
    // Keep at least half of the increment the split bought.
    for (std::size_t tp = t; tp <= cap; ++tp) {
      auto c = carve(flat, n, tp);
      if (!admissible(c)) continue;
      const Rational q = partition_energy(h, c);
      if (q > q_prev && 2 * (q - q_prev) >= q_fine - q_prev) {
        p.classes = std::move(c);
        p.energy.push_back(q);
        return true;
      }
    }
    auto c = split_atoms(flat);
    if (!admissible(c)) return false;
    p.energy.push_back(partition_energy(h, c));
    p.classes = std::move(c);
    return true;
  };

  evaluate();
  while (!p.certified && p.rounds < opt.max_rounds) {
    if (!refine()) break;
    ++p.rounds;
    evaluate();
  }
  return p;
}

Hypergraph3 ClusterGraph::as_hypergraph() const {
  Hypergraph3 k(t);
  for (const auto& e : edges) k.add_edge(e[0], e[1], e[2]);
  return k;
}

ClusterGraph cluster_graph(const RegPartition& p, const Rational& lambda) {
  ClusterGraph k;
  k.t = p.t();
  const Rational dmin = lambda / 12;
  for (const auto& s : p.triples) {
    const bool d = s.density >= dmin;
    const bool r = s.verdict != RegVerdict::Irregular;
    k.in_d.push_back(d);
    k.in_r.push_back(r);
    if (d && r) k.edges.push_back({s.classes[0], s.classes[1], s.classes[2]});
  }
  return k;
}

ClusterDegreeCheck check_cluster_degree(const Hypergraph3& h, const RegPartition& p, const Rational& lambda) {
  ClusterDegreeCheck c;
  const std::size_t n = h.order(), t = p.t();
  c.bound = (Rational(5, 9) + Rational(2, 3) * lambda) * Rational(t * t) / 2;
  if (n < 3 || Rational(min_degrees(h).vertex) < (Rational(5, 9) + lambda) * Rational(choose2(n - 1))) return c;
  const Rational dmin = lambda / 12;
  std::vector<std::uint64_t> deg(t, 0);
  for (const auto& s : p.triples)
    if (s.density >= dmin)
      for (auto i : s.classes) ++deg[i];
  c.min_degree = t ? *std::min_element(deg.begin(), deg.end()) : 0;
  c.margin = Rational(c.min_degree) - c.bound;
  c.status = c.margin >= 0 ? ClusterDegreeCheck::Status::Holds : ClusterDegreeCheck::Status::Violated;
  return c;
}

std::vector<Triple> cluster_matching(const ClusterGraph& k) {
  if (k.t > kSolverMaxVertices)
    fail(ErrorCode::Capacity, "cluster matching supports t <= " + std::to_string(kSolverMaxVertices));
  auto m = max_matching(k.as_hypergraph());
  if (!m.certified) fail(ErrorCode::Internal, "cluster matching ran out of budget");
  return m.edges;
}

Packing pack_klll(const Hypergraph3& h, const std::vector<Vertex>& v1, const std::vector<Vertex>& v2,
                  const std::vector<Vertex>& v3, std::size_t L, const KSearchOptions& opt) {
  if (L < 1) fail(ErrorCode::InvalidArgument, "L must be positive");
  const std::size_t n = h.order();
  std::array<VertexSet, 3> free{VertexSet::of(n, v1), VertexSet::of(n, v2), VertexSet::of(n, v3)};
  Packing out;
  for (std::uint64_t round = 0;; ++round) {
    if (free[0].count() < L || free[1].count() < L || free[2].count() < L) {
      out.maximal = true;
      break;
    }
    KSearchOptions o = opt;
    o.seed = derive_seed(opt.seed, round);
    auto r = find_k_hhh(h, L, free, o);
    if (r.outcome == SearchOutcome::Absent) {
      out.maximal = true;
      break;
    }
    if (r.outcome == SearchOutcome::BudgetExhausted) break;
    for (int i = 0; i < 3; ++i)
      for (Vertex v : r.copy->parts[i]) free[i].erase(v);
    out.copies.push_back(std::move(*r.copy));
  }
  for (int i = 0; i < 3; ++i) out.leftover[i] = free[i].count();
  return out;
}

CoverResult cover_klll(const Hypergraph3& h, const CoverOptions& opt, const std::optional<VertexSet>& active) {
  const std::size_t n = h.order();
  if (opt.L < 1) fail(ErrorCode::InvalidArgument, "L must be positive");
  const VertexSet act = active ? *active : VertexSet::full(n);
  if (act.universe() != n) fail(ErrorCode::InvalidArgument, "active set universe does not match n");
  CoverResult res;
  res.active = act.count();
  VertexSet used(n);

  if (opt.mode == CoverMode::Greedy) {
    for (std::uint64_t round = 0; opt.max_copies == 0 || res.copies.size() < opt.max_copies; ++round) {
      const VertexSet off = act.complement() | used;
      if (n - off.count() < 3 * opt.L) break;
      const Hypergraph3 g = remove_vertices(h, off);
      KSearchOptions o;
      o.node_budget = opt.search_budget;
      o.seed = derive_seed(opt.seed, round);
      auto r = find_k_hhh(g, opt.L, std::nullopt, o);
      if (r.outcome == SearchOutcome::Absent) break;
      if (r.outcome == SearchOutcome::BudgetExhausted) {
        res.exhausted = true;
        break;
      }
      for (const auto& part : r.copy->parts)
        for (Vertex v : part) used.insert(v);
      res.copies.push_back(std::move(*r.copy));
    }
  } else {
    const Rational eps = opt.epsilon ? *opt.epsilon : eps_of(opt.rho, opt.lambda);
    const auto c = compact(h, act);
    RegularizeOptions ro;
    ro.samples = opt.samples;
    ro.L = opt.L;
    auto part = weak_regularize(c.graph, eps, opt.t0, derive_seed(opt.seed, streams::kRegularity), ro);
    const auto k = cluster_graph(part, opt.lambda);
    res.matching = cluster_matching(k);
    KSearchOptions o;
    o.node_budget = opt.search_budget;
    for (std::size_t i = 0; i < res.matching.size(); ++i) {
      const auto& m = res.matching[i];
      o.seed = derive_seed(opt.seed, i);
      auto pk = pack_klll(c.graph, part.classes[m[0]], part.classes[m[1]], part.classes[m[2]], opt.L, o);
      if (!pk.maximal) res.exhausted = true;
      for (auto& q : pk.copies) {
        if (opt.max_copies && res.copies.size() == opt.max_copies) break;
        for (auto& side : q.parts)
          for (auto& v : side) {
            v = c.original[v];
            used.insert(v);
          }
        res.copies.push_back(std::move(q));
      }
    }
    // Report classes in original labels.
    for (auto& cl : part.classes)
      for (auto& v : cl) v = c.original[v];
    for (auto& s : part.triples)
      if (s.witness)
        for (auto& side : s.witness->sets)
          for (auto& v : side) v = c.original[v];
    res.partition = std::move(part);
  }
  res.covered = used.count();
  res.coverage = res.active ? Rational(res.covered) / Rational(res.active) : Rational(0);
  res.target_met = res.coverage >= 1 - opt.rho;
  return res;
}

std::optional<TightPath> klll_path(const KCopy& q, const PairGraph& large) {
  const std::size_t L = q.parts[0].size();
  if (L == 0 || q.parts[1].size() != L || q.parts[2].size() != L)
    fail(ErrorCode::InvalidArgument, "K_{L,L,L} parts must have equal positive size");
  static constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (std::size_t k = 3 * L; k >= 3; --k) {
    for (const auto& perm : kPerms) {
      auto cls = [&](std::size_t pos) { return perm[pos % 3]; };
      // Endpoint slots: 0, 1, k-2, k-1 (k = 3 shares slot 1).
      std::vector<std::size_t> slots = {0, 1, k - 2, k - 1};
      std::sort(slots.begin(), slots.end());
      slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
      std::vector<Vertex> at(k, 0);
      std::vector<bool> taken(3 * L, false);  // index part*L + i
      auto ends_ok = [&] {
        return large.has_edge(at[0], at[1]) && large.has_edge(at[k - 1], at[k - 2]);
      };
      auto assign = [&](auto&& self, std::size_t si) -> bool {
        if (si == slots.size()) return ends_ok();
        const std::size_t pos = slots[si];
        const int c = cls(pos);
        for (std::size_t i = 0; i < L; ++i) {
          if (taken[c * L + i]) continue;
          taken[c * L + i] = true;
          at[pos] = q.parts[c][i];
          if (self(self, si + 1)) return true;
          taken[c * L + i] = false;
        }
        return false;
      };
      if (!assign(assign, 0)) continue;
      // Remaining slots take the unused vertices of their class in order.
      for (std::size_t pos = 0; pos < k; ++pos) {
        if (std::binary_search(slots.begin(), slots.end(), pos)) continue;
        const int c = cls(pos);
        for (std::size_t i = 0; i < L; ++i)
          if (!taken[c * L + i]) {
            taken[c * L + i] = true;
            at[pos] = q.parts[c][i];
            break;
          }
      }
      return TightPath{at};
    }
  }
  return std::nullopt;
}

}  // namespace tightham
