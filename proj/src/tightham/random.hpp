#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace tightham {

// splitmix64 finalizer. Every component seed is derive_seed(root, stream) so a
// single --seed fixes the whole run.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) noexcept {
  return mix64(root ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

// Well-known stream ids.
namespace streams {
inline constexpr std::uint64_t kGenerate = 1;
inline constexpr std::uint64_t kAbsorbers = 2;
inline constexpr std::uint64_t kReservoir = 3;
inline constexpr std::uint64_t kCover = 4;
inline constexpr std::uint64_t kConnect = 5;
inline constexpr std::uint64_t kRetry = 6;
inline constexpr std::uint64_t kThreshold = 7;
inline constexpr std::uint64_t kSweep = 8;
inline constexpr std::uint64_t kRegularity = 9;
}  // namespace streams

// Portable draws on top of mt19937_64 (the std distributions are not
// reproducible across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, bound); bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do x = eng_();
    while (x >= limit);
    return x % bound;
  }

  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

  template <class T>
  void shuffle(std::span<T> xs) {
    for (std::size_t i = xs.size(); i > 1; --i) std::swap(xs[i - 1], xs[below(i)]);
  }

  template <class T>
  void shuffle(std::vector<T>& xs) {
    shuffle(std::span<T>(xs));
  }

  // k distinct draws from [0, n) in draw order; k <= n.
  std::vector<std::uint32_t> sample(std::uint32_t n, std::uint32_t k) {
    std::vector<std::uint32_t> pool(n);
    for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
    for (std::uint32_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + below(n - i)]);
    pool.resize(k);
    return pool;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace tightham
