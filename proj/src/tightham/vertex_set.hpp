#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "tightham/error.hpp"

namespace tightham {

using Vertex = std::uint32_t;

// Fixed-universe bitmap over vertices 0..n-1. Bits past n are always zero.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  static VertexSet full(std::size_t n) {
    VertexSet s(n);
    for (auto& w : s.w_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  static VertexSet of(std::size_t n, std::span<const Vertex> vs) {
    VertexSet s(n);
    for (Vertex v : vs) s.insert(v);
    return s;
  }

  static VertexSet of(std::size_t n, std::initializer_list<Vertex> vs) {
    VertexSet s(n);
    for (Vertex v : vs) s.insert(v);
    return s;
  }

  std::size_t universe() const noexcept { return n_; }

  bool contains(Vertex v) const noexcept {
    return v < n_ && ((w_[v >> 6] >> (v & 63)) & 1u);
  }

  void insert(Vertex v) {
    check(v);
    w_[v >> 6] |= std::uint64_t{1} << (v & 63);
  }

  void erase(Vertex v) {
    check(v);
    w_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool empty() const noexcept {
    for (auto w : w_)
      if (w) return false;
    return true;
  }

  std::size_t intersection_count(const VertexSet& o) const {
    same_universe(o);
    std::size_t c = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) c += static_cast<std::size_t>(std::popcount(w_[i] & o.w_[i]));
    return c;
  }

  bool intersects(const VertexSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  bool is_subset_of(const VertexSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  VertexSet complement() const {
    VertexSet r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
    r.trim();
    return r;
  }

  VertexSet& operator|=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }

  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  friend bool operator==(const VertexSet&, const VertexSet&) = default;

  // Smallest member >= from, if any.
  std::optional<Vertex> next(Vertex from = 0) const noexcept {
    if (from >= n_) return std::nullopt;
    std::size_t i = from >> 6;
    std::uint64_t w = w_[i] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w) return static_cast<Vertex>(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      if (++i >= w_.size()) return std::nullopt;
      w = w_[i];
    }
  }

  std::optional<Vertex> first() const noexcept { return next(0); }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t w = w_[i];
      while (w) {
        f(static_cast<Vertex>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
        w &= w - 1;
      }
    }
  }

  std::vector<Vertex> to_vector() const {
    std::vector<Vertex> out;
    out.reserve(count());
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
  }

  std::span<const std::uint64_t> words() const noexcept { return w_; }
  std::span<std::uint64_t> words() noexcept { return w_; }

 private:
  void check(Vertex v) const {
    if (v >= n_) fail(ErrorCode::OutOfRange, "vertex " + std::to_string(v) + " outside universe of size " + std::to_string(n_));
  }
  void same_universe(const VertexSet& o) const {
    if (o.n_ != n_) fail(ErrorCode::InvalidArgument, "vertex sets over different universes");
  }
  void trim() {
    if (n_ % 64 && !w_.empty()) w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace tightham
