#pragma once

#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dds/common.hpp"

namespace dds {

// A state x = (x_1,...,x_n); coordinates are 0-based in the API and
// 1-based only in rendered output.
using State = std::vector<int>;

// A directional vector v with every component -1 or +1.
using Direction = std::vector<int>;

inline std::string format_state(const State& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(x[i]);
  }
  out += ")";
  return out;
}

inline std::string format_direction(const Direction& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i] > 0 ? "+1" : "-1";
  }
  out += ")";
  return out;
}

// The product X of n closed integer intervals [lower_i, upper_i], each of
// cardinality at least 2. States map to ranks in mixed-radix lexicographic
// order with coordinate 0 most significant, which fixes the enumeration
// order used by every report and export.
class IntervalDomain {
 public:
  IntervalDomain(std::vector<int> lower, std::vector<int> upper)
      : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty() || lower_.size() != upper_.size())
      fail(errc::bad_argument, "domain needs matching non-empty bounds");
    const int n = static_cast<int>(lower_.size());
    size_.resize(n);
    for (int i = 0; i < n; ++i) {
      if (upper_[i] < lower_[i] + 1)
        fail(errc::degenerate_interval,
             "interval " + std::to_string(i + 1) + " = " +
                 std::to_string(lower_[i]) + ".." + std::to_string(upper_[i]) +
                 " has fewer than 2 values");
      size_[i] = upper_[i] - lower_[i] + 1;
    }
    stride_.assign(n, 1);
    for (int i = n - 2; i >= 0; --i) {
      std::uint64_t s;
      if (__builtin_mul_overflow(stride_[i + 1],
                                 static_cast<std::uint64_t>(size_[i + 1]), &s))
        fail(errc::domain_overflow, "|X| exceeds 64-bit range");
      stride_[i] = s;
    }
    if (__builtin_mul_overflow(stride_[0], static_cast<std::uint64_t>(size_[0]),
                               &card_))
      fail(errc::domain_overflow, "|X| exceeds 64-bit range");
  }

  // [0, levels-1]^n
  static IntervalDomain uniform(int n, int levels) {
    return IntervalDomain(std::vector<int>(n, 0),
                          std::vector<int>(n, levels - 1));
  }
  static IntervalDomain boolean_cube(int n) { return uniform(n, 2); }

  int n() const { return static_cast<int>(lower_.size()); }
  int lower(int i) const { return lower_[i]; }
  int upper(int i) const { return upper_[i]; }
  int size(int i) const { return size_[i]; }
  std::uint64_t stride(int i) const { return stride_[i]; }
  std::uint64_t cardinality() const { return card_; }

  bool is_boolean() const {
    for (int s : size_)
      if (s != 2) return false;
    return true;
  }

  bool contains(const State& x) const {
    if (static_cast<int>(x.size()) != n()) return false;
    for (int i = 0; i < n(); ++i)
      if (x[i] < lower_[i] || x[i] > upper_[i]) return false;
    return true;
  }

  std::uint64_t rank(const State& x) const {
    if (!contains(x)) fail(errc::out_of_domain, "state " + format_state(x));
    std::uint64_t r = 0;
    for (int i = 0; i < n(); ++i)
      r += static_cast<std::uint64_t>(x[i] - lower_[i]) * stride_[i];
    return r;
  }

  State unrank(std::uint64_t k) const {
    if (k >= card_)
      fail(errc::out_of_domain, "rank " + std::to_string(k) + " >= |X|");
    State x(n());
    for (int i = 0; i < n(); ++i)
      x[i] = static_cast<int>((k / stride_[i]) % size_[i]) + lower_[i];
    return x;
  }

  // Coordinate i of the state with the given rank; no bounds check.
  int unrank_coord(std::uint64_t k, int i) const {
    return static_cast<int>((k / stride_[i]) % size_[i]) + lower_[i];
  }

  void unrank_into(std::uint64_t k, State& x) const {
    x.resize(n());
    for (int i = 0; i < n(); ++i)
      x[i] = static_cast<int>((k / stride_[i]) % size_[i]) + lower_[i];
  }

  // Mixed-radix increment in enumeration order; false once exhausted.
  bool next_state(State& x) const {
    for (int i = n() - 1; i >= 0; --i) {
      if (x[i] < upper_[i]) {
        ++x[i];
        return true;
      }
      x[i] = lower_[i];
    }
    return false;
  }

  bool is_valid_direction(const Direction& v) const {
    if (static_cast<int>(v.size()) != n()) return false;
    for (int c : v)
      if (c != -1 && c != 1) return false;
    return true;
  }

  // x + v componentwise inside X, i.e. (x,v) in X'.
  bool in_xprime(const State& x, const Direction& v) const {
    if (!contains(x) || !is_valid_direction(v)) return false;
    for (int i = 0; i < n(); ++i) {
      const int y = x[i] + v[i];
      if (y < lower_[i] || y > upper_[i]) return false;
    }
    return true;
  }

  bool operator==(const IntervalDomain& o) const {
    return lower_ == o.lower_ && upper_ == o.upper_;
  }
  bool operator!=(const IntervalDomain& o) const { return !(*this == o); }

  // "lo..hi x lo..hi x ..."
  std::string describe() const {
    std::string out;
    for (int i = 0; i < n(); ++i) {
      if (i) out += " x ";
      out += std::to_string(lower_[i]) + ".." + std::to_string(upper_[i]);
    }
    return out;
  }

 private:
  std::vector<int> lower_, upper_, size_;
  std::vector<std::uint64_t> stride_;
  std::uint64_t card_ = 0;
};

// Lazy ordered stream over X, restartable from any rank.
class StateRange {
 public:
  class iterator {
   public:
    iterator(const IntervalDomain* d, std::uint64_t k) : dom_(d), rank_(k) {
      if (dom_ && rank_ < dom_->cardinality()) dom_->unrank_into(rank_, cur_);
    }
    const State& operator*() const { return cur_; }
    iterator& operator++() {
      ++rank_;
      if (rank_ < dom_->cardinality()) dom_->next_state(cur_);
      return *this;
    }
    bool operator!=(const iterator& o) const { return rank_ != o.rank_; }
    std::uint64_t rank() const { return rank_; }

   private:
    const IntervalDomain* dom_;
    std::uint64_t rank_;
    State cur_;
  };

  explicit StateRange(const IntervalDomain& d, std::uint64_t start = 0)
      : dom_(&d), start_(start) {}
  iterator begin() const { return iterator(dom_, start_); }
  iterator end() const { return iterator(dom_, dom_->cardinality()); }

 private:
  const IntervalDomain* dom_;
  std::uint64_t start_;
};

inline StateRange enumerate_states(const IntervalDomain& d,
                                   std::uint64_t start_rank = 0) {
  return StateRange(d, start_rank);
}

// Visits every (x,v) in X' in state-major order; per state the directions
// run in sign-lexicographic order (-1 before +1). The callback receives the
// state rank as well since most scans key off it. Restartable from any
// state rank for partitioned scans.
template <class Fn>
inline void for_each_xprime(const IntervalDomain& d, Fn&& fn,
                            std::uint64_t start_rank = 0,
                            std::uint64_t end_rank = UINT64_MAX) {
  const int n = d.n();
  State x;
  Direction v(n);
  std::vector<char> can_dn(n), can_up(n);
  const std::uint64_t stop = std::min(end_rank, d.cardinality());
  for (std::uint64_t r = start_rank; r < stop; ++r) {
    if (r == start_rank)
      d.unrank_into(r, x);
    else
      d.next_state(x);
    for (int i = 0; i < n; ++i) {
      can_dn[i] = x[i] > d.lower(i);
      can_up[i] = x[i] < d.upper(i);
      v[i] = can_dn[i] ? -1 : 1;
    }
    for (;;) {
      fn(r, static_cast<const State&>(x), static_cast<const Direction&>(v));
      int i = n - 1;
      for (; i >= 0; --i) {
        if (v[i] == -1 && can_up[i]) {
          v[i] = 1;
          break;
        }
        v[i] = can_dn[i] ? -1 : 1;
      }
      if (i < 0) break;
    }
  }
}

// Materialized X'; intended for small domains and tests.
inline std::vector<std::pair<State, Direction>> enumerate_xprime(
    const IntervalDomain& d) {
  std::vector<std::pair<State, Direction>> out;
  for_each_xprime(d, [&](std::uint64_t, const State& x, const Direction& v) {
    out.emplace_back(x, v);
  });
  return out;
}

}  // namespace dds
