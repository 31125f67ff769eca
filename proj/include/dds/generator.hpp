#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dds/expr.hpp"
#include "dds/interaction.hpp"
#include "dds/network.hpp"

namespace dds {

// Counter-based splittable PRNG built on the SplitMix64 finalizer
// (Steele, Lea & Flood 2014; constants 0x9E3779B97F4A7C15,
// 0xBF58476D1CE4E5B9, 0x94D049BB133111EB). out_k = mix(key + k * GOLDEN);
// split(i) derives an independent stream with key mix(key ^ mix(i+1)).
// Pure 64-bit arithmetic, so identical seeds reproduce identical networks
// on any platform.
class SplitMix64 {
 public:
  static constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ull;

  explicit SplitMix64(std::uint64_t key) : key_(key) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t next() { return mix(key_ + ++counter_ * golden); }

  // value in [0, bound) via the fixed-point multiply reduction
  std::uint64_t bounded(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  SplitMix64 split(std::uint64_t stream) const {
    return SplitMix64(mix(key_ ^ mix(stream + 1)));
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

inline constexpr const char* rng_algorithm_id = "splitmix64-counter-v1";

// Per-item seed for batch jobs; matches SplitMix64::split so a batch item
// can be regenerated standalone from the derived seed alone.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return SplitMix64::mix(base ^ SplitMix64::mix(stream + 1));
}

enum class GenMode {
  uniform_table,
  random_rules,
  no_positive_circuit,  // rejection-sampled: empty functional family
  no_dual_sign,         // rejection-sampled: G(F) has one sign per (j,i)
};

inline const char* gen_mode_name(GenMode m) {
  switch (m) {
    case GenMode::uniform_table: return "uniform";
    case GenMode::random_rules: return "rules";
    case GenMode::no_positive_circuit: return "no-positive-circuit";
    case GenMode::no_dual_sign: return "no-dual-sign";
  }
  return "?";
}

struct GeneratorSpec {
  std::uint64_t seed = 0;
  IntervalDomain domain;
  GenMode mode = GenMode::uniform_table;
  int max_retries = 5000;  // for the constrained modes
};

namespace detail {

inline Network generate_uniform(const IntervalDomain& d, SplitMix64& rng) {
  std::vector<std::uint32_t> images;
  images.reserve(d.cardinality());
  State img(d.n());
  for (std::uint64_t r = 0; r < d.cardinality(); ++r) {
    for (int i = 0; i < d.n(); ++i)
      img[i] = d.lower(i) + static_cast<int>(rng.bounded(d.size(i)));
    images.push_back(static_cast<std::uint32_t>(d.rank(img)));
  }
  return Network(d, std::move(images));
}

inline Expr random_expr(const IntervalDomain& d, int target, SplitMix64& rng,
                        int depth) {
  if (depth <= 0 || rng.bounded(4) == 0) {
    if (rng.bounded(2) == 0)
      return Expr::variable(static_cast<int>(rng.bounded(d.n())));
    return Expr::literal(d.lower(target) +
                         static_cast<std::int64_t>(rng.bounded(d.size(target))));
  }
  switch (rng.bounded(10)) {
    case 0:
      return Expr::make(Expr::Op::add, {random_expr(d, target, rng, depth - 1),
                                        random_expr(d, target, rng, depth - 1)});
    case 1:
      return Expr::make(Expr::Op::sub, {random_expr(d, target, rng, depth - 1),
                                        random_expr(d, target, rng, depth - 1)});
    case 2:
      return Expr::make(Expr::Op::mul, {random_expr(d, target, rng, depth - 1),
                                        random_expr(d, target, rng, depth - 1)});
    case 3:
      return Expr::make(Expr::Op::min_fn,
                        {random_expr(d, target, rng, depth - 1),
                         random_expr(d, target, rng, depth - 1)});
    case 4:
      return Expr::make(Expr::Op::max_fn,
                        {random_expr(d, target, rng, depth - 1),
                         random_expr(d, target, rng, depth - 1)});
    case 5:
      return Expr::make(Expr::Op::if_fn,
                        {random_expr(d, target, rng, depth - 1),
                         random_expr(d, target, rng, depth - 1),
                         random_expr(d, target, rng, depth - 1)});
    case 6:
      return Expr::make(Expr::Op::lt, {random_expr(d, target, rng, depth - 1),
                                       random_expr(d, target, rng, depth - 1)});
    case 7:
      return Expr::make(Expr::Op::ge, {random_expr(d, target, rng, depth - 1),
                                       random_expr(d, target, rng, depth - 1)});
    case 8:
      return Expr::make(Expr::Op::log_and,
                        {random_expr(d, target, rng, depth - 1),
                         random_expr(d, target, rng, depth - 1)});
    default:
      return Expr::make(Expr::Op::log_not,
                        {random_expr(d, target, rng, depth - 1)});
  }
}

// Rule-built network, clamped into the domain like the clamp mode of
// elaboration.
inline Network generate_rules(const IntervalDomain& d, SplitMix64& rng) {
  std::vector<Expr> rules;
  for (int i = 0; i < d.n(); ++i) rules.push_back(random_expr(d, i, rng, 3));
  std::vector<std::uint32_t> images;
  images.reserve(d.cardinality());
  State img(d.n());
  for (const State& x : enumerate_states(d)) {
    for (int i = 0; i < d.n(); ++i)
      img[i] = static_cast<int>(std::clamp<std::int64_t>(
          eval_expr(rules[i], x), d.lower(i), d.upper(i)));
    images.push_back(static_cast<std::uint32_t>(d.rank(img)));
  }
  return Network(d, std::move(images), true);
}

}  // namespace detail

// Deterministic network generation: one spec, one network. Constrained
// modes rejection-sample uniform tables and throw errc::retries_exhausted
// when the retry budget runs out.
inline Network generate(const GeneratorSpec& spec, const CircuitCaps& caps = {}) {
  SplitMix64 root(spec.seed);
  switch (spec.mode) {
    case GenMode::uniform_table: {
      SplitMix64 rng = root.split(0);
      return detail::generate_uniform(spec.domain, rng);
    }
    case GenMode::random_rules: {
      SplitMix64 rng = root.split(0);
      return detail::generate_rules(spec.domain, rng);
    }
    case GenMode::no_positive_circuit: {
      for (int attempt = 0; attempt < spec.max_retries; ++attempt) {
        SplitMix64 rng = root.split(static_cast<std::uint64_t>(attempt));
        Network net = detail::generate_uniform(spec.domain, rng);
        if (functional_positive_circuits(net, caps).empty()) return net;
      }
      fail(errc::retries_exhausted,
           "no positive-circuit-free network after " +
               std::to_string(spec.max_retries) + " attempts");
    }
    case GenMode::no_dual_sign: {
      for (int attempt = 0; attempt < spec.max_retries; ++attempt) {
        SplitMix64 rng = root.split(static_cast<std::uint64_t>(attempt));
        Network net = detail::generate_uniform(spec.domain, rng);
        if (!global_graph(net, true).has_dual_sign_pair()) return net;
      }
      fail(errc::retries_exhausted,
           "no dual-sign-free network after " +
               std::to_string(spec.max_retries) + " attempts");
    }
  }
  fail(errc::bad_argument, "unknown generation mode");
}

// "k1xk2x..." with each k either a cardinality (interval 0..k-1) or an
// explicit "lo..hi".
inline IntervalDomain parse_shape(const std::string& text) {
  std::vector<int> lo, hi;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find('x', pos);
    if (next == std::string::npos) next = text.size();
    const std::string part = text.substr(pos, next - pos);
    if (part.empty())
      fail(errc::bad_argument, "bad shape '" + text + "'");
    const std::size_t dots = part.find("..");
    try {
      if (dots == std::string::npos) {
        const int k = std::stoi(part);
        lo.push_back(0);
        hi.push_back(k - 1);
      } else {
        lo.push_back(std::stoi(part.substr(0, dots)));
        hi.push_back(std::stoi(part.substr(dots + 2)));
      }
    } catch (const std::exception&) {
      fail(errc::bad_argument, "bad shape component '" + part + "'");
    }
    pos = next + 1;
    if (next == text.size()) break;
  }
  return IntervalDomain(lo, hi);
}

inline std::string shape_text(const IntervalDomain& d) {
  std::string out;
  for (int i = 0; i < d.n(); ++i) {
    if (i) out += "x";
    if (d.lower(i) == 0)
      out += std::to_string(d.size(i));
    else
      out += std::to_string(d.lower(i)) + ".." + std::to_string(d.upper(i));
  }
  return out;
}

}  // namespace dds
