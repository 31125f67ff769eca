#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "dds/domain.hpp"

namespace dds {

// A map F : X -> X stored as a fully tabulated image array (image state
// rank per state rank). Immutable after construction; evaluation is pure.
class Network {
 public:
  // Tabulation limit; larger domains must be analyzed piecewise elsewhere.
  static constexpr std::uint64_t max_states = std::uint64_t{1} << 24;

  Network(IntervalDomain domain, std::vector<std::uint32_t> images,
          bool clamped_elaboration = false)
      : domain_(std::move(domain)),
        images_(std::move(images)),
        clamped_(clamped_elaboration) {
    if (domain_.cardinality() > max_states)
      fail(errc::network_too_large,
           "|X| = " + std::to_string(domain_.cardinality()) + " exceeds " +
               std::to_string(max_states));
    if (images_.size() != domain_.cardinality())
      fail(errc::bad_argument, "image table length != |X|");
    for (std::uint32_t r : images_)
      if (r >= domain_.cardinality())
        fail(errc::out_of_domain, "image rank " + std::to_string(r));
  }

  template <class Fn>
  static Network tabulate(const IntervalDomain& domain, Fn&& f) {
    if (domain.cardinality() > max_states)
      fail(errc::network_too_large,
           "|X| = " + std::to_string(domain.cardinality()));
    std::vector<std::uint32_t> images;
    images.reserve(domain.cardinality());
    for (const State& x : enumerate_states(domain))
      images.push_back(static_cast<std::uint32_t>(domain.rank(f(x))));
    return Network(domain, std::move(images));
  }

  const IntervalDomain& domain() const { return domain_; }
  bool clamped_elaboration() const { return clamped_; }

  State evaluate(const State& x) const {
    return domain_.unrank(images_[domain_.rank(x)]);
  }
  std::uint32_t image_rank(std::uint64_t r) const { return images_[r]; }
  int image_coord(std::uint64_t r, int i) const {
    return domain_.unrank_coord(images_[r], i);
  }
  const std::vector<std::uint32_t>& images() const { return images_; }

  std::vector<State> fixed_points() const {
    std::vector<State> out;
    for (std::uint64_t r = 0; r < images_.size(); ++r)
      if (images_[r] == r) out.push_back(domain_.unrank(r));
    return out;
  }

  std::uint64_t fixed_point_count() const {
    std::uint64_t c = 0;
    for (std::uint64_t r = 0; r < images_.size(); ++r)
      if (images_[r] == r) ++c;
    return c;
  }

  bool operator==(const Network& o) const {
    return domain_ == o.domain_ && images_ == o.images_;
  }
  bool operator!=(const Network& o) const { return !(*this == o); }

 private:
  IntervalDomain domain_;
  std::vector<std::uint32_t> images_;
  bool clamped_;
};

// An interval window Y inside coordinate `coord` of X.
struct RestrictionSpec {
  int coord;    // 0-based
  int win_lo;   // min(Y)
  int win_hi;   // max(Y)
};

// The clamped map: component `coord` of every image is clamped into
// [win_lo, win_hi]; all other components are untouched.
inline Network restrict_component(const Network& net,
                                  const RestrictionSpec& spec) {
  const IntervalDomain& d = net.domain();
  if (spec.coord < 0 || spec.coord >= d.n())
    fail(errc::bad_restriction, "coordinate out of range");
  if (spec.win_lo > spec.win_hi || spec.win_lo < d.lower(spec.coord) ||
      spec.win_hi > d.upper(spec.coord))
    fail(errc::bad_restriction,
         "window " + std::to_string(spec.win_lo) + ".." +
             std::to_string(spec.win_hi) + " not a non-empty subinterval of " +
             std::to_string(d.lower(spec.coord)) + ".." +
             std::to_string(d.upper(spec.coord)));
  const std::uint64_t stride = d.stride(spec.coord);
  std::vector<std::uint32_t> images(net.images());
  for (std::uint32_t& img : images) {
    const int c = d.unrank_coord(img, spec.coord);
    const int cc = std::clamp(c, spec.win_lo, spec.win_hi);
    img = static_cast<std::uint32_t>(img + (cc - c) * static_cast<std::int64_t>(stride));
  }
  return Network(d, std::move(images), net.clamped_elaboration());
}

// Table form of the network definition format: domain declarations with
// canonical names x1..xn followed by one "state -> image" row per state in
// enumeration order. Byte-deterministic.
inline std::string render_table(const Network& net) {
  const IntervalDomain& d = net.domain();
  std::string out;
  for (int i = 0; i < d.n(); ++i)
    out += "domain x" + std::to_string(i + 1) + " " +
           std::to_string(d.lower(i)) + ".." + std::to_string(d.upper(i)) +
           "\n";
  State img;
  for (const State& x : enumerate_states(d)) {
    const std::uint64_t r = d.rank(x);
    d.unrank_into(net.image_rank(r), img);
    for (int i = 0; i < d.n(); ++i) {
      if (i) out += " ";
      out += std::to_string(x[i]);
    }
    out += " ->";
    for (int i = 0; i < d.n(); ++i) out += " " + std::to_string(img[i]);
    out += "\n";
  }
  return out;
}

}  // namespace dds
