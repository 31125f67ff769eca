#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "dds/circuits.hpp"
#include "dds/interaction.hpp"
#include "dds/network.hpp"
#include "dds/stg.hpp"

namespace dds {

// One attractor-count bound: the vertex set it was evaluated on, the
// per-vertex factors, their product, and whether the hypothesis on I was
// verified.
struct BoundReport {
  enum class Kind { main, corollary, mu };
  Kind kind = Kind::main;
  std::vector<int> I;                  // sorted, 0-based
  std::vector<std::uint64_t> factors;  // aligned with I
  std::uint64_t value = 1;
  bool valid = true;

  static std::uint64_t product(const std::vector<std::uint64_t>& fs) {
    std::uint64_t p = 1;
    for (std::uint64_t f : fs) p *= f;
    return p;
  }
};

// Theorem bound from precomputed scan results: prod over i in I of
// (|T_i| + 1), valid iff I hits every functional positive circuit support
// (equivalently, I is a PFVS of every local graph G_F(x,v)).
inline BoundReport theorem_bound(const FunctionalScan& scan,
                                 const std::vector<int>& I) {
  BoundReport rep;
  rep.kind = BoundReport::Kind::main;
  rep.I = I;
  std::sort(rep.I.begin(), rep.I.end());
  rep.valid = scan.family.hits_all(rep.I);
  for (int i : rep.I)
    rep.factors.push_back(scan.thresholds.count(i) + 1);
  rep.value = BoundReport::product(rep.factors);
  return rep;
}

inline BoundReport theorem_bound(const Network& net, const std::vector<int>& I,
                                 const CircuitCaps& caps = {}) {
  return theorem_bound(scan_functional(net, caps), I);
}

// Corollary-style bound prod over i in I of |X_i|. The hypothesis (I is a
// PFVS of the relevant graph) is the caller's to establish.
inline BoundReport corollary_bound(const IntervalDomain& domain,
                                   const std::vector<int>& I) {
  BoundReport rep;
  rep.kind = BoundReport::Kind::corollary;
  rep.I = I;
  std::sort(rep.I.begin(), rep.I.end());
  for (int i : rep.I) {
    if (i < 0 || i >= domain.n())
      fail(errc::bad_argument, "vertex out of range");
    rep.factors.push_back(static_cast<std::uint64_t>(domain.size(i)));
  }
  rep.value = BoundReport::product(rep.factors);
  return rep;
}

// mu(G, X) = min over PFVS I of G of prod_{i in I} |X_i|, computed as an
// exact product-weighted minimum hitting set.
inline BoundReport mu(const SignedDigraph& g, const IntervalDomain& domain,
                      const CircuitCaps& caps = {}) {
  if (g.vertex_count() != domain.n())
    fail(errc::bad_argument, "graph vertex count != domain dimension");
  std::vector<std::uint64_t> weights;
  for (int i = 0; i < domain.n(); ++i)
    weights.push_back(static_cast<std::uint64_t>(domain.size(i)));
  const std::vector<int> I = detail::min_hitting_set(
      g.vertex_count(), positive_circuit_supports(g, caps), weights,
      /*multiply=*/true);
  BoundReport rep;
  rep.kind = BoundReport::Kind::mu;
  rep.I = I;
  for (int i : I)
    rep.factors.push_back(static_cast<std::uint64_t>(domain.size(i)));
  rep.value = BoundReport::product(rep.factors);
  return rep;
}

// The partition of X_i into maximal intervals avoiding every threshold of
// T_i: exactly |T_i| + 1 blocks, returned as [lo, hi] pairs in ascending
// order.
inline std::vector<std::pair<int, int>> threshold_partition(
    const IntervalDomain& domain, int i, const std::vector<int>& doubled) {
  std::vector<std::pair<int, int>> blocks;
  int start = domain.lower(i);
  for (int d2 : doubled) {
    if (d2 % 2 == 0) fail(errc::bad_argument, "thresholds must be odd doubled");
    const int below = (d2 - 1) / 2;
    blocks.emplace_back(start, below);
    start = below + 1;
  }
  blocks.emplace_back(start, domain.upper(i));
  return blocks;
}

struct ChainVerdict {
  std::string name;
  bool applicable = true;
  bool pass = true;
  std::string detail;
};

// One bound lane: a choice of I with both bound forms evaluated on it.
struct BoundLane {
  std::string name;
  std::vector<int> I;
  BoundReport main_bound;  // prod (|T_i|+1)
  BoundReport box_bound;   // prod |X_i|
};

struct AnalysisReport {
  // network summary
  int n = 0;
  std::string domain_text;
  std::uint64_t cardinality = 0;
  bool clamped_elaboration = false;

  std::vector<StateSet> attractor_sets;
  std::vector<State> fixed_point_states;
  std::uint64_t attractor_count = 0;
  std::uint64_t fixed_point_count = 0;

  ThresholdSets thresholds;
  CircuitFamily family;
  SignedDigraph global_thresholded;
  SignedDigraph global_unthresholded;

  // Three I choices, loosest hypothesis last: the family-optimal I, the
  // minimum PFVS of the global graph, and the minimum PFVS of the
  // unthresholded global graph.
  BoundLane lane_family, lane_global, lane_unthresholded;
  BoundReport mu_bound;

  std::vector<ChainVerdict> verdicts;

  // fixed machine-readable fields
  std::uint64_t bound_main() const { return lane_family.main_bound.value; }
  std::uint64_t bound_corollary() const { return lane_family.box_bound.value; }
  std::uint64_t bound_mu() const { return mu_bound.value; }
  const std::vector<int>& pfvs() const { return lane_family.I; }

  bool all_verdicts_pass() const {
    for (const ChainVerdict& v : verdicts)
      if (v.applicable && !v.pass) return false;
    return true;
  }
};

// Full pipeline: attractors, fixed points, interaction graphs, functional
// positive circuits, threshold sets, the three bound lanes and mu, plus
// the hierarchy verdicts.
inline AnalysisReport analyze(const Network& net, const CircuitCaps& caps = {}) {
  AnalysisReport rep;
  const IntervalDomain& d = net.domain();
  rep.n = d.n();
  rep.domain_text = d.describe();
  rep.cardinality = d.cardinality();
  rep.clamped_elaboration = net.clamped_elaboration();

  const TransitionGraph stg = build_stg(net);
  rep.attractor_sets = attractors(stg);
  rep.attractor_count = rep.attractor_sets.size();
  rep.fixed_point_states = net.fixed_points();
  rep.fixed_point_count = rep.fixed_point_states.size();

  const FunctionalScan scan = scan_functional(net, caps);
  rep.thresholds = scan.thresholds;
  rep.family = scan.family;
  rep.global_thresholded = global_graph(net, true);
  rep.global_unthresholded = global_graph(net, false);

  auto make_lane = [&](const std::string& name, std::vector<int> I) {
    BoundLane lane;
    lane.name = name;
    std::sort(I.begin(), I.end());
    lane.I = I;
    lane.main_bound = theorem_bound(scan, I);
    lane.box_bound = corollary_bound(d, I);
    lane.box_bound.valid = lane.main_bound.valid;
    return lane;
  };
  rep.lane_family = make_lane("family", minimum_pfvs_family(scan.family));
  rep.lane_global = make_lane("global", minimum_pfvs(rep.global_thresholded, {}, caps));
  rep.lane_unthresholded =
      make_lane("unthresholded", minimum_pfvs(rep.global_unthresholded, {}, caps));
  rep.mu_bound = mu(rep.global_thresholded, d, caps);

  auto verdict = [&](const std::string& name, bool applicable, bool pass,
                     const std::string& detail) {
    rep.verdicts.push_back({name, applicable, pass, detail});
  };
  verdict("fixed_le_attractors", true,
          rep.fixed_point_count <= rep.attractor_count,
          std::to_string(rep.fixed_point_count) + " <= " +
              std::to_string(rep.attractor_count));
  verdict("attractors_le_bound_main", true,
          rep.attractor_count <= rep.bound_main(),
          std::to_string(rep.attractor_count) + " <= " +
              std::to_string(rep.bound_main()));
  verdict("bound_main_le_corollary", true,
          rep.bound_main() <= rep.bound_corollary(),
          std::to_string(rep.bound_main()) + " <= " +
              std::to_string(rep.bound_corollary()));
  verdict("attractors_le_mu", true, rep.attractor_count <= rep.bound_mu(),
          std::to_string(rep.attractor_count) + " <= " +
              std::to_string(rep.bound_mu()));
  verdict("unique_attractor_without_positive_circuit", rep.family.empty(),
          !rep.family.empty() || rep.attractor_count == 1,
          rep.family.empty()
              ? "no functional positive circuit, attractors = " +
                    std::to_string(rep.attractor_count)
              : "not applicable: functional positive circuits exist");
  return rep;
}

}  // namespace dds
