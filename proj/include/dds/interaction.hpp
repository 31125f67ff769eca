#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "dds/circuits.hpp"
#include "dds/network.hpp"
#include "dds/signed_digraph.hpp"

namespace dds {

// Discrete Jacobian of F at (x,v): entry (i,j) is
// (f_i(x + v_j e_j) - f_i(x)) / v_j.
struct JacobianMatrix {
  int n = 0;
  std::vector<int> entries;  // row-major

  int at(int i, int j) const { return entries[static_cast<std::size_t>(i) * n + j]; }
};

namespace detail {

inline void require_xprime(const IntervalDomain& d, const State& x,
                           const Direction& v) {
  if (!d.in_xprime(x, v))
    fail(errc::not_in_xprime,
         "(" + format_state(x) + ", " + format_direction(v) + ")");
}

// a and b strictly on both sides of the half-integer threshold t, all in
// doubled integers (t odd, a and b even), so every comparison is exact.
inline bool straddles(int a2, int b2, int t2) {
  return (a2 < t2 && t2 < b2) || (b2 < t2 && t2 < a2);
}

// Local interaction edges at (x, v) of state rank r, without X' checks.
// Emits fn(j, i, sign) for every edge of the (un)thresholded local graph.
template <class Fn>
inline void scan_local_edges(const Network& net, std::uint64_t r,
                             const State& x, const Direction& v,
                             bool thresholded, Fn&& fn) {
  const IntervalDomain& d = net.domain();
  const int n = d.n();
  const std::uint32_t img0 = net.image_rank(r);
  for (int j = 0; j < n; ++j) {
    const std::uint64_t rj =
        static_cast<std::uint64_t>(static_cast<std::int64_t>(r) +
                                   v[j] * static_cast<std::int64_t>(d.stride(j)));
    const std::uint32_t imgj = net.image_rank(rj);
    if (imgj == img0) continue;
    for (int i = 0; i < n; ++i) {
      const int a = d.unrank_coord(img0, i);
      const int b = d.unrank_coord(imgj, i);
      if (a == b) continue;
      if (thresholded && !straddles(2 * a, 2 * b, 2 * x[i] + v[i])) continue;
      fn(j, i, (b > a ? 1 : -1) * v[j]);
    }
  }
}

}  // namespace detail

inline JacobianMatrix jacobian(const Network& net, const State& x,
                               const Direction& v) {
  const IntervalDomain& d = net.domain();
  detail::require_xprime(d, x, v);
  const int n = d.n();
  JacobianMatrix m;
  m.n = n;
  m.entries.assign(static_cast<std::size_t>(n) * n, 0);
  const std::uint64_t r = d.rank(x);
  const std::uint32_t img0 = net.image_rank(r);
  for (int j = 0; j < n; ++j) {
    const std::uint64_t rj =
        static_cast<std::uint64_t>(static_cast<std::int64_t>(r) +
                                   v[j] * static_cast<std::int64_t>(d.stride(j)));
    const std::uint32_t imgj = net.image_rank(rj);
    for (int i = 0; i < n; ++i)
      m.entries[static_cast<std::size_t>(i) * n + j] =
          (d.unrank_coord(imgj, i) - d.unrank_coord(img0, i)) * v[j];
  }
  return m;
}

// Interaction graph of F at (x,v) with thresholds: edge (j, sign f_ij, i)
// present iff f_ij != 0 and f_i(x), f_i(x+v_j e_j) lie strictly on both
// sides of x_i + v_i/2.
inline SignedDigraph local_graph(const Network& net, const State& x,
                                 const Direction& v) {
  detail::require_xprime(net.domain(), x, v);
  std::vector<SignedEdge> edges;
  detail::scan_local_edges(net, net.domain().rank(x), x, v, true,
                           [&](int j, int i, int s) {
                             edges.push_back({j, i, s});
                           });
  return SignedDigraph::from_edges(net.domain().n(), std::move(edges));
}

// The unthresholded variant: edge present iff f_ij != 0.
inline SignedDigraph local_graph_unthresholded(const Network& net,
                                               const State& x,
                                               const Direction& v) {
  detail::require_xprime(net.domain(), x, v);
  std::vector<SignedEdge> edges;
  detail::scan_local_edges(net, net.domain().rank(x), x, v, false,
                           [&](int j, int i, int s) {
                             edges.push_back({j, i, s});
                           });
  return SignedDigraph::from_edges(net.domain().n(), std::move(edges));
}

// Union of the chosen local graphs over all (x,v) in X'.
inline SignedDigraph global_graph(const Network& net, bool thresholded = true) {
  const IntervalDomain& d = net.domain();
  const int n = d.n();
  std::vector<char> seen(static_cast<std::size_t>(n) * n * 2, 0);
  for_each_xprime(d, [&](std::uint64_t r, const State& x, const Direction& v) {
    detail::scan_local_edges(net, r, x, v, thresholded,
                             [&](int j, int i, int s) {
                               seen[(static_cast<std::size_t>(j) * n + i) * 2 +
                                    (s > 0)] = 1;
                             });
  });
  std::vector<SignedEdge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int s : {-1, 1})
        if (seen[(static_cast<std::size_t>(j) * n + i) * 2 + (s > 0)])
          edges.push_back({j, i, s});
  return SignedDigraph::from_edges(n, std::move(edges));
}

// Per coordinate i, the set T_i(G_F) of thresholds t = x_i + v_i/2 over
// all (x,v) in X' such that i lies on a positive circuit of G_F(x,v).
// Thresholds are stored as doubled integers 2t (always odd).
struct ThresholdSets {
  std::vector<std::vector<int>> doubled;  // per coordinate, sorted ascending

  std::size_t count(int i) const { return doubled[i].size(); }
};

// Result of the single X' scan shared by threshold_sets and
// functional_positive_circuits.
struct FunctionalScan {
  CircuitFamily family;
  ThresholdSets thresholds;
};

inline FunctionalScan scan_functional(const Network& net,
                                      const CircuitCaps& caps = {}) {
  const IntervalDomain& d = net.domain();
  const int n = d.n();
  if (caps.max_vertices > detail::max_supported_vertices)
    fail(errc::bad_argument, "max_vertices cap above " +
                                 std::to_string(detail::max_supported_vertices));
  if (n > caps.max_vertices)
    fail(errc::cap_exceeded, "n = " + std::to_string(n) + " above cap " +
                                 std::to_string(caps.max_vertices));

  std::vector<std::vector<char>> hit(n);
  for (int i = 0; i < n; ++i) hit[i].assign(d.size(i) - 1, 0);
  std::map<std::uint32_t, CircuitWitness> witnesses;

  std::vector<SignedEdge> edges;
  for_each_xprime(d, [&](std::uint64_t r, const State& x, const Direction& v) {
    edges.clear();
    detail::scan_local_edges(net, r, x, v, true, [&](int j, int i, int s) {
      edges.push_back({j, i, s});
    });
    if (edges.empty()) return;
    SignedDigraph g = SignedDigraph::from_edges(n, edges);
    std::uint32_t on_positive = 0;
    enumerate_elementary_circuits(
        g, caps, [&](const std::vector<SignedEdge>& circuit) {
          if (is_positive(circuit)) {
            std::uint32_t mask = 0;
            for (const SignedEdge& e : circuit)
              mask |= std::uint32_t{1} << e.from;
            on_positive |= mask;
            if (!witnesses.count(mask))
              witnesses.emplace(mask, CircuitWitness{x, v, circuit});
          }
          return true;
        });
    for (int i = 0; i < n; ++i)
      if (on_positive >> i & 1)
        hit[i][static_cast<std::size_t>(x[i] - d.lower(i)) - (v[i] < 0)] = 1;
  });

  FunctionalScan out;
  out.family.vertex_count = n;
  for (auto& [mask, wit] : witnesses) {
    CircuitFamily::Entry entry;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) entry.support.push_back(i);
    entry.witness = std::move(wit);
    out.family.entries.push_back(std::move(entry));
  }
  std::sort(out.family.entries.begin(), out.family.entries.end(),
            [](const CircuitFamily::Entry& a, const CircuitFamily::Entry& b) {
              return a.support < b.support;
            });
  out.thresholds.doubled.resize(n);
  for (int i = 0; i < n; ++i)
    for (std::size_t k = 0; k < hit[i].size(); ++k)
      if (hit[i][k])
        out.thresholds.doubled[i].push_back(2 * (d.lower(i) + static_cast<int>(k)) + 1);
  return out;
}

inline ThresholdSets threshold_sets(const Network& net,
                                    const CircuitCaps& caps = {}) {
  return scan_functional(net, caps).thresholds;
}

inline CircuitFamily functional_positive_circuits(const Network& net,
                                                  const CircuitCaps& caps = {}) {
  return scan_functional(net, caps).family;
}

}  // namespace dds
