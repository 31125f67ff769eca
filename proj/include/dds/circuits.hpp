#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "dds/domain.hpp"
#include "dds/signed_digraph.hpp"

namespace dds {

// An elementary circuit as its edge sequence (j_1,s_1,i_1),...,(j_r,s_r,i_r)
// with i_k = j_{k+1}, i_r = j_1, mutually distinct j_k, canonically rotated
// to start at the smallest vertex.
struct SignedCircuit {
  std::vector<SignedEdge> edges;
};

inline bool is_positive(const std::vector<SignedEdge>& edges) {
  int negatives = 0;
  for (const SignedEdge& e : edges) negatives += e.sign < 0;
  return (negatives & 1) == 0;
}

inline bool is_positive(const SignedCircuit& c) { return is_positive(c.edges); }

namespace detail {

constexpr int max_supported_vertices = 30;  // vertex-set bitmask width

inline void check_circuit_caps(const SignedDigraph& g, const CircuitCaps& caps) {
  if (caps.max_vertices > max_supported_vertices)
    fail(errc::bad_argument,
         "max_vertices cap above " + std::to_string(max_supported_vertices));
  if (g.vertex_count() > caps.max_vertices)
    fail(errc::cap_exceeded,
         "graph has " + std::to_string(g.vertex_count()) +
             " vertices, cap is " + std::to_string(caps.max_vertices));
}

// Elementary circuit search in the style of Johnson's algorithm
// (D. B. Johnson, "Finding all the elementary circuits of a directed
// graph", SIAM J. Comput. 4(1), 1975), on a signed multigraph: parallel
// edges of opposite sign are explored as distinct branches so each signed
// variant is reported once. Roots run in increasing order over the
// subgraph induced on vertices >= root, which yields every circuit exactly
// once, rooted at its smallest vertex.
template <class Fn>
class CircuitSearch {
 public:
  CircuitSearch(const SignedDigraph& g, const CircuitCaps& caps, Fn& cb)
      : n_(g.vertex_count()),
        adj_(g.out_adjacency()),
        caps_(caps),
        cb_(cb),
        blocked_(n_, 0),
        blist_(n_),
        blist_mask_(n_, 0) {}

  // False when the visitor stopped the enumeration early.
  bool run() {
    for (root_ = 0; root_ < n_ && !stopped_; ++root_) {
      bool reaches = false;
      for (const auto& [w, s] : adj_[root_]) reaches |= w >= root_;
      if (!reaches) continue;
      std::fill(blocked_.begin(), blocked_.end(), 0);
      std::fill(blist_mask_.begin(), blist_mask_.end(), 0);
      for (auto& b : blist_) b.clear();
      path_.clear();
      circuit(root_);
    }
    return !stopped_;
  }

 private:
  bool circuit(int v) {
    bool found = false;
    blocked_[v] = 1;
    for (const auto& [w, sgn] : adj_[v]) {
      if (w < root_) continue;
      if (w == root_) {
        path_.push_back({v, w, sgn});
        emit();
        path_.pop_back();
        found = true;
      } else if (!blocked_[w]) {
        path_.push_back({v, w, sgn});
        if (circuit(w)) found = true;
        path_.pop_back();
      }
      if (stopped_) return found;
    }
    if (found) {
      unblock(v);
    } else {
      for (const auto& [w, sgn] : adj_[v]) {
        if (w < root_) continue;
        if (!(blist_mask_[w] >> v & 1)) {
          blist_mask_[w] |= std::uint32_t{1} << v;
          blist_[w].push_back(v);
        }
      }
    }
    return found;
  }

  void unblock(int v) {
    blocked_[v] = 0;
    while (!blist_[v].empty()) {
      const int u = blist_[v].back();
      blist_[v].pop_back();
      blist_mask_[v] &= ~(std::uint32_t{1} << u);
      if (blocked_[u]) unblock(u);
    }
  }

  void emit() {
    if (++emitted_ > caps_.max_circuits)
      fail(errc::cap_exceeded,
           "more than " + std::to_string(caps_.max_circuits) +
               " elementary circuits");
    if (!cb_(static_cast<const std::vector<SignedEdge>&>(path_)))
      stopped_ = true;
  }

  int n_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  const CircuitCaps& caps_;
  Fn& cb_;
  int root_ = 0;
  bool stopped_ = false;
  std::uint64_t emitted_ = 0;
  std::vector<char> blocked_;
  std::vector<std::vector<int>> blist_;
  std::vector<std::uint32_t> blist_mask_;
  std::vector<SignedEdge> path_;
};

}  // namespace detail

// Visits every elementary circuit once; the callback gets the closed edge
// sequence and returns false to stop the search. Returns false on early
// stop. Throws errc::cap_exceeded when a cap is hit.
template <class Fn>
inline bool enumerate_elementary_circuits(const SignedDigraph& g,
                                          const CircuitCaps& caps, Fn cb) {
  detail::check_circuit_caps(g, caps);
  detail::CircuitSearch<Fn> search(g, caps, cb);
  return search.run();
}

inline std::vector<SignedCircuit> elementary_circuits(
    const SignedDigraph& g, const CircuitCaps& caps = {}) {
  std::vector<SignedCircuit> out;
  enumerate_elementary_circuits(g, caps,
                                [&](const std::vector<SignedEdge>& edges) {
                                  out.push_back(SignedCircuit{edges});
                                  return true;
                                });
  return out;
}

inline bool has_positive_circuit(const SignedDigraph& g,
                                 const CircuitCaps& caps = {}) {
  bool found = false;
  enumerate_elementary_circuits(g, caps,
                                [&](const std::vector<SignedEdge>& edges) {
                                  found = is_positive(edges);
                                  return !found;
                                });
  return found;
}

// Bitmask of vertices lying on at least one positive circuit.
inline std::uint32_t positive_circuit_vertex_mask(const SignedDigraph& g,
                                                  const CircuitCaps& caps = {}) {
  std::uint32_t mask = 0;
  const std::uint32_t all =
      g.vertex_count() >= 32 ? ~std::uint32_t{0}
                             : (std::uint32_t{1} << g.vertex_count()) - 1;
  enumerate_elementary_circuits(g, caps,
                                [&](const std::vector<SignedEdge>& edges) {
                                  if (is_positive(edges))
                                    for (const SignedEdge& e : edges)
                                      mask |= std::uint32_t{1} << e.from;
                                  return mask != all;
                                });
  return mask;
}

// Deduplicated vertex supports (as bitmasks) of all positive circuits.
inline std::vector<std::uint32_t> positive_circuit_supports(
    const SignedDigraph& g, const CircuitCaps& caps = {}) {
  std::vector<std::uint32_t> supports;
  enumerate_elementary_circuits(g, caps,
                                [&](const std::vector<SignedEdge>& edges) {
                                  if (is_positive(edges)) {
                                    std::uint32_t m = 0;
                                    for (const SignedEdge& e : edges)
                                      m |= std::uint32_t{1} << e.from;
                                    supports.push_back(m);
                                  }
                                  return true;
                                });
  std::sort(supports.begin(), supports.end());
  supports.erase(std::unique(supports.begin(), supports.end()),
                 supports.end());
  return supports;
}

// I is a positive feedback vertex set iff the vertex-deleted subgraph has
// no positive circuit.
inline bool is_pfvs(const SignedDigraph& g, const std::vector<int>& I,
                    const CircuitCaps& caps = {}) {
  return !has_positive_circuit(g.without_vertices(I), caps);
}

namespace detail {

// Exact minimum-cost hitting set over vertex-set supports by branch and
// bound: branch on an unhit support, prune with a bound from pairwise
// disjoint unhit supports. Cost is a sum or a product of per-vertex
// weights (all >= 1); ties resolve toward smaller cardinality, then the
// lexicographically smallest sorted vertex list.
class HittingSetSolver {
 public:
  HittingSetSolver(int n, std::vector<std::uint32_t> supports,
                   const std::vector<std::uint64_t>& weights, bool multiply)
      : n_(n), weights_(weights), multiply_(multiply) {
    if (static_cast<int>(weights.size()) != n)
      fail(errc::bad_argument, "weight count != vertex count");
    for (std::uint64_t w : weights)
      if (w < 1) fail(errc::bad_argument, "weights must be positive");
    // supersets of another support are hit whenever the subset is
    std::sort(supports.begin(), supports.end(), [](auto a, auto b) {
      const int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
      return pa != pb ? pa < pb : a < b;
    });
    for (std::uint32_t s : supports) {
      bool redundant = false;
      for (std::uint32_t kept : supports_)
        if ((kept & s) == kept) {
          redundant = true;
          break;
        }
      if (!redundant) supports_.push_back(s);
    }
  }

  std::vector<int> solve() {
    recurse(0, 0, identity(), 0);
    std::vector<int> out;
    for (int v = 0; v < n_; ++v)
      if (best_mask_ >> v & 1) out.push_back(v);
    return out;
  }

  std::uint64_t best_cost() const { return best_cost_; }

 private:
  std::uint64_t identity() const { return multiply_ ? 1 : 0; }
  std::uint64_t combine(std::uint64_t c, std::uint64_t w) const {
    return multiply_ ? c * w : c + w;
  }

  // True when (a_cost, a_size, lex(a_mask)) < (b_cost, b_size, lex(b_mask)).
  static bool lex_mask_less(std::uint32_t a, std::uint32_t b) {
    const std::uint32_t diff = a ^ b;
    if (!diff) return false;
    return (diff & (~diff + 1)) & a;  // owner of the lowest differing bit
  }
  bool better(std::uint64_t cost, int size, std::uint32_t mask) const {
    if (!has_best_) return true;
    if (cost != best_cost_) return cost < best_cost_;
    if (size != best_size_) return size < best_size_;
    return lex_mask_less(mask, best_mask_);
  }

  void recurse(std::uint32_t chosen, std::uint32_t forbidden,
               std::uint64_t cost, int size) {
    // lower bound over unhit supports; also locates the branch support
    std::uint32_t branch = 0;
    std::uint32_t acc = 0;
    std::uint64_t lb_cost = cost;
    int lb_size = size;
    for (std::uint32_t s : supports_) {
      if (s & chosen) continue;
      const std::uint32_t avail = s & ~forbidden;
      if (!avail) return;  // infeasible under current exclusions
      if (!branch) branch = avail;
      if (avail & acc) continue;
      acc |= avail;
      std::uint64_t wmin = UINT64_MAX;
      for (int v = 0; v < n_; ++v)
        if (avail >> v & 1) wmin = std::min(wmin, weights_[v]);
      lb_cost = combine(lb_cost, wmin);
      lb_size += 1;
    }
    if (!branch) {
      if (better(cost, size, chosen)) {
        has_best_ = true;
        best_cost_ = cost;
        best_size_ = size;
        best_mask_ = chosen;
      }
      return;
    }
    if (has_best_) {
      if (lb_cost > best_cost_) return;
      if (lb_cost == best_cost_ && lb_size > best_size_) return;
    }
    std::uint32_t below = 0;
    for (int v = 0; v < n_; ++v) {
      if (!(branch >> v & 1)) continue;
      recurse(chosen | (std::uint32_t{1} << v), forbidden | below,
              combine(cost, weights_[v]), size + 1);
      below |= std::uint32_t{1} << v;
    }
  }

  int n_;
  std::vector<std::uint32_t> supports_;
  const std::vector<std::uint64_t>& weights_;
  bool multiply_;
  bool has_best_ = false;
  std::uint64_t best_cost_ = 0;
  int best_size_ = 0;
  std::uint32_t best_mask_ = 0;
};

inline std::vector<int> min_hitting_set(int n,
                                        std::vector<std::uint32_t> supports,
                                        const std::vector<std::uint64_t>& weights,
                                        bool multiply) {
  return HittingSetSolver(n, std::move(supports), weights, multiply).solve();
}

}  // namespace detail

// Minimum-weight positive feedback vertex set; unit weights give the
// minimum-cardinality PFVS. Exact.
inline std::vector<int> minimum_pfvs(const SignedDigraph& g,
                                     std::vector<std::uint64_t> weights = {},
                                     const CircuitCaps& caps = {}) {
  if (weights.empty())
    weights.assign(static_cast<std::size_t>(g.vertex_count()), 1);
  return detail::min_hitting_set(g.vertex_count(),
                                 positive_circuit_supports(g, caps), weights,
                                 /*multiply=*/false);
}

// One positive circuit observed in some local interaction graph: where it
// was seen and its edge sequence.
struct CircuitWitness {
  State x;
  Direction v;
  std::vector<SignedEdge> circuit;
};

// Deduplicated vertex supports of positive circuits across all local
// graphs, each with one witness.
struct CircuitFamily {
  int vertex_count = 0;
  struct Entry {
    std::vector<int> support;  // sorted ascending
    CircuitWitness witness;
  };
  std::vector<Entry> entries;  // sorted by support, lexicographically

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }

  // Every support meets I.
  bool hits_all(const std::vector<int>& I) const {
    std::uint32_t im = 0;
    for (int v : I) im |= std::uint32_t{1} << v;
    for (const Entry& e : entries) {
      std::uint32_t sm = 0;
      for (int v : e.support) sm |= std::uint32_t{1} << v;
      if (!(sm & im)) return false;
    }
    return true;
  }
};

// Exact minimum-weight hitting set of the family's supports. Hitting every
// support is equivalent to being a PFVS of every local graph.
inline std::vector<int> minimum_pfvs_family(
    const CircuitFamily& fam, std::vector<std::uint64_t> weights = {}) {
  if (weights.empty())
    weights.assign(static_cast<std::size_t>(fam.vertex_count), 1);
  std::vector<std::uint32_t> supports;
  supports.reserve(fam.entries.size());
  for (const auto& e : fam.entries) {
    std::uint32_t m = 0;
    for (int v : e.support) m |= std::uint32_t{1} << v;
    supports.push_back(m);
  }
  return detail::min_hitting_set(fam.vertex_count, std::move(supports),
                                 weights, /*multiply=*/false);
}

}  // namespace dds
