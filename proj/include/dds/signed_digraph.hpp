#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include "dds/common.hpp"

namespace dds {

// A signed interaction edge (j, s, i): from vertex j to vertex i with sign
// s in {-1,+1}. Vertices are 0-based; printed forms are 1-based.
struct SignedEdge {
  int from;
  int to;
  int sign;

  bool operator==(const SignedEdge& o) const {
    return from == o.from && to == o.to && sign == o.sign;
  }
  // Canonical storage order: by target, then source, then sign.
  bool operator<(const SignedEdge& o) const {
    if (to != o.to) return to < o.to;
    if (from != o.from) return from < o.from;
    return sign < o.sign;
  }
};

inline std::string format_edge(const SignedEdge& e) {
  return "(" + std::to_string(e.from + 1) + "," +
         (e.sign > 0 ? std::string("+1") : std::string("-1")) + "," +
         std::to_string(e.to + 1) + ")";
}

// Interaction graph on vertices {0..n-1}. Parallel edges of opposite sign
// are allowed; duplicate triples are not.
class SignedDigraph {
 public:
  explicit SignedDigraph(int n = 0) : n_(n) {
    if (n < 0) fail(errc::bad_argument, "negative vertex count");
  }

  static SignedDigraph from_edges(int n, std::vector<SignedEdge> edges) {
    SignedDigraph g(n);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (const SignedEdge& e : edges) {
      if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n ||
          (e.sign != -1 && e.sign != 1))
        fail(errc::bad_argument, "bad edge " + format_edge(e));
    }
    g.edges_ = std::move(edges);
    return g;
  }

  int vertex_count() const { return n_; }
  const std::vector<SignedEdge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  void add_edge(int from, int to, int sign) {
    if (from < 0 || from >= n_ || to < 0 || to >= n_)
      fail(errc::bad_argument, "edge endpoint out of range");
    if (sign != -1 && sign != 1) fail(errc::bad_argument, "edge sign");
    const SignedEdge e{from, to, sign};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it != edges_.end() && *it == e) return;
    edges_.insert(it, e);
  }

  bool has_edge(int from, int to, int sign) const {
    const SignedEdge e{from, to, sign};
    return std::binary_search(edges_.begin(), edges_.end(), e);
  }

  // E(this) subseteq E(other)
  bool subgraph_of(const SignedDigraph& other) const {
    for (const SignedEdge& e : edges_)
      if (!other.has_edge(e.from, e.to, e.sign)) return false;
    return true;
  }

  void merge(const SignedDigraph& other) {
    std::vector<SignedEdge> merged;
    merged.reserve(edges_.size() + other.edges_.size());
    std::merge(edges_.begin(), edges_.end(), other.edges_.begin(),
               other.edges_.end(), std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    edges_ = std::move(merged);
  }

  // True if some ordered pair (j,i) carries both a positive and a negative
  // edge.
  bool has_dual_sign_pair() const {
    for (std::size_t k = 1; k < edges_.size(); ++k)
      if (edges_[k].to == edges_[k - 1].to &&
          edges_[k].from == edges_[k - 1].from)
        return true;
    return false;
  }

  // Adjacency by source vertex: per vertex the (target, sign) pairs sorted
  // by (target, sign).
  std::vector<std::vector<std::pair<int, int>>> out_adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(n_);
    for (const SignedEdge& e : edges_) adj[e.from].emplace_back(e.to, e.sign);
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
  }

  // Subgraph with all edges touching a removed vertex dropped; vertex ids
  // are preserved.
  SignedDigraph without_vertices(const std::vector<int>& removed) const {
    std::vector<char> gone(n_, 0);
    for (int v : removed) {
      if (v < 0 || v >= n_) fail(errc::bad_argument, "vertex out of range");
      gone[v] = 1;
    }
    SignedDigraph g(n_);
    for (const SignedEdge& e : edges_)
      if (!gone[e.from] && !gone[e.to]) g.edges_.push_back(e);
    return g;
  }

  bool operator==(const SignedDigraph& o) const {
    return n_ == o.n_ && edges_ == o.edges_;
  }

 private:
  int n_;
  std::vector<SignedEdge> edges_;  // sorted by (to, from, sign)
};

// DOT export: positive edges solid, labeled "+"; negative edges dashed,
// labeled "-". Vertices and edges in deterministic order.
inline void write_dot(std::ostream& os, const SignedDigraph& g,
                      const std::string& name = "interaction") {
  os << "digraph " << name << " {\n";
  for (int v = 0; v < g.vertex_count(); ++v) os << "  " << (v + 1) << ";\n";
  for (const SignedEdge& e : g.edges()) {
    os << "  " << (e.from + 1) << " -> " << (e.to + 1);
    if (e.sign > 0)
      os << " [label=\"+\"];\n";
    else
      os << " [label=\"-\", style=dashed];\n";
  }
  os << "}\n";
}

}  // namespace dds
