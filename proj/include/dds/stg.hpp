#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <set>
#include <vector>

#include "dds/network.hpp"

namespace dds {

// A set of states identified by their ranks, kept sorted ascending; two
// attractors compare equal iff their sorted rank lists do.
using StateSet = std::vector<std::uint64_t>;

// The asynchronous state transition graph Gamma(F): an edge x -> y for
// every i with f_i(x) != x_i and y = x + sign(f_i(x) - x_i) e_i. Stored in
// CSR form; per-state successor lists are ordered by coordinate index.
class TransitionGraph {
 public:
  TransitionGraph(IntervalDomain domain, std::vector<std::uint64_t> offsets,
                  std::vector<std::uint32_t> targets)
      : domain_(std::move(domain)),
        offsets_(std::move(offsets)),
        targets_(std::move(targets)) {}

  const IntervalDomain& domain() const { return domain_; }
  std::uint64_t state_count() const { return domain_.cardinality(); }
  std::uint64_t edge_count() const { return targets_.size(); }

  std::size_t out_degree(std::uint64_t r) const {
    return offsets_[r + 1] - offsets_[r];
  }
  const std::uint32_t* successors_begin(std::uint64_t r) const {
    return targets_.data() + offsets_[r];
  }
  const std::uint32_t* successors_end(std::uint64_t r) const {
    return targets_.data() + offsets_[r + 1];
  }

 private:
  IntervalDomain domain_;
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint32_t> targets_;
};

inline TransitionGraph build_stg(const Network& net) {
  const IntervalDomain& d = net.domain();
  const std::uint64_t card = d.cardinality();
  const int n = d.n();
  std::vector<std::uint64_t> offsets(card + 1, 0);
  std::vector<std::uint32_t> targets;
  targets.reserve(card);
  for (std::uint64_t r = 0; r < card; ++r) {
    for (int i = 0; i < n; ++i) {
      const int c = d.unrank_coord(r, i);
      const int fc = net.image_coord(r, i);
      if (fc == c) continue;
      const std::int64_t step = fc > c ? static_cast<std::int64_t>(d.stride(i))
                                       : -static_cast<std::int64_t>(d.stride(i));
      targets.push_back(static_cast<std::uint32_t>(
          static_cast<std::int64_t>(r) + step));
    }
    offsets[r + 1] = targets.size();
  }
  return TransitionGraph(d, std::move(offsets), std::move(targets));
}

// True iff no edge leaves the set. The set must be non-empty.
inline bool is_trap_domain(const TransitionGraph& g, const StateSet& a) {
  if (a.empty())
    fail(errc::empty_state_set, "trap domains are non-empty by definition");
  StateSet sorted(a);
  std::sort(sorted.begin(), sorted.end());
  for (std::uint64_t r : sorted) {
    if (r >= g.state_count()) fail(errc::out_of_domain, std::to_string(r));
    for (const std::uint32_t* w = g.successors_begin(r);
         w != g.successors_end(r); ++w)
      if (!std::binary_search(sorted.begin(), sorted.end(),
                              static_cast<std::uint64_t>(*w)))
        return false;
  }
  return true;
}

// Attractors = inclusion-minimal trap domains = strongly connected
// components without outgoing edges. Tarjan runs with an explicit stack
// since the recursion depth can reach |X|. Result sorted by smallest
// member rank; members sorted ascending.
inline std::vector<StateSet> attractors(const TransitionGraph& g) {
  const std::uint64_t nstates = g.state_count();
  constexpr std::uint32_t unset = UINT32_MAX;
  std::vector<std::uint32_t> index(nstates, unset), low(nstates, 0),
      comp(nstates, unset);
  std::vector<char> on_stack(nstates, 0);
  std::vector<std::uint32_t> stack;
  std::uint32_t counter = 0, ncomps = 0;

  struct Frame {
    std::uint32_t v;
    std::uint32_t edge;
  };
  std::vector<Frame> frames;

  for (std::uint64_t root = 0; root < nstates; ++root) {
    if (index[root] != unset) continue;
    frames.push_back({static_cast<std::uint32_t>(root), 0});
    index[root] = low[root] = counter++;
    stack.push_back(static_cast<std::uint32_t>(root));
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const std::uint32_t v = f.v;
      if (f.edge < g.out_degree(v)) {
        const std::uint32_t w = g.successors_begin(v)[f.edge++];
        if (index[w] == unset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = ncomps;
        } while (w != v);
        ++ncomps;
      }
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
    }
  }

  std::vector<char> terminal(ncomps, 1);
  for (std::uint64_t r = 0; r < nstates; ++r)
    for (const std::uint32_t* w = g.successors_begin(r);
         w != g.successors_end(r); ++w)
      if (comp[r] != comp[*w]) terminal[comp[r]] = 0;

  std::vector<StateSet> result(ncomps);
  for (std::uint64_t r = 0; r < nstates; ++r)
    if (terminal[comp[r]]) result[comp[r]].push_back(r);
  result.erase(std::remove_if(result.begin(), result.end(),
                              [](const StateSet& s) { return s.empty(); }),
               result.end());
  for (StateSet& s : result) std::sort(s.begin(), s.end());
  std::sort(result.begin(), result.end(),
            [](const StateSet& a, const StateSet& b) {
              return a.front() < b.front();
            });
  return result;
}

// Independent oracle: each forward-reachable closure R(x) is a trap
// domain, and the attractors are exactly the inclusion-minimal sets among
// {R(x) : x in X}. Uses only reachability plus the fact that y in R(x)
// implies R(y) subseteq R(x), so R(x) is minimal iff every y in R(x) has
// |R(y)| = |R(x)|. Intended for testing; refuses |X| > 4096.
inline std::vector<StateSet> attractors_oracle(const TransitionGraph& g) {
  const std::uint64_t nstates = g.state_count();
  if (nstates > 4096)
    fail(errc::cap_exceeded,
         "oracle limited to 4096 states, got " + std::to_string(nstates));

  std::vector<std::uint32_t> closure_size(nstates, 0);
  std::vector<std::uint32_t> visited(nstates, UINT32_MAX);
  std::vector<std::uint32_t> queue;
  auto reach = [&](std::uint32_t from, auto&& visit) {
    queue.clear();
    queue.push_back(from);
    visited[from] = from;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint32_t u = queue[head];
      visit(u);
      for (const std::uint32_t* w = g.successors_begin(u);
           w != g.successors_end(u); ++w)
        if (visited[*w] != from) {
          visited[*w] = from;
          queue.push_back(*w);
        }
    }
  };

  for (std::uint64_t x = 0; x < nstates; ++x) {
    std::uint32_t count = 0;
    reach(static_cast<std::uint32_t>(x), [&](std::uint32_t) { ++count; });
    closure_size[x] = count;
  }

  std::set<StateSet> minimal;
  std::fill(visited.begin(), visited.end(), UINT32_MAX);
  for (std::uint64_t x = 0; x < nstates; ++x) {
    StateSet members;
    bool is_minimal = true;
    reach(static_cast<std::uint32_t>(x), [&](std::uint32_t y) {
      if (closure_size[y] != closure_size[x]) is_minimal = false;
      members.push_back(y);
    });
    if (!is_minimal) continue;
    std::sort(members.begin(), members.end());
    minimal.insert(std::move(members));
  }

  std::vector<StateSet> result(minimal.begin(), minimal.end());
  std::sort(result.begin(), result.end(),
            [](const StateSet& a, const StateSet& b) {
              return a.front() < b.front();
            });
  return result;
}

// DOT export: one node per state labeled with its coordinates, emitted in
// rank order; edges in rank-major, coordinate order.
inline void write_stg_dot(std::ostream& os, const TransitionGraph& g,
                          const std::string& name = "stg") {
  const IntervalDomain& d = g.domain();
  os << "digraph " << name << " {\n";
  State x;
  for (std::uint64_t r = 0; r < g.state_count(); ++r) {
    d.unrank_into(r, x);
    os << "  s" << r << " [label=\"";
    for (int i = 0; i < d.n(); ++i) {
      if (i) os << ",";
      os << x[i];
    }
    os << "\"];\n";
  }
  for (std::uint64_t r = 0; r < g.state_count(); ++r)
    for (const std::uint32_t* w = g.successors_begin(r);
         w != g.successors_end(r); ++w)
      os << "  s" << r << " -> s" << *w << ";\n";
  os << "}\n";
}

}  // namespace dds
