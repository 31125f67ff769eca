#include <catch2/catch_amalgamated.hpp>

#include "dds/dds.hpp"
#include "fixtures.hpp"

using namespace dds;

namespace {

IntervalDomain random_domain(SplitMix64& rng, int max_n, int max_size,
                             std::uint64_t max_card) {
  for (;;) {
    const int n = 1 + static_cast<int>(rng.bounded(max_n));
    std::vector<int> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
      lo[i] = static_cast<int>(rng.bounded(5)) - 2;
      hi[i] = lo[i] + 1 + static_cast<int>(rng.bounded(max_size - 1));
    }
    IntervalDomain d(lo, hi);
    if (d.cardinality() <= max_card) return d;
  }
}

SignedDigraph graph_of(std::initializer_list<SignedEdge> edges, int n) {
  return SignedDigraph::from_edges(n, edges);
}

}  // namespace

TEST_CASE("Jacobian entries from the definition") {
  // negation: f_11 = (f(1) - f(0)) / 1 = -1
  CHECK(jacobian(fixtures::f_neg(), {0}, {1}).at(0, 0) == -1);
  CHECK(jacobian(fixtures::f_neg(), {1}, {-1}).at(0, 0) == -1);

  const Network id2 = fixtures::f_id2();
  for (const auto& [x, v] : enumerate_xprime(id2.domain())) {
    const JacobianMatrix m = jacobian(id2, x, v);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(m.at(i, j) == (i == j ? 1 : 0));
  }

  const JacobianMatrix m = jacobian(fixtures::f_copy(), {0, 0}, {1, 1});
  CHECK(m.at(0, 1) == 1);
  CHECK(m.at(1, 0) == 1);
  CHECK(m.at(0, 0) == 0);
  CHECK(m.at(1, 1) == 0);

  try {
    jacobian(fixtures::f_neg(), {1}, {1});  // x + v leaves X
    FAIL("expected not_in_xprime");
  } catch (const error& e) {
    CHECK(e.code() == errc::not_in_xprime);
  }
}

TEST_CASE("local graphs of the fixtures") {
  CHECK(local_graph(fixtures::f_neg(), {0}, {1}) ==
        graph_of({{0, 0, -1}}, 1));
  CHECK(local_graph_unthresholded(fixtures::f_neg(), {0}, {1}) ==
        graph_of({{0, 0, -1}}, 1));

  const Network id2 = fixtures::f_id2();
  for (const auto& [x, v] : enumerate_xprime(id2.domain()))
    CHECK(local_graph(id2, x, v) ==
          graph_of({{0, 0, 1}, {1, 1, 1}}, 2));

  // f = [1,2,2]: images 1 and 2 both above the threshold 1/2, so the
  // thresholded graph at (0,+1) is empty while the unthresholded one keeps
  // the self-activation
  const Network thr = fixtures::f_thr();
  CHECK(local_graph(thr, {0}, {1}).edge_count() == 0);
  CHECK(local_graph_unthresholded(thr, {0}, {1}) == graph_of({{0, 0, 1}}, 1));
}

TEST_CASE("thresholded graph is a subgraph, equal in the Boolean case") {
  SplitMix64 rng(8080);
  for (int trial = 0; trial < 30; ++trial) {
    const IntervalDomain d = random_domain(rng, 3, 4, 256);
    const Network net = fixtures::random_net(rng.next(), d);
    for (const auto& [x, v] : enumerate_xprime(d)) {
      const SignedDigraph thr = local_graph(net, x, v);
      const SignedDigraph unthr = local_graph_unthresholded(net, x, v);
      CHECK(thr.subgraph_of(unthr));
      if (d.is_boolean()) CHECK(thr == unthr);
    }
  }
}

TEST_CASE("global graphs of the fixtures") {
  CHECK(global_graph(fixtures::f_copy(), true) ==
        graph_of({{1, 0, 1}, {0, 1, 1}}, 2));
  CHECK(global_graph(fixtures::f_thr(), true).edge_count() == 0);
  CHECK(global_graph(fixtures::f_thr(), false) == graph_of({{0, 0, 1}}, 1));
  CHECK(global_graph(fixtures::f_id2(), true) ==
        graph_of({{0, 0, 1}, {1, 1, 1}}, 2));
}

TEST_CASE("every local graph is a subgraph of the global graph") {
  SplitMix64 rng(9090);
  for (int trial = 0; trial < 15; ++trial) {
    const IntervalDomain d = random_domain(rng, 3, 4, 256);
    const Network net = fixtures::random_net(rng.next(), d);
    const SignedDigraph global_thr = global_graph(net, true);
    const SignedDigraph global_unthr = global_graph(net, false);
    CHECK(global_thr.subgraph_of(global_unthr));
    for (const auto& [x, v] : enumerate_xprime(d)) {
      CHECK(local_graph(net, x, v).subgraph_of(global_thr));
      CHECK(local_graph_unthresholded(net, x, v).subgraph_of(global_unthr));
    }
  }
}

TEST_CASE("threshold sets of the fixtures") {
  // identity on {0,1,2}: positive self-loop at all four pairs
  CHECK(threshold_sets(fixtures::f_id3()).doubled ==
        std::vector<std::vector<int>>{{1, 3}});
  // only a negative loop: no thresholds
  CHECK(threshold_sets(fixtures::f_neg()).doubled ==
        std::vector<std::vector<int>>{{}});
  // positive 2-cycle at every admissible pair, all thresholds 1/2
  CHECK(threshold_sets(fixtures::f_copy()).doubled ==
        std::vector<std::vector<int>>{{1}, {1}});
  CHECK(threshold_sets(fixtures::f_thr()).doubled ==
        std::vector<std::vector<int>>{{}});
}

TEST_CASE("threshold values are realizable half-integers") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 15; ++trial) {
    const IntervalDomain d = random_domain(rng, 3, 5, 512);
    const Network net = fixtures::random_net(rng.next(), d);
    const ThresholdSets t = threshold_sets(net);
    for (int i = 0; i < d.n(); ++i) {
      CHECK(t.doubled[i].size() <=
            static_cast<std::size_t>(d.size(i) - 1));
      for (int d2 : t.doubled[i]) {
        CHECK(d2 % 2 != 0);
        CHECK((d2 - 1) / 2 >= d.lower(i));
        CHECK((d2 + 1) / 2 <= d.upper(i));
      }
      CHECK(std::is_sorted(t.doubled[i].begin(), t.doubled[i].end()));
    }
  }
}

TEST_CASE("restriction laws: subgraph, threshold shrinkage, circuit killing") {
  SplitMix64 rng(6502);
  for (int trial = 0; trial < 12; ++trial) {
    const IntervalDomain d = random_domain(rng, 3, 4, 256);
    const Network net = fixtures::random_net(rng.next(), d);
    const ThresholdSets t = threshold_sets(net);
    for (int coord = 0; coord < d.n(); ++coord) {
      for (const auto& [lo, hi] :
           threshold_partition(d, coord, t.doubled[coord])) {
        const Network tilde = restrict_component(net, {coord, lo, hi});
        for (const auto& [x, v] : enumerate_xprime(d))
          CHECK(local_graph(tilde, x, v).subgraph_of(local_graph(net, x, v)));
        const ThresholdSets tt = threshold_sets(tilde);
        for (int j = 0; j < d.n(); ++j)
          CHECK(std::includes(t.doubled[j].begin(), t.doubled[j].end(),
                              tt.doubled[j].begin(), tt.doubled[j].end()));
        CHECK(tt.doubled[coord].empty());
      }
    }
  }
}

TEST_CASE("the directional derivative reads the same from either end") {
  SplitMix64 rng(1234);
  for (int trial = 0; trial < 15; ++trial) {
    const IntervalDomain d = random_domain(rng, 3, 4, 256);
    const Network net = fixtures::random_net(rng.next(), d);
    for (const auto& [x, v] : enumerate_xprime(d)) {
      const JacobianMatrix m = jacobian(net, x, v);
      for (int j = 0; j < d.n(); ++j) {
        State x2(x);
        x2[j] += v[j];
        Direction v2(v);
        v2[j] = -v[j];
        REQUIRE(d.in_xprime(x2, v2));
        const JacobianMatrix m2 = jacobian(net, x2, v2);
        for (int i = 0; i < d.n(); ++i) CHECK(m.at(i, j) == m2.at(i, j));
      }
    }
  }
}
