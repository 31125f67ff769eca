#pragma once

#include "dds/dds.hpp"

namespace fixtures {

// 1 - x on {0,1}: a single cyclic attractor, no positive circuit
inline dds::Network f_neg() {
  return dds::Network::tabulate(dds::IntervalDomain::boolean_cube(1),
                                [](const dds::State& x) {
                                  return dds::State{1 - x[0]};
                                });
}

// identity on {0,1}^2
inline dds::Network f_id2() {
  return dds::Network::tabulate(dds::IntervalDomain::boolean_cube(2),
                                [](const dds::State& x) { return x; });
}

// identity on {0,1,2}
inline dds::Network f_id3() {
  return dds::Network::tabulate(dds::IntervalDomain::uniform(1, 3),
                                [](const dds::State& x) { return x; });
}

// coordinate swap (x2, x1) on {0,1}^2
inline dds::Network f_copy() {
  return dds::Network::tabulate(dds::IntervalDomain::boolean_cube(2),
                                [](const dds::State& x) {
                                  return dds::State{x[1], x[0]};
                                });
}

// f = [1,2,2] on {0,1,2}: unthresholded self-activation that the
// threshold condition removes entirely
inline dds::Network f_thr() {
  return dds::Network::tabulate(dds::IntervalDomain::uniform(1, 3),
                                [](const dds::State& x) {
                                  return dds::State{std::min(x[0] + 1, 2)};
                                });
}

inline dds::Network random_net(std::uint64_t seed, dds::IntervalDomain domain,
                               dds::GenMode mode = dds::GenMode::uniform_table) {
  return dds::generate({seed, std::move(domain), mode});
}

}  // namespace fixtures
