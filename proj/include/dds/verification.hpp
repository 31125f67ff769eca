#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dds/bounds.hpp"
#include "dds/generator.hpp"

namespace dds {

// One executable lemma check. Failures carry the reproducer (seed, shape,
// mode) plus a counterexample payload in `detail`.
struct LemmaVerdict {
  std::string lemma;
  bool pass = true;
  std::uint64_t seed = 0;
  std::string shape;
  std::string mode;
  std::string detail;
  // shrunk reproducer, set on failure
  std::uint64_t repro_seed = 0;
  std::string repro_shape;
  std::string repro_mode;
};

inline std::string format_verdict_line(const LemmaVerdict& v) {
  std::string line = "lemma=" + v.lemma + " seed=" + std::to_string(v.seed);
  if (!v.shape.empty()) line += " shape=" + v.shape;
  if (!v.mode.empty()) line += " mode=" + v.mode;
  line += v.pass ? " status=PASS" : " status=FAIL";
  if (!v.detail.empty()) line += " detail=\"" + v.detail + "\"";
  return line;
}

namespace detail {

// Exact linear form of the clamp inequality: with m = min над f~_c and
// M = max of f~_c, the pairwise statement
//   f~_c(x) < f~_c(y)  =>  f_c(x) <= f~_c(x) < f~_c(y) <= f_c(y)
// holds iff every x with f~_c(x) < M has f_c(x) <= f~_c(x) and every x
// with f~_c(x) > m has f~_c(x) <= f_c(x).
inline std::optional<std::string> check_eq3(const Network& net,
                                            const Network& tilde) {
  const IntervalDomain& d = net.domain();
  for (int c = 0; c < d.n(); ++c) {
    int m = INT32_MAX, M = INT32_MIN;
    for (std::uint64_t r = 0; r < d.cardinality(); ++r) {
      const int fc = tilde.image_coord(r, c);
      m = std::min(m, fc);
      M = std::max(M, fc);
    }
    for (std::uint64_t r = 0; r < d.cardinality(); ++r) {
      const int ft = tilde.image_coord(r, c);
      const int f = net.image_coord(r, c);
      if (ft < M && !(f <= ft))
        return "component " + std::to_string(c + 1) + " at state " +
               format_state(d.unrank(r)) + ": f=" + std::to_string(f) +
               " > f~=" + std::to_string(ft);
      if (ft > m && !(ft <= f))
        return "component " + std::to_string(c + 1) + " at state " +
               format_state(d.unrank(r)) + ": f~=" + std::to_string(ft) +
               " > f=" + std::to_string(f);
    }
  }
  return std::nullopt;
}

inline std::vector<SignedEdge> local_edges_sorted(const Network& net,
                                                  std::uint64_t r,
                                                  const State& x,
                                                  const Direction& v) {
  std::vector<SignedEdge> edges;
  scan_local_edges(net, r, x, v, true,
                   [&](int j, int i, int s) { edges.push_back({j, i, s}); });
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace detail

// Proof-lemma suite over the clamped restrictions of one coordinate: for
// every block Y of the threshold partition of X_i, checks the clamp
// inequality (eq3), the local-subgraph law (eq4), threshold shrinkage
// (eq5), the killed positive circuits through i (eq6) and the attractor
// refinement (eq8); plus the partition block count (|T_i|+1).
inline std::vector<LemmaVerdict> check_restriction_suite(
    const Network& net, int coord, const CircuitCaps& caps = {}) {
  const IntervalDomain& d = net.domain();
  if (coord < 0 || coord >= d.n())
    fail(errc::bad_argument, "coordinate out of range");
  std::vector<LemmaVerdict> verdicts;
  const std::string shape = shape_text(d);
  auto push = [&](const std::string& lemma, bool pass,
                  const std::string& detail) {
    LemmaVerdict v;
    v.lemma = lemma;
    v.pass = pass;
    v.shape = shape;
    v.detail = detail;
    verdicts.push_back(std::move(v));
  };

  const FunctionalScan scan = scan_functional(net, caps);
  const std::vector<int>& T = scan.thresholds.doubled[coord];
  const auto blocks = threshold_partition(d, coord, T);

  {
    bool ok = blocks.size() == T.size() + 1;
    int expect = d.lower(coord);
    for (std::size_t k = 0; k < blocks.size() && ok; ++k) {
      ok = blocks[k].first == expect && blocks[k].second >= blocks[k].first;
      expect = blocks[k].second + 1;
      if (k + 1 == blocks.size()) ok = ok && blocks[k].second == d.upper(coord);
    }
    for (std::size_t k = 0; k + 1 < blocks.size() && ok; ++k)
      ok = T[k] == 2 * blocks[k].second + 1;
    push("partition", ok,
         "coord=" + std::to_string(coord + 1) + " blocks=" +
             std::to_string(blocks.size()) + " |T|=" + std::to_string(T.size()));
  }

  const TransitionGraph stg = build_stg(net);
  const std::vector<StateSet> attr = attractors(stg);

  for (const auto& [lo, hi] : blocks) {
    const std::string block_tag = "coord=" + std::to_string(coord + 1) +
                                  " Y=[" + std::to_string(lo) + ".." +
                                  std::to_string(hi) + "]";
    const Network tilde = restrict_component(net, {coord, lo, hi});

    {
      auto fail_detail = detail::check_eq3(net, tilde);
      push("eq3", !fail_detail.has_value(),
           fail_detail ? block_tag + " " + *fail_detail : block_tag);
    }

    {
      std::string counterexample;
      for_each_xprime(d, [&](std::uint64_t r, const State& x,
                             const Direction& v) {
        if (!counterexample.empty()) return;
        const auto sub = detail::local_edges_sorted(tilde, r, x, v);
        const auto super = detail::local_edges_sorted(net, r, x, v);
        if (!std::includes(super.begin(), super.end(), sub.begin(), sub.end()))
          counterexample = block_tag + " at x=" + format_state(x) +
                           " v=" + format_direction(v);
      });
      push("eq4", counterexample.empty(),
           counterexample.empty() ? block_tag : counterexample);
    }

    const FunctionalScan tilde_scan = scan_functional(tilde, caps);
    {
      bool ok = true;
      std::string which;
      for (int j = 0; j < d.n() && ok; ++j) {
        const auto& sub = tilde_scan.thresholds.doubled[j];
        const auto& super = scan.thresholds.doubled[j];
        ok = std::includes(super.begin(), super.end(), sub.begin(), sub.end());
        if (!ok) which = " T_" + std::to_string(j + 1) + " grew";
      }
      push("eq5", ok, block_tag + which);
    }
    push("eq6", tilde_scan.thresholds.doubled[coord].empty(),
         block_tag + (tilde_scan.thresholds.doubled[coord].empty()
                          ? ""
                          : " clamped coordinate still on a positive circuit"));

    {
      const std::vector<StateSet> tilde_attr = attractors(build_stg(tilde));
      bool ok = true;
      std::string why;
      std::vector<const StateSet*> chosen;
      for (const StateSet& A : attr) {
        bool in_ay = false;
        for (std::uint64_t r : A) {
          const int c = d.unrank_coord(r, coord);
          if (c >= lo && c <= hi) {
            in_ay = true;
            break;
          }
        }
        if (!in_ay) continue;
        const StateSet* found = nullptr;
        for (const StateSet& tA : tilde_attr)
          if (std::includes(A.begin(), A.end(), tA.begin(), tA.end())) {
            found = &tA;
            break;
          }
        if (!found) {
          ok = false;
          why = " no restricted attractor inside attractor at rank " +
                std::to_string(A.front());
          break;
        }
        chosen.push_back(found);
      }
      for (std::size_t a = 0; a < chosen.size() && ok; ++a)
        for (std::size_t b = a + 1; b < chosen.size() && ok; ++b) {
          std::vector<std::uint64_t> inter;
          std::set_intersection(chosen[a]->begin(), chosen[a]->end(),
                                chosen[b]->begin(), chosen[b]->end(),
                                std::back_inserter(inter));
          if (!inter.empty()) {
            ok = false;
            why = " chosen restricted attractors overlap";
          }
        }
      push("eq8", ok, block_tag + why);
    }
  }
  return verdicts;
}

namespace detail {

struct TheoremCheck {
  std::string id;
  // empty result = pass; otherwise the counterexample payload
  std::function<std::optional<std::string>(const Network&, const CircuitCaps&)>
      run;
  // whether the check applies to this generated instance
  std::function<bool(const GeneratorSpec&, const Network&)> applies;
};

inline std::vector<TheoremCheck> theorem_checks() {
  std::vector<TheoremCheck> checks;

  checks.push_back(
      {"main",
       [](const Network& net, const CircuitCaps& caps)
           -> std::optional<std::string> {
         const FunctionalScan scan = scan_functional(net, caps);
         const std::vector<int> I = minimum_pfvs_family(scan.family);
         const BoundReport b = theorem_bound(scan, I);
         const std::uint64_t count = attractors(build_stg(net)).size();
         if (!b.valid) return "family-optimal I rejected by its own family";
         if (count > b.value)
           return std::to_string(count) + " attractors > bound " +
                  std::to_string(b.value);
         return std::nullopt;
       },
       [](const GeneratorSpec&, const Network&) { return true; }});

  checks.push_back(
      {"corollary",
       [](const Network& net, const CircuitCaps& caps)
           -> std::optional<std::string> {
         const FunctionalScan scan = scan_functional(net, caps);
         const std::vector<int> I = minimum_pfvs_family(scan.family);
         const BoundReport main_b = theorem_bound(scan, I);
         const BoundReport box_b = corollary_bound(net.domain(), I);
         const std::uint64_t nattr = attractors(build_stg(net)).size();
         const std::uint64_t nfix = net.fixed_point_count();
         if (nfix > nattr)
           return "fixed points " + std::to_string(nfix) + " > attractors " +
                  std::to_string(nattr);
         if (main_b.value > box_b.value)
           return "main bound " + std::to_string(main_b.value) +
                  " > corollary bound " + std::to_string(box_b.value);
         if (nattr > box_b.value)
           return std::to_string(nattr) + " attractors > corollary bound " +
                  std::to_string(box_b.value);
         return std::nullopt;
       },
       [](const GeneratorSpec&, const Network&) { return true; }});

  checks.push_back(
      {"thm5",
       [](const Network& net, const CircuitCaps& caps)
           -> std::optional<std::string> {
         if (!functional_positive_circuits(net, caps).empty())
           return std::nullopt;
         const std::uint64_t count = attractors(build_stg(net)).size();
         if (count != 1)
           return "no functional positive circuit but " +
                  std::to_string(count) + " attractors";
         return std::nullopt;
       },
       [](const GeneratorSpec& spec, const Network&) {
         return spec.mode == GenMode::no_positive_circuit;
       }});

  checks.push_back(
      {"subgraph",
       [](const Network& net, const CircuitCaps&)
           -> std::optional<std::string> {
         std::optional<std::string> bad;
         for_each_xprime(net.domain(), [&](std::uint64_t r, const State& x,
                                           const Direction& v) {
           if (bad) return;
           std::vector<SignedEdge> thr, unthr;
           scan_local_edges(net, r, x, v, true, [&](int j, int i, int s) {
             thr.push_back({j, i, s});
           });
           scan_local_edges(net, r, x, v, false, [&](int j, int i, int s) {
             unthr.push_back({j, i, s});
           });
           std::sort(thr.begin(), thr.end());
           std::sort(unthr.begin(), unthr.end());
           if (!std::includes(unthr.begin(), unthr.end(), thr.begin(),
                              thr.end()))
             bad = "thresholded graph not a subgraph at x=" + format_state(x) +
                   " v=" + format_direction(v);
         });
         return bad;
       },
       [](const GeneratorSpec&, const Network&) { return true; }});

  checks.push_back(
      {"boolean-coincidence",
       [](const Network& net, const CircuitCaps&)
           -> std::optional<std::string> {
         std::optional<std::string> bad;
         for_each_xprime(net.domain(), [&](std::uint64_t r, const State& x,
                                           const Direction& v) {
           if (bad) return;
           std::vector<SignedEdge> thr, unthr;
           scan_local_edges(net, r, x, v, true, [&](int j, int i, int s) {
             thr.push_back({j, i, s});
           });
           scan_local_edges(net, r, x, v, false, [&](int j, int i, int s) {
             unthr.push_back({j, i, s});
           });
           std::sort(thr.begin(), thr.end());
           std::sort(unthr.begin(), unthr.end());
           if (thr != unthr)
             bad = "graphs differ at x=" + format_state(x) +
                   " v=" + format_direction(v);
         });
         return bad;
       },
       [](const GeneratorSpec&, const Network& net) {
         return net.domain().is_boolean();
       }});

  checks.push_back(
      {"oracle",
       [](const Network& net, const CircuitCaps&)
           -> std::optional<std::string> {
         const TransitionGraph g = build_stg(net);
         if (attractors(g) != attractors_oracle(g))
           return "terminal-SCC attractors differ from closure-minimal sets";
         return std::nullopt;
       },
       [](const GeneratorSpec&, const Network& net) {
         return net.domain().cardinality() <= 4096;
       }});

  checks.push_back(
      {"single-sign",
       [](const Network& net, const CircuitCaps& caps)
           -> std::optional<std::string> {
         const SignedDigraph g = global_graph(net, true);
         if (g.has_dual_sign_pair()) return std::nullopt;
         const std::vector<int> I = minimum_pfvs(g, {}, caps);
         const std::uint64_t bound = corollary_bound(net.domain(), I).value;
         const std::uint64_t nfix = net.fixed_point_count();
         if (nfix > bound)
           return std::to_string(nfix) + " fixed points > " +
                  std::to_string(bound) + " (|I|=" + std::to_string(I.size()) +
                  ")";
         return std::nullopt;
       },
       [](const GeneratorSpec& spec, const Network& net) {
         return spec.mode == GenMode::no_dual_sign && net.domain().is_boolean();
       }});

  return checks;
}

}  // namespace detail

// Greedy shape shrinking: drop a coordinate or trim an interval while the
// failure predicate keeps firing on the regenerated network. Returns the
// smallest spec found (possibly the input).
template <class Pred>
inline GeneratorSpec shrink_spec(GeneratorSpec spec, Pred&& still_fails,
                                 const CircuitCaps& caps = {}) {
  auto candidates = [](const IntervalDomain& d) {
    std::vector<IntervalDomain> out;
    if (d.n() > 1) {
      for (int drop = 0; drop < d.n(); ++drop) {
        std::vector<int> lo, hi;
        for (int i = 0; i < d.n(); ++i) {
          if (i == drop) continue;
          lo.push_back(d.lower(i));
          hi.push_back(d.upper(i));
        }
        out.emplace_back(lo, hi);
      }
    }
    for (int trim = 0; trim < d.n(); ++trim) {
      if (d.size(trim) <= 2) continue;
      std::vector<int> lo, hi;
      for (int i = 0; i < d.n(); ++i) {
        lo.push_back(d.lower(i));
        hi.push_back(d.upper(i) - (i == trim ? 1 : 0));
      }
      out.emplace_back(lo, hi);
    }
    return out;
  };
  for (bool improved = true; improved;) {
    improved = false;
    for (const IntervalDomain& cand : candidates(spec.domain)) {
      GeneratorSpec next = spec;
      next.domain = cand;
      try {
        if (still_fails(generate(next, caps))) {
          spec = next;
          improved = true;
          break;
        }
      } catch (const error&) {
        // candidate not generatable (e.g. retries exhausted); skip
      }
    }
  }
  return spec;
}

// Theorem suite over a batch of generator specs. Every verdict is
// reproducible from (seed, shape, mode); failures are shrunk to the
// smallest shape that still fails and carry the counterexample payload.
inline std::vector<LemmaVerdict> check_theorem_suite(
    const std::vector<GeneratorSpec>& batch, const CircuitCaps& caps = {}) {
  const auto checks = detail::theorem_checks();
  std::vector<LemmaVerdict> verdicts;
  for (const GeneratorSpec& spec : batch) {
    const Network net = generate(spec, caps);
    for (const auto& check : checks) {
      if (!check.applies(spec, net)) continue;
      LemmaVerdict v;
      v.lemma = check.id;
      v.seed = spec.seed;
      v.shape = shape_text(spec.domain);
      v.mode = gen_mode_name(spec.mode);
      std::optional<std::string> failure = check.run(net, caps);
      if (failure) {
        const GeneratorSpec small =
            shrink_spec(spec,
                        [&](const Network& candidate) {
                          return check.run(candidate, caps).has_value();
                        },
                        caps);
        v.pass = false;
        v.repro_seed = small.seed;
        v.repro_shape = shape_text(small.domain);
        v.repro_mode = gen_mode_name(small.mode);
        v.detail = *failure + "; shrunk reproducer: seed=" +
                   std::to_string(small.seed) + " shape=" + v.repro_shape +
                   " mode=" + v.repro_mode;
      }
      verdicts.push_back(std::move(v));
    }
  }
  std::stable_sort(verdicts.begin(), verdicts.end(),
                   [](const LemmaVerdict& a, const LemmaVerdict& b) {
                     if (a.seed != b.seed) return a.seed < b.seed;
                     return a.lemma < b.lemma;
                   });
  return verdicts;
}

}  // namespace dds
