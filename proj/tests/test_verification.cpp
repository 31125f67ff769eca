#include <catch2/catch_amalgamated.hpp>

#include "dds/dds.hpp"
#include "fixtures.hpp"

using namespace dds;

TEST_CASE("identical generator specs yield identical networks") {
  const IntervalDomain cube = IntervalDomain::boolean_cube(3);
  const Network a = generate({1, cube, GenMode::uniform_table});
  const Network b = generate({1, cube, GenMode::uniform_table});
  CHECK(a == b);
  const Network c = generate({2, cube, GenMode::uniform_table});
  CHECK(a != c);

  const Network r1 = generate({17, cube, GenMode::random_rules});
  const Network r2 = generate({17, cube, GenMode::random_rules});
  CHECK(r1 == r2);
}

TEST_CASE("constrained generation modes satisfy their postconditions") {
  SECTION("no positive circuit anywhere") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const Network net = generate(
          {seed, IntervalDomain::boolean_cube(2), GenMode::no_positive_circuit});
      CHECK(functional_positive_circuits(net).empty());
    }
  }
  SECTION("single sign per ordered pair in the global graph") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const Network net = generate(
          {seed, IntervalDomain::boolean_cube(2), GenMode::no_dual_sign});
      CHECK_FALSE(global_graph(net, true).has_dual_sign_pair());
    }
  }
  SECTION("exhausted retries surface as an error") {
    GeneratorSpec spec{5, IntervalDomain::boolean_cube(2),
                       GenMode::no_positive_circuit};
    spec.max_retries = 0;
    try {
      generate(spec);
      FAIL("expected retries_exhausted");
    } catch (const error& e) {
      CHECK(e.code() == errc::retries_exhausted);
    }
  }
}

TEST_CASE("derived seeds regenerate batch items standalone") {
  const IntervalDomain d({0, 0}, {2, 1});
  const std::uint64_t base = 99;
  for (std::uint64_t k = 0; k < 5; ++k) {
    const std::uint64_t item_seed = derive_seed(base, k);
    const Network direct = generate({item_seed, d, GenMode::uniform_table});
    const Network again = generate({item_seed, d, GenMode::uniform_table});
    CHECK(direct == again);
  }
}

TEST_CASE("restriction suite on the copy map") {
  const auto verdicts = check_restriction_suite(fixtures::f_copy(), 0);
  // T_1 = {1/2}: partition {0},{1}; five lemmas per block plus the
  // partition check
  CHECK(verdicts.size() == 1 + 2 * 5);
  for (const LemmaVerdict& v : verdicts) {
    INFO(format_verdict_line(v));
    CHECK(v.pass);
  }
  // for Y = {0} the clamped map has the single attractor {(0,0)}, inside
  // the corresponding attractor of the original
  const Network tilde = restrict_component(fixtures::f_copy(), {0, 0, 0});
  CHECK(attractors(build_stg(tilde)) == std::vector<StateSet>{{0}});
}

TEST_CASE("restriction suite on the negation map is the identity case") {
  const auto verdicts = check_restriction_suite(fixtures::f_neg(), 0);
  CHECK(verdicts.size() == 1 + 1 * 5);  // T_1 empty: one block, F~ = F
  for (const LemmaVerdict& v : verdicts) CHECK(v.pass);
  CHECK(restrict_component(fixtures::f_neg(), {0, 0, 1}) == fixtures::f_neg());
}

TEST_CASE("restriction suite on the three-level identity") {
  const auto verdicts = check_restriction_suite(fixtures::f_id3(), 0);
  CHECK(verdicts.size() == 1 + 3 * 5);  // partition {0},{1},{2}
  for (const LemmaVerdict& v : verdicts) {
    INFO(format_verdict_line(v));
    CHECK(v.pass);
  }
}

TEST_CASE("restriction suite passes on random networks") {
  SplitMix64 rng(777777);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> lo{0, -1}, hi{2, 1 + static_cast<int>(rng.bounded(2))};
    const Network net =
        fixtures::random_net(rng.next(), IntervalDomain(lo, hi));
    for (int coord = 0; coord < net.domain().n(); ++coord)
      for (const LemmaVerdict& v : check_restriction_suite(net, coord)) {
        INFO(format_verdict_line(v));
        CHECK(v.pass);
      }
  }
}

TEST_CASE("theorem suite passes and is reproducible") {
  std::vector<GeneratorSpec> batch;
  const IntervalDomain shapes[] = {IntervalDomain::boolean_cube(3),
                                   IntervalDomain({0, 0}, {3, 2}),
                                   IntervalDomain::uniform(1, 6)};
  for (std::uint64_t k = 0; k < 12; ++k)
    batch.push_back({derive_seed(31337, k), shapes[k % 3],
                     k % 4 == 3 ? GenMode::random_rules
                                : GenMode::uniform_table});
  const auto first = check_theorem_suite(batch);
  const auto second = check_theorem_suite(batch);
  REQUIRE(!first.empty());
  REQUIRE(first.size() == second.size());
  for (std::size_t k = 0; k < first.size(); ++k) {
    CHECK(first[k].pass);
    CHECK(format_verdict_line(first[k]) == format_verdict_line(second[k]));
  }
  for (std::size_t k = 1; k < first.size(); ++k)
    CHECK(first[k - 1].seed <= first[k].seed);
}

TEST_CASE("theorem suite emits the mode-specific verdicts") {
  std::vector<GeneratorSpec> batch;
  batch.push_back(
      {derive_seed(5, 0), IntervalDomain::boolean_cube(2),
       GenMode::no_positive_circuit});
  batch.push_back(
      {derive_seed(5, 1), IntervalDomain::boolean_cube(2), GenMode::no_dual_sign});
  const auto verdicts = check_theorem_suite(batch);
  bool saw_thm5 = false, saw_single_sign = false;
  for (const LemmaVerdict& v : verdicts) {
    saw_thm5 |= v.lemma == "thm5";
    saw_single_sign |= v.lemma == "single-sign";
    CHECK(v.pass);
  }
  CHECK(saw_thm5);
  CHECK(saw_single_sign);
}

TEST_CASE("shrinking reduces a failing shape greedily") {
  // a synthetic failure that persists under any shrink
  GeneratorSpec spec{42, IntervalDomain({0, 0, 0}, {3, 2, 1}),
                     GenMode::uniform_table};
  const GeneratorSpec minimal =
      shrink_spec(spec, [](const Network&) { return true; });
  CHECK(minimal.domain.n() == 1);
  CHECK(minimal.domain.cardinality() == 2);

  // a failure tied to the dynamics: at least two attractors
  GeneratorSpec spec2{7, IntervalDomain({0, 0}, {3, 3}),
                      GenMode::uniform_table};
  const auto multi = [](const Network& net) {
    return attractors(build_stg(net)).size() >= 2;
  };
  if (multi(generate(spec2))) {
    const GeneratorSpec small = shrink_spec(spec2, multi);
    CHECK(small.domain.cardinality() <= spec2.domain.cardinality());
    CHECK(multi(generate(small)));
  }
}

TEST_CASE("verdict lines carry the reproducer fields") {
  LemmaVerdict v;
  v.lemma = "main";
  v.seed = 12;
  v.shape = "2x2";
  v.mode = "uniform";
  CHECK(format_verdict_line(v) ==
        "lemma=main seed=12 shape=2x2 mode=uniform status=PASS");
  v.pass = false;
  v.detail = "3 attractors > bound 2";
  CHECK(format_verdict_line(v) ==
        "lemma=main seed=12 shape=2x2 mode=uniform status=FAIL "
        "detail=\"3 attractors > bound 2\"");
}
