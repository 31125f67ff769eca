#include <catch2/catch_amalgamated.hpp>

#include "dds/dds.hpp"
#include "fixtures.hpp"

using namespace dds;

TEST_CASE("smallest rule file parses to the negation network") {
  const Network net = parse_network("domain x1 0..1\nrule x1 = 1 - x1");
  CHECK(net == fixtures::f_neg());
  CHECK(net.images() == std::vector<std::uint32_t>{1, 0});
}

TEST_CASE("rule form and table form elaborate identically") {
  const std::string rules =
      "domain x1 0..1\ndomain x2 0..1\nrule x1 = x2\nrule x2 = x1\n";
  const std::string table =
      "domain x1 0..1\ndomain x2 0..1\n"
      "0 0 -> 0 0\n0 1 -> 1 0\n1 0 -> 0 1\n1 1 -> 1 1\n";
  const Network from_rules = parse_network(rules);
  CHECK(from_rules == fixtures::f_copy());
  CHECK(parse_network(table) == from_rules);
}

TEST_CASE("clamp mode on out-of-range rules") {
  const std::string text = "domain x1 0..1\nrule x1 = x1 + 1\n";
  const Network clamped = parse_network(text, true);
  CHECK(clamped.images() == std::vector<std::uint32_t>{1, 1});
  CHECK(clamped.clamped_elaboration());
  try {
    parse_network(text, false);
    FAIL("expected range_violation");
  } catch (const error& e) {
    CHECK(e.code() == errc::range_violation);
    CHECK(std::string(e.what()).find("(1)") != std::string::npos);
  }
}

TEST_CASE("expression evaluation basics") {
  const auto eval_rule = [](const std::string& body, State x, int n = 2) {
    std::string text;
    for (int i = 1; i <= n; ++i)
      text += "domain x" + std::to_string(i) + " -10..10\n";
    text += "rule x1 = " + body + "\n";
    for (int i = 2; i <= n; ++i)
      text += "rule x" + std::to_string(i) + " = x" + std::to_string(i) + "\n";
    const NetworkSpecText spec = parse(text);
    return eval_expr(*spec.rules[0], x);
  };
  CHECK(eval_rule("min(2, x1)", {0, 0}) == 0);
  CHECK(eval_rule("max(2, x1)", {5, 0}) == 5);
  CHECK(eval_rule("(x1 >= 1)", {2, 0}) == 1);
  CHECK(eval_rule("if(x1 == x2, 1, 0)", {1, 1}) == 1);
  CHECK(eval_rule("if(x1 == x2, 1, 0)", {1, 2}) == 0);
  CHECK(eval_rule("not 3", {0, 0}) == 0);
  CHECK(eval_rule("not 0 and 2", {0, 0}) == 1);
  // precedence: not > * > +- > comparisons > and > or
  CHECK(eval_rule("not 0 * 5", {0, 0}) == 5);
  CHECK(eval_rule("2 + 3 * 2", {0, 0}) == 8);
  CHECK(eval_rule("1 + 1 == 2", {0, 0}) == 1);
  CHECK(eval_rule("0 and 1 or 1", {0, 0}) == 1);
  CHECK(eval_rule("1 or 1 and 0", {0, 0}) == 1);
  CHECK(eval_rule("-x1 + 1", {3, 0}) == -2);
  CHECK(eval_rule("x1 - -1", {3, 0}) == 4);
}

TEST_CASE("round trip through the table renderer") {
  SplitMix64 rng(271828);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + static_cast<int>(rng.bounded(3));
    std::vector<int> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
      lo[i] = static_cast<int>(rng.bounded(5)) - 2;
      hi[i] = lo[i] + 1 + static_cast<int>(rng.bounded(3));
    }
    const Network net =
        fixtures::random_net(rng.next(), IntervalDomain(lo, hi));
    CHECK(parse_network(render_table(net)) == net);
  }
}

TEST_CASE("parse diagnostics carry a position") {
  const auto expect_error = [](const std::string& text,
                               const std::string& fragment) {
    try {
      elaborate(parse(text));
      FAIL("expected parse error for: " << text);
    } catch (const error& e) {
      CHECK(e.code() == errc::parse_error);
      CHECK(e.has_position());
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };
  expect_error("domain x1 0..1\nrule x1 = x2\n", "undeclared");
  expect_error("domain x1 0..1\nrule x1 = 1\nrule x1 = 0\n", "duplicate rule");
  expect_error("domain x1 0..1\ndomain x1 0..2\n", "duplicate domain");
  expect_error("domain x1 0..1\nrule x1 = (1\n", "expected ')'");
  expect_error("domain x1 0..1\nrule x1 = min(1)\n", "expected ','");
  expect_error("domain x1 0..1\n0 -> 0\n0 -> 1\n", "duplicate table row");
  expect_error("domain x1 0..1\n0 -> 0\n", "misses state (1)");
  expect_error("domain x1 0..1\n0 0 -> 0 0\n", "must have 1 coordinates");
  expect_error("domain x1 0..1\nrule x1 = 1 - x1\n0 -> 0\n", "cannot mix");
  expect_error("domain x1 0..1\n0 -> 0\n1 -> 1\ndomain x2 0..1\n",
               "must precede");
  expect_error("rule x1 = 1\n", "undeclared");
  expect_error("", "no domain");
  expect_error("domain x1 0..1\nrule x1 = 1 $\n", "unexpected character");
  expect_error("domain x1 0..1\nrule x1 = 99999999999999999999\n",
               "out of range");
}

TEST_CASE("deeply nested expressions are rejected, not crashed on") {
  std::string text = "domain x1 0..1\nrule x1 = ";
  for (int i = 0; i < 500; ++i) text += "(";
  text += "1";
  for (int i = 0; i < 500; ++i) text += ")";
  try {
    parse(text);
    FAIL("expected depth error");
  } catch (const error& e) {
    CHECK(std::string(e.what()).find("too deep") != std::string::npos);
  }
}

TEST_CASE("fuzzed inputs never escape the error type") {
  SplitMix64 rng(987654321);
  const std::string alphabet =
      "dom ainrulex123456789 0()<>=!+-*.,#\n\t_abz";
  for (int trial = 0; trial < 400; ++trial) {
    std::string text;
    const int len = static_cast<int>(rng.bounded(80));
    for (int k = 0; k < len; ++k) {
      if (rng.bounded(10) == 0)
        text += static_cast<char>(rng.bounded(256));
      else
        text += alphabet[rng.bounded(alphabet.size())];
    }
    try {
      elaborate(parse(text));
    } catch (const error&) {
      // any dds error is acceptable; crashes and foreign exceptions are not
    }
  }
}

TEST_CASE("comments, blank lines and declaration order") {
  const std::string text =
      "# negation network\n"
      "\n"
      "domain x2 0..1   # second coordinate\n"
      "domain x1 0..1\n"
      "rule x2 = x1\n"
      "rule x1 = x2\n";
  // declaration order defines coordinate order: x2 is coordinate 1
  const Network net = parse_network(text);
  CHECK(net.evaluate({0, 1}) == State{1, 0});
}

TEST_CASE("negative bounds and coordinates parse") {
  const Network net = parse_network(
      "domain a -2..0\nrule a = max(a - 1, -2)\n");
  CHECK(net.domain().lower(0) == -2);
  CHECK(net.evaluate({0}) == State{-1});
  CHECK(net.evaluate({-2}) == State{-2});

  const Network table = parse_network(
      "domain a -1..0\n-1 -> 0\n0 -> -1\n");
  CHECK(table.evaluate({-1}) == State{0});
}
