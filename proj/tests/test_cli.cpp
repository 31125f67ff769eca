#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dds/dds.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("dds_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out = scratch_dir() / ("out" + std::to_string(counter));
  const fs::path err = scratch_dir() / ("err" + std::to_string(counter));
  ++counter;
  const std::string cmd = std::string(DDS_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int rc = std::system(cmd.c_str());
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  return {WEXITSTATUS(rc), slurp(out), slurp(err)};
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("check and attractors on the copy network") {
  const fs::path f = write_file(
      "copy.dds", "domain x1 0..1\ndomain x2 0..1\nrule x1 = x2\nrule x2 = x1\n");
  CliResult r = run_cli("check " + f.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out == "ok: n=2 domain=0..1 x 0..1 states=4\n");

  r = run_cli("attractors " + f.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "attractors: 2\n"
        "attractor 1 (size 1): (0,0)\n"
        "attractor 2 (size 1): (1,1)\n");
}

TEST_CASE("bound output on the three-level identity") {
  const fs::path f = write_file("id3.dds", "domain x1 0..2\nrule x1 = x1\n");
  const CliResult r = run_cli("bound " + f.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("I: {1}") != std::string::npos);
  CHECK(r.out.find("T1_doubled: [1,3]") != std::string::npos);
  CHECK(r.out.find("bound_main: 3") != std::string::npos);

  const CliResult explicit_i = run_cli("bound " + f.string() + " --I 1");
  CHECK(explicit_i.exit_code == 0);
  CHECK(explicit_i.out.find("bound_main: 3") != std::string::npos);
  // an I that misses the self-loop is reported as not applicable
  const fs::path g = write_file(
      "id2.dds",
      "domain x1 0..1\ndomain x2 0..1\nrule x1 = x1\nrule x2 = x2\n");
  const CliResult bad_i = run_cli("bound " + g.string() + " --I 1");
  CHECK(bad_i.exit_code == 0);
  CHECK(bad_i.out.find("not applicable") != std::string::npos);
  const CliResult out_of_range = run_cli("bound " + g.string() + " --I 7");
  CHECK(out_of_range.exit_code == 1);
}

TEST_CASE("local graph from the command line") {
  const fs::path f = write_file(
      "copy3.dds",
      "domain x1 0..1\ndomain x2 0..1\nrule x1 = x2\nrule x2 = x1\n");
  const CliResult r = run_cli("graph " + f.string() + " --local 0,0 1,1");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "vertices: 2\nedges: 2\n(2,+1,1)\n(1,+1,2)\n");
  const CliResult bad = run_cli("graph " + f.string() + " --local 0,0 1,2");
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.rfind("error[not_in_xprime]:", 0) == 0);
}

TEST_CASE("input errors exit 1 with a greppable code") {
  const fs::path f = write_file("broken.dds", "domain x1 0..1\nrule x1 = y\n");
  const CliResult r = run_cli("check " + f.string());
  CHECK(r.exit_code == 1);
  CHECK(r.err.rfind("error[parse_error]:", 0) == 0);
  CHECK(r.err.find("line 2") != std::string::npos);

  const CliResult missing = run_cli("check /nonexistent/net.dds");
  CHECK(missing.exit_code == 1);
  CHECK(missing.err.rfind("error[io_error]:", 0) == 0);
}

TEST_CASE("range violations name the offending state, clamp mode fixes them") {
  const fs::path f =
      write_file("over.dds", "domain x1 0..1\nrule x1 = x1 + 1\n");
  const CliResult bad = run_cli("check " + f.string());
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.rfind("error[range_violation]:", 0) == 0);
  CHECK(bad.err.find("(1)") != std::string::npos);
  const CliResult ok = run_cli("check --clamp " + f.string());
  CHECK(ok.exit_code == 0);
}

TEST_CASE("circuit caps exit 2") {
  // parity rules make every local graph complete on 10 vertices; the
  // global graph then carries both signs everywhere and circuit
  // enumeration blows past the default cap
  std::string text;
  for (int i = 1; i <= 10; ++i)
    text += "domain x" + std::to_string(i) + " 0..1\n";
  for (int i = 1; i <= 10; ++i) {
    text += "rule x" + std::to_string(i) + " = x1";
    for (int j = 2; j <= 10; ++j) text += " != x" + std::to_string(j);
    text += "\n";
  }
  const fs::path f = write_file("parity.dds", text);
  const CliResult r = run_cli("circuits " + f.string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.rfind("error[cap_exceeded]:", 0) == 0);
}

TEST_CASE("graph export matches the library DOT writer") {
  const fs::path f = write_file(
      "copy2.dds",
      "domain x1 0..1\ndomain x2 0..1\nrule x1 = x2\nrule x2 = x1\n");
  const fs::path dot = scratch_dir() / "copy.dot";
  const CliResult r =
      run_cli("graph " + f.string() + " --global --dot " + dot.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "vertices: 2\nedges: 2\n(2,+1,1)\n(1,+1,2)\n");
  std::ifstream in(dot);
  std::ostringstream ss;
  ss << in.rdbuf();
  // edges follow the canonical (target, source, sign) storage order
  CHECK(ss.str() ==
        "digraph interaction {\n"
        "  1;\n"
        "  2;\n"
        "  2 -> 1 [label=\"+\"];\n"
        "  1 -> 2 [label=\"+\"];\n"
        "}\n");
}

TEST_CASE("random emits a file that parses back to the generated network") {
  const fs::path out = scratch_dir() / "random.dds";
  const CliResult r =
      run_cli("random --seed 11 --shape 3x2 -o " + out.string());
  CHECK(r.exit_code == 0);
  std::ifstream in(out);
  std::ostringstream ss;
  ss << in.rdbuf();
  const dds::Network reparsed = dds::parse_network(ss.str());
  CHECK(reparsed ==
        dds::generate({11, dds::parse_shape("3x2"),
                       dds::GenMode::uniform_table}));
}

TEST_CASE("analyze and verify are byte-identical across runs") {
  const fs::path f = write_file(
      "toggle.dds",
      "domain x1 0..2\ndomain x2 0..2\n"
      "rule x1 = if(x2 <= 1, 2, 0)\nrule x2 = if(x1 <= 1, 2, 0)\n");
  const fs::path j1 = scratch_dir() / "rep1.json";
  const fs::path j2 = scratch_dir() / "rep2.json";
  const CliResult a1 =
      run_cli("analyze " + f.string() + " --json " + j1.string());
  const CliResult a2 =
      run_cli("analyze " + f.string() + " --json " + j2.string());
  CHECK(a1.exit_code == 0);
  CHECK(a1.out == a2.out);
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  CHECK(slurp(j1) == slurp(j2));
  CHECK(!slurp(j1).empty());

  const CliResult v1 = run_cli("verify --seed 7 --count 6 --shape 2x3");
  const CliResult v2 = run_cli("verify --seed 7 --count 6 --shape 2x3");
  CHECK(v1.exit_code == 0);
  CHECK(v1.out == v2.out);
  CHECK(v1.out.find("status=FAIL") == std::string::npos);
}

TEST_CASE("verify exercises the constrained modes end to end") {
  const CliResult r = run_cli(
      "verify --seed 3 --count 4 --shape 2x2 --mode no-positive-circuit");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("lemma=thm5") != std::string::npos);
}
