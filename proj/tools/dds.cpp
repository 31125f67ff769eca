#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dds/dds.hpp"

namespace {

// exit codes: 0 ok, 1 input error, 2 cap exceeded, 3 verification failure
constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_cap = 2;
constexpr int exit_verification = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) dds::fail(dds::errc::io_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// temp file + rename so partially written exports never appear
void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) dds::fail(dds::errc::io_error, "cannot write " + tmp);
    out << content;
    if (!out) dds::fail(dds::errc::io_error, "write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    dds::fail(dds::errc::io_error, "cannot rename " + tmp + " to " + path);
}

dds::Network load_network(const std::string& path, bool clamp) {
  return dds::parse_network(read_file(path), clamp);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      out.push_back(std::stoi(part));
    } catch (const std::exception&) {
      dds::fail(dds::errc::bad_argument, "bad integer list '" + text + "'");
    }
  }
  if (out.empty())
    dds::fail(dds::errc::bad_argument, "empty integer list '" + text + "'");
  return out;
}

// 1-based on the command line, 0-based inside
std::vector<int> parse_vertex_list(const std::string& text, int n) {
  std::vector<int> vs = parse_int_list(text);
  for (int& v : vs) {
    if (v < 1 || v > n)
      dds::fail(dds::errc::bad_argument,
                "vertex " + std::to_string(v) + " outside 1.." +
                    std::to_string(n));
    v -= 1;
  }
  return vs;
}

std::string digraph_text(const dds::SignedDigraph& g) {
  std::string out = "vertices: " + std::to_string(g.vertex_count()) + "\n" +
                    "edges: " + std::to_string(g.edge_count()) + "\n";
  for (const dds::SignedEdge& e : g.edges())
    out += dds::format_edge(e) + "\n";
  return out;
}

std::string dot_text(const dds::SignedDigraph& g) {
  std::ostringstream ss;
  dds::write_dot(ss, g);
  return ss.str();
}

void print_attractors(const dds::Network& net,
                      const std::vector<dds::StateSet>& attr) {
  std::cout << "attractors: " << attr.size() << "\n";
  const dds::IntervalDomain& d = net.domain();
  dds::State x;
  for (std::size_t k = 0; k < attr.size(); ++k) {
    std::cout << "attractor " << (k + 1) << " (size " << attr[k].size()
              << "):";
    for (std::uint64_t r : attr[k]) {
      d.unrank_into(r, x);
      std::cout << " " << dds::format_state(x);
    }
    std::cout << "\n";
  }
}

void print_bounds(const dds::Network& net, const dds::FunctionalScan& scan,
                  const std::vector<int>& I, const dds::CircuitCaps& caps) {
  const dds::BoundReport main_b = dds::theorem_bound(scan, I);
  const dds::BoundReport box_b = dds::corollary_bound(net.domain(), I);
  const dds::BoundReport mu_b =
      dds::mu(dds::global_graph(net, true), net.domain(), caps);
  std::cout << "I: " << dds::detail::join_1based(main_b.I) << "\n";
  for (int i = 0; i < net.domain().n(); ++i) {
    std::cout << "T" << (i + 1) << "_doubled: [";
    const auto& ts = scan.thresholds.doubled[i];
    for (std::size_t k = 0; k < ts.size(); ++k)
      std::cout << (k ? "," : "") << ts[k];
    std::cout << "]\n";
  }
  std::cout << "bound_main: " << main_b.value
            << (main_b.valid ? "" : " (not applicable: I is not a PFVS of "
                                    "every local graph)")
            << "\n";
  std::cout << "bound_corollary: " << box_b.value << "\n";
  std::cout << "bound_mu: " << mu_b.value
            << " (I=" << dds::detail::join_1based(mu_b.I) << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analyzer for finite discrete dynamical systems on products "
               "of integer intervals"};
  app.require_subcommand(1);

  std::string file, dot_path, json_path, out_path, shape_text, mode_text,
      i_list;
  std::vector<std::string> local_args;
  bool clamp = false, unthresholded = false, global = false, functional = false;
  bool pfvs_family = false, pfvs_global = false, pfvs_unthr = false;
  std::uint64_t seed = 0;
  int count = 1;

  auto add_file = [&](CLI::App* cmd) {
    cmd->add_option("file", file, "network definition (.dds)")->required();
    cmd->add_flag("--clamp", clamp,
                  "clamp out-of-range rule values into the domain");
  };

  CLI::App* c_check = app.add_subcommand("check", "parse and validate a file");
  add_file(c_check);

  CLI::App* c_attr =
      app.add_subcommand("attractors", "enumerate asynchronous attractors");
  add_file(c_attr);
  c_attr->add_option("--dot", dot_path, "write the state transition graph");

  CLI::App* c_graph =
      app.add_subcommand("graph", "print an interaction graph");
  add_file(c_graph);
  c_graph->add_flag("--global", global, "global interaction graph");
  c_graph->add_flag("--unthresholded", unthresholded,
                    "drop the threshold condition");
  c_graph->add_option("--local", local_args,
                      "local graph at state and direction, e.g. 0,1 1,-1")
      ->expected(2);
  c_graph->add_option("--dot", dot_path, "write DOT to this path");

  CLI::App* c_circ = app.add_subcommand(
      "circuits", "list signed elementary circuits of the global graph");
  add_file(c_circ);
  c_circ->add_flag("--functional", functional,
                   "functional positive circuit family with witnesses");

  CLI::App* c_pfvs =
      app.add_subcommand("pfvs", "minimum positive feedback vertex set");
  add_file(c_pfvs);
  c_pfvs->add_flag("--family", pfvs_family,
                   "PFVS of every local graph (default)");
  c_pfvs->add_flag("--global", pfvs_global, "PFVS of the global graph");
  c_pfvs->add_flag("--unthresholded", pfvs_unthr,
                   "PFVS of the unthresholded global graph");

  CLI::App* c_bound = app.add_subcommand("bound", "attractor-count bounds");
  add_file(c_bound);
  c_bound->add_option("--I", i_list,
                      "vertex set (1-based, comma separated); "
                      "family-optimal when absent");

  CLI::App* c_analyze = app.add_subcommand("analyze", "full analysis report");
  add_file(c_analyze);
  c_analyze->add_option("--json", json_path, "machine-readable report path");

  CLI::App* c_verify =
      app.add_subcommand("verify", "run the randomized theorem suite");
  c_verify->add_option("--seed", seed, "base seed")->required();
  c_verify->add_option("--count", count, "number of networks")->required();
  c_verify->add_option("--shape", shape_text, "domain shape, e.g. 2x2x2")
      ->required();
  c_verify->add_option("--mode", mode_text,
                       "uniform|rules|no-positive-circuit|no-dual-sign");

  CLI::App* c_random =
      app.add_subcommand("random", "emit a generated network in table form");
  c_random->add_option("--seed", seed, "seed")->required();
  c_random->add_option("--shape", shape_text, "domain shape")->required();
  c_random->add_option("-o,--out", out_path, "output file")->required();
  c_random->add_option("--mode", mode_text,
                       "uniform|rules|no-positive-circuit|no-dual-sign");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_input;
  }

  const dds::CircuitCaps caps;
  try {
    if (c_check->parsed()) {
      const dds::Network net = load_network(file, clamp);
      std::cout << "ok: n=" << net.domain().n()
                << " domain=" << net.domain().describe()
                << " states=" << net.domain().cardinality() << "\n";
      return exit_ok;
    }

    if (c_attr->parsed()) {
      const dds::Network net = load_network(file, clamp);
      const dds::TransitionGraph g = dds::build_stg(net);
      print_attractors(net, dds::attractors(g));
      if (!dot_path.empty()) {
        std::ostringstream ss;
        dds::write_stg_dot(ss, g);
        atomic_write(dot_path, ss.str());
      }
      return exit_ok;
    }

    if (c_graph->parsed()) {
      const dds::Network net = load_network(file, clamp);
      dds::SignedDigraph g(net.domain().n());
      if (!local_args.empty()) {
        dds::State x = parse_int_list(local_args[0]);
        dds::Direction v = parse_int_list(local_args[1]);
        g = unthresholded ? dds::local_graph_unthresholded(net, x, v)
                          : dds::local_graph(net, x, v);
      } else if (global) {
        g = dds::global_graph(net, !unthresholded);
      } else {
        dds::fail(dds::errc::bad_argument,
                  "choose --global or --local X V");
      }
      std::cout << digraph_text(g);
      if (!dot_path.empty()) atomic_write(dot_path, dot_text(g));
      return exit_ok;
    }

    if (c_circ->parsed()) {
      const dds::Network net = load_network(file, clamp);
      if (functional) {
        const dds::CircuitFamily fam =
            dds::functional_positive_circuits(net, caps);
        std::cout << "functional_positive_supports: " << fam.size() << "\n";
        for (const auto& entry : fam.entries) {
          std::cout << "support " << dds::detail::join_1based(entry.support)
                    << " witness x=" << dds::format_state(entry.witness.x)
                    << " v=" << dds::format_direction(entry.witness.v)
                    << " circuit";
          for (const dds::SignedEdge& e : entry.witness.circuit)
            std::cout << " " << dds::format_edge(e);
          std::cout << "\n";
        }
      } else {
        const dds::SignedDigraph g = dds::global_graph(net, true);
        const auto circuits = dds::elementary_circuits(g, caps);
        std::cout << "circuits: " << circuits.size() << "\n";
        for (const dds::SignedCircuit& c : circuits) {
          for (const dds::SignedEdge& e : c.edges)
            std::cout << dds::format_edge(e);
          std::cout << (dds::is_positive(c) ? " positive" : " negative")
                    << "\n";
        }
      }
      return exit_ok;
    }

    if (c_pfvs->parsed()) {
      const dds::Network net = load_network(file, clamp);
      std::vector<int> I;
      std::string which;
      if (pfvs_global) {
        which = "global";
        I = dds::minimum_pfvs(dds::global_graph(net, true), {}, caps);
      } else if (pfvs_unthr) {
        which = "unthresholded";
        I = dds::minimum_pfvs(dds::global_graph(net, false), {}, caps);
      } else {
        which = "family";
        I = dds::minimum_pfvs_family(dds::functional_positive_circuits(net, caps));
      }
      std::cout << "pfvs[" << which << "]: " << dds::detail::join_1based(I)
                << "\n";
      return exit_ok;
    }

    if (c_bound->parsed()) {
      const dds::Network net = load_network(file, clamp);
      const dds::FunctionalScan scan = dds::scan_functional(net, caps);
      std::vector<int> I = i_list.empty()
                               ? dds::minimum_pfvs_family(scan.family)
                               : parse_vertex_list(i_list, net.domain().n());
      print_bounds(net, scan, I, caps);
      return exit_ok;
    }

    if (c_analyze->parsed()) {
      const dds::Network net = load_network(file, clamp);
      const dds::AnalysisReport rep = dds::analyze(net, caps);
      std::cout << dds::report_text(rep, net.domain());
      if (!json_path.empty())
        atomic_write(json_path,
                     dds::report_to_json(rep, net.domain()).dump(2) + "\n");
      return exit_ok;
    }

    if (c_verify->parsed()) {
      const dds::IntervalDomain domain = dds::parse_shape(shape_text);
      dds::GenMode mode = dds::GenMode::uniform_table;
      if (mode_text == "rules") mode = dds::GenMode::random_rules;
      else if (mode_text == "no-positive-circuit")
        mode = dds::GenMode::no_positive_circuit;
      else if (mode_text == "no-dual-sign") mode = dds::GenMode::no_dual_sign;
      else if (!mode_text.empty() && mode_text != "uniform")
        dds::fail(dds::errc::bad_argument, "unknown mode " + mode_text);
      std::vector<dds::GeneratorSpec> batch;
      for (int k = 0; k < count; ++k)
        batch.push_back(
            {dds::derive_seed(seed, static_cast<std::uint64_t>(k)), domain,
             mode});
      std::cout << "rng: " << dds::rng_algorithm_id << "\n";
      std::cout << "base_seed: " << seed << " count: " << count
                << " shape: " << shape_text
                << " mode: " << dds::gen_mode_name(mode) << "\n";
      const auto verdicts = dds::check_theorem_suite(batch, caps);
      bool any_fail = false;
      for (const dds::LemmaVerdict& v : verdicts) {
        std::cout << dds::format_verdict_line(v) << "\n";
        if (!v.pass) {
          any_fail = true;
          const std::string path = "counterexample_" + v.lemma + "_" +
                                   std::to_string(v.repro_seed) + ".dds";
          const dds::Network repro = dds::generate(
              {v.repro_seed, dds::parse_shape(v.repro_shape), mode}, caps);
          atomic_write(path, dds::render_table(repro));
          std::cout << "counterexample written: " << path << "\n";
        }
      }
      std::cout << "verdicts: " << verdicts.size() << "\n";
      return any_fail ? exit_verification : exit_ok;
    }

    if (c_random->parsed()) {
      const dds::IntervalDomain domain = dds::parse_shape(shape_text);
      dds::GenMode mode = dds::GenMode::uniform_table;
      if (mode_text == "rules") mode = dds::GenMode::random_rules;
      else if (mode_text == "no-positive-circuit")
        mode = dds::GenMode::no_positive_circuit;
      else if (mode_text == "no-dual-sign") mode = dds::GenMode::no_dual_sign;
      const dds::Network net = dds::generate({seed, domain, mode}, caps);
      atomic_write(out_path, dds::render_table(net));
      std::cout << "wrote " << out_path << "\n";
      return exit_ok;
    }
  } catch (const dds::error& e) {
    std::cerr << "error[" << dds::errc_name(e.code()) << "]: " << e.what()
              << "\n";
    return e.code() == dds::errc::cap_exceeded ? exit_cap : exit_input;
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << "\n";
    return exit_input;
  }
  return exit_input;
}
