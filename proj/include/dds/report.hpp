#pragma once

#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dds/bounds.hpp"

namespace dds {

namespace detail {

inline std::string join_1based(const std::vector<int>& vs) {
  if (vs.empty()) return "{}";
  std::string out = "{";
  for (std::size_t k = 0; k < vs.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(vs[k] + 1);
  }
  return out + "}";
}

inline std::string format_state_set(const IntervalDomain& d, const StateSet& s) {
  std::string out;
  State x;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += " ";
    d.unrank_into(s[k], x);
    out += format_state(x);
  }
  return out;
}

inline void write_bound(std::ostream& os, const char* label,
                        const BoundReport& b) {
  os << "  " << label << ": " << b.value << (b.valid ? "" : " (not applicable)")
     << "  I=" << join_1based(b.I) << " factors=[";
  for (std::size_t k = 0; k < b.factors.size(); ++k) {
    if (k) os << ",";
    os << b.factors[k];
  }
  os << "]\n";
}

}  // namespace detail

// Deterministic key: value text report.
inline void write_report_text(std::ostream& os, const AnalysisReport& rep,
                              const IntervalDomain& domain) {
  os << "network:\n";
  os << "  n: " << rep.n << "\n";
  os << "  domain: " << rep.domain_text << "\n";
  os << "  states: " << rep.cardinality << "\n";
  if (rep.clamped_elaboration) os << "  clamped_elaboration: true\n";
  os << "dynamics:\n";
  os << "  attractor_count: " << rep.attractor_count << "\n";
  for (std::size_t k = 0; k < rep.attractor_sets.size(); ++k)
    os << "  attractor " << (k + 1) << " (size "
       << rep.attractor_sets[k].size()
       << "): " << detail::format_state_set(domain, rep.attractor_sets[k])
       << "\n";
  os << "  fixed_point_count: " << rep.fixed_point_count << "\n";
  for (const State& x : rep.fixed_point_states)
    os << "  fixed_point: " << format_state(x) << "\n";
  os << "interaction:\n";
  os << "  global_edges: " << rep.global_thresholded.edge_count() << "\n";
  for (const SignedEdge& e : rep.global_thresholded.edges())
    os << "    " << format_edge(e) << "\n";
  os << "  global_edges_unthresholded: "
     << rep.global_unthresholded.edge_count() << "\n";
  for (const SignedEdge& e : rep.global_unthresholded.edges())
    os << "    " << format_edge(e) << "\n";
  os << "  functional_positive_supports: " << rep.family.size() << "\n";
  for (const auto& entry : rep.family.entries) {
    os << "    support " << detail::join_1based(entry.support)
       << " witness x=" << format_state(entry.witness.x)
       << " v=" << format_direction(entry.witness.v) << " circuit";
    for (const SignedEdge& e : entry.witness.circuit)
      os << " " << format_edge(e);
    os << "\n";
  }
  os << "thresholds:\n";
  for (int i = 0; i < rep.n; ++i) {
    os << "  T" << (i + 1) << "_doubled: [";
    const auto& ts = rep.thresholds.doubled[i];
    for (std::size_t k = 0; k < ts.size(); ++k) {
      if (k) os << ",";
      os << ts[k];
    }
    os << "]\n";
  }
  os << "bounds:\n";
  for (const BoundLane* lane :
       {&rep.lane_family, &rep.lane_global, &rep.lane_unthresholded}) {
    os << "  lane " << lane->name << ": I=" << detail::join_1based(lane->I)
       << "\n";
    detail::write_bound(os, "bound_main", lane->main_bound);
    detail::write_bound(os, "bound_box", lane->box_bound);
  }
  detail::write_bound(os, "bound_mu", rep.mu_bound);
  os << "  bound_main: " << rep.bound_main() << "\n";
  os << "  bound_corollary: " << rep.bound_corollary() << "\n";
  os << "  bound_mu: " << rep.bound_mu() << "\n";
  os << "verdicts:\n";
  for (const ChainVerdict& v : rep.verdicts)
    os << "  " << v.name << ": "
       << (!v.applicable ? "n/a" : v.pass ? "pass" : "FAIL") << " (" << v.detail
       << ")\n";
}

inline nlohmann::ordered_json report_to_json(const AnalysisReport& rep,
                                             const IntervalDomain& domain) {
  using json = nlohmann::ordered_json;
  json j;
  j["n"] = rep.n;
  j["domain"] = rep.domain_text;
  j["states"] = rep.cardinality;
  j["clamped_elaboration"] = rep.clamped_elaboration;
  j["attractor_count"] = rep.attractor_count;
  j["fixed_point_count"] = rep.fixed_point_count;

  json attrs = json::array();
  State x;
  for (const StateSet& s : rep.attractor_sets) {
    json members = json::array();
    for (std::uint64_t r : s) {
      domain.unrank_into(r, x);
      members.push_back(x);
    }
    attrs.push_back(members);
  }
  j["attractors"] = attrs;

  json fps = json::array();
  for (const State& fp : rep.fixed_point_states) fps.push_back(fp);
  j["fixed_points"] = fps;

  json pfvs = json::array();
  for (int v : rep.pfvs()) pfvs.push_back(v + 1);
  j["pfvs"] = pfvs;

  j["thresholds_doubled"] = rep.thresholds.doubled;
  j["bound_main"] = rep.bound_main();
  j["bound_corollary"] = rep.bound_corollary();
  j["bound_mu"] = rep.bound_mu();

  auto edges_json = [](const SignedDigraph& g) {
    json out = json::array();
    for (const SignedEdge& e : g.edges())
      out.push_back({{"from", e.from + 1}, {"to", e.to + 1}, {"sign", e.sign}});
    return out;
  };
  j["global_graph"] = edges_json(rep.global_thresholded);
  j["global_graph_unthresholded"] = edges_json(rep.global_unthresholded);

  json fam = json::array();
  for (const auto& entry : rep.family.entries) {
    json supp = json::array();
    for (int v : entry.support) supp.push_back(v + 1);
    json circuit = json::array();
    for (const SignedEdge& e : entry.witness.circuit)
      circuit.push_back(
          {{"from", e.from + 1}, {"to", e.to + 1}, {"sign", e.sign}});
    fam.push_back({{"support", supp},
                   {"witness_x", entry.witness.x},
                   {"witness_v", entry.witness.v},
                   {"witness_circuit", circuit}});
  }
  j["functional_positive_circuits"] = fam;

  auto lane_json = [](const BoundLane& lane) {
    json out;
    json I = json::array();
    for (int v : lane.I) I.push_back(v + 1);
    out["I"] = I;
    out["bound_main"] = lane.main_bound.value;
    out["bound_main_valid"] = lane.main_bound.valid;
    out["bound_box"] = lane.box_bound.value;
    return out;
  };
  j["lanes"] = {{"family", lane_json(rep.lane_family)},
                {"global", lane_json(rep.lane_global)},
                {"unthresholded", lane_json(rep.lane_unthresholded)}};

  json verdicts = json::array();
  for (const ChainVerdict& v : rep.verdicts)
    verdicts.push_back({{"name", v.name},
                        {"applicable", v.applicable},
                        {"pass", v.pass},
                        {"detail", v.detail}});
  j["verdicts"] = verdicts;
  return j;
}

inline std::string report_text(const AnalysisReport& rep,
                               const IntervalDomain& domain) {
  std::ostringstream ss;
  write_report_text(ss, rep, domain);
  return ss.str();
}

}  // namespace dds
