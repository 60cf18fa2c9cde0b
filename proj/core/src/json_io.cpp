/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "hic/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hic/qasm.hpp"

namespace hic {

using nlohmann::json;

namespace {

json action_to_json(const CutAction &a) {
  if (a.kind == CutAction::Kind::GateCut)
    return {{"kind", "gate"}, {"gate_index", a.gate_index}};
  return {{"kind", "wire"}, {"qubit", a.qubit}, {"after_gate", a.after_gate}};
}

CutAction action_from_json(const json &j) {
  CutAction a;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "gate") {
    a.kind = CutAction::Kind::GateCut;
    a.gate_index = j.at("gate_index").get<std::uint32_t>();
  } else if (kind == "wire") {
    a.kind = CutAction::Kind::WireCut;
    a.qubit = j.at("qubit").get<std::uint32_t>();
    a.after_gate = j.at("after_gate").get<std::uint32_t>();
  } else {
    throw SchemaError("unknown action kind '" + kind + "'");
  }
  return a;
}

json overhead_to_json(const OverheadReport &r) {
  return {{"gamma", r.gamma},
          {"canonical_executions", r.canonical_executions},
          {"actual_subexperiments", r.actual_subexperiments}};
}

json candidate_json(const CandidateEvaluation &eval) {
  json j;
  j["device_constraint"] = eval.device_constraint;
  j["feasible"] = eval.feasible;
  if (!eval.infeasible_reason.empty())
    j["infeasible_reason"] = eval.infeasible_reason;
  if (eval.strategy) {
    j["num_gate_cuts"] = eval.strategy->num_gate_cuts;
    j["num_wire_cuts"] = eval.strategy->num_wire_cuts;
    j["num_cuts"] = eval.strategy->num_cuts();
    j["overhead"] = overhead_to_json(eval.overhead_report);
    json widths = json::array();
    for (const auto &sub : eval.strategy->subcircuits)
      widths.push_back(sub.width);
    j["subcircuit_widths"] = widths;
    json actions = json::array();
    for (const auto &a : eval.strategy->actions)
      actions.push_back(action_to_json(a));
    j["actions"] = actions;
  }
  if (eval.feasible) {
    j["weighted_score"] = eval.weighted_score;
    j["norm1"] = eval.norm1;
    j["norm2"] = eval.norm2;
    json placements = json::array();
    for (const auto &p : eval.placements) {
      json pj;
      pj["component"] = p.layout.component_id;
      pj["score"] = p.score;
      pj["width"] = p.width;
      pj["initial_mapping"] = p.layout.initial_mapping;
      placements.push_back(pj);
    }
    j["placements"] = placements;
  }
  return j;
}

} // namespace

std::string strategy_to_json(const CutStrategy &s) {
  json j;
  j["schema"] = 1;
  j["circuit_qasm"] = emit_qasm(s.circuit);
  j["circuit_name"] = s.circuit.name;
  j["device_constraint"] = s.device_constraint;
  json actions = json::array();
  for (const auto &a : s.actions)
    actions.push_back(action_to_json(a));
  j["actions"] = actions;
  j["num_gate_cuts"] = s.num_gate_cuts;
  j["num_wire_cuts"] = s.num_wire_cuts;
  json widths = json::array();
  for (const auto &sub : s.subcircuits)
    widths.push_back(sub.width);
  j["subcircuit_widths"] = widths;
  j["overhead"] = overhead_to_json(overhead(s));
  return j.dump(2);
}

CutStrategy strategy_from_json(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception &e) {
    throw SchemaError(std::string("strategy is not valid JSON: ") + e.what());
  }
  if (j.value("schema", 0) != 1)
    throw SchemaError("unsupported strategy schema version");
  Circuit circuit = parse_qasm(j.at("circuit_qasm").get<std::string>());
  circuit.name = j.value("circuit_name", "");
  std::vector<CutAction> actions;
  for (const auto &aj : j.at("actions"))
    actions.push_back(action_from_json(aj));
  return apply_cuts(circuit, std::move(actions),
                    j.at("device_constraint").get<std::uint32_t>());
}

CutStrategy load_strategy(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open strategy file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return strategy_from_json(ss.str());
}

void save_strategy(const CutStrategy &s, const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write strategy file: " + path);
  out << strategy_to_json(s) << "\n";
}

std::string punctured_to_json(const PuncturedMap &p) {
  json j;
  auto edge_array = [](const std::set<EdgeId> &edges) {
    json arr = json::array();
    for (const auto &[a, b] : edges)
      arr.push_back({a, b});
    return arr;
  };
  j["retained_qubits"] = p.retained_qubits;
  j["removed_qubits"] = p.removed_qubits;
  j["retained_edges"] = edge_array(p.retained_edges);
  j["removed_edges"] = edge_array(p.removed_edges);
  json comps = json::array();
  for (const auto &c : p.components) {
    json cj;
    cj["qubits"] = c.qubits;
    cj["size"] = c.size();
    comps.push_back(cj);
  }
  j["components"] = comps;
  if (!p.components.empty()) {
    json range = json::array();
    for (auto d : candidate_constraints(p))
      range.push_back(d);
    j["candidate_constraints"] = range;
  } else {
    j["candidate_constraints"] = json::array();
  }
  return j.dump(2);
}

std::string candidate_to_json(const CandidateEvaluation &eval) {
  return candidate_json(eval).dump(2);
}

std::string selection_to_json(const SelectionResult &sel) {
  json j;
  j["schema"] = 1;
  j["winner"] = sel.winner ? candidate_json(*sel.winner) : json(nullptr);
  json cands = json::array();
  for (const auto &c : sel.all_candidates)
    cands.push_back(candidate_json(c));
  j["candidates"] = cands;
  if (sel.baseline)
    j["baseline"] = candidate_json(*sel.baseline);
  json comps = json::array();
  for (const auto &c : sel.punctured.components)
    comps.push_back(c.size());
  j["component_sizes"] = comps;
  return j.dump(2);
}

std::string comparison_to_json(const ComparisonReport &report) {
  json j;
  j["schema"] = 1;
  j["baseline"] = candidate_json(report.baseline);
  j["winner"] = report.selection.winner
                    ? candidate_json(*report.selection.winner)
                    : json(nullptr);
  j["delta_cuts"] = report.delta_cuts;
  j["execution_ratio"] = report.execution_ratio;
  j["delta_ws"] = report.delta_ws;
  json comps = json::array();
  for (const auto &c : report.selection.punctured.components)
    comps.push_back(c.size());
  j["component_sizes"] = comps;
  return j.dump(2);
}

std::string reconstruction_to_json(const ReconstructionResult &rec) {
  json j;
  j["expectation"] = rec.expectation;
  j["std_error"] = rec.std_error;
  j["shots_used"] = rec.shots_used;
  return j.dump(2);
}

std::string selection_to_csv(const SelectionResult &sel) {
  std::ostringstream out;
  out << "device_constraint,feasible,num_gate_cuts,num_wire_cuts,"
         "canonical_executions,weighted_score,norm1,norm2\n";
  for (const auto &c : sel.all_candidates) {
    out << c.device_constraint << ',' << (c.feasible ? 1 : 0) << ',';
    if (c.strategy)
      out << c.strategy->num_gate_cuts << ',' << c.strategy->num_wire_cuts
          << ',' << c.overhead_report.canonical_executions << ',';
    else
      out << ",,,";
    if (c.feasible)
      out << c.weighted_score << ',' << c.norm1 << ',' << c.norm2;
    else
      out << ",,";
    out << '\n';
  }
  return out.str();
}

} // namespace hic
