/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "hic/generators.hpp"
#include "hic/json_io.hpp"
#include "hic/qasm.hpp"
#include "hic/qpd.hpp"
#include "hic/selector.hpp"

using namespace hic;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitNoStrategy = 3;

#ifndef HIC_FIXTURE_DIR
#define HIC_FIXTURE_DIR "fixtures"
#endif

std::uint64_t default_seed() {
  if (const char *env = std::getenv("HIC_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 7;
}

void write_text(const std::string &path, const std::string &text) {
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write " + path);
  out << text;
  if (text.empty() || text.back() != '\n')
    out << "\n";
}

struct Timing {
  double preprocess_seconds = 0.0;
  double execution_seconds = 0.0;
  double postprocess_seconds = 0.0;
};

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double lap() {
    auto now = std::chrono::steady_clock::now();
    double s = std::chrono::duration<double>(now - start_).count();
    start_ = now;
    return s;
  }

private:
  std::chrono::steady_clock::time_point start_;
};

std::vector<std::pair<std::uint32_t, std::uint32_t>>
parse_edge_list(const std::string &text, std::uint32_t n) {
  if (text == "ring")
    return ring_edges(n);
  if (text == "path")
    return path_edges(n);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto dash = item.find('-');
    if (dash == std::string::npos)
      throw InvalidParameterError("edge list entries look like 'a-b'");
    edges.emplace_back(std::stoul(item.substr(0, dash)),
                       std::stoul(item.substr(dash + 1)));
  }
  return edges;
}

// ---------------------------------------------------------------------------
// run pipeline
// ---------------------------------------------------------------------------

struct RunArgs {
  std::string circuit_path;
  std::string calibration_path;
  double zv = 1.0, ze = 1.0;
  std::uint32_t budget = 4;
  std::string backend = "exact";
  std::uint64_t shots = 4096;
  std::uint64_t seed = default_seed();
  std::uint32_t jobs = 1;
  bool dry_run = false;
  std::string out_dir;
};

int cmd_run(const RunArgs &args) {
  Stopwatch watch;
  Timing timing;
  Circuit circuit = parse_qasm_file(args.circuit_path);
  CalibrationSnapshot snap = load_calibration(args.calibration_path);
  SelectorOptions opts;
  opts.jobs = args.jobs;

  ComparisonReport report =
      compare_with_baseline(circuit, snap, args.zv, args.ze, args.budget, opts);
  timing.preprocess_seconds = watch.lap();

  json doc = json::parse(comparison_to_json(report));
  doc["observable"] = "uniform_z";
  doc["backend"] = args.dry_run ? "none" : args.backend;

  int exit_code = kExitOk;
  if (!report.selection.winner) {
    exit_code = kExitNoStrategy;
  } else if (!args.dry_run) {
    const auto &winner = *report.selection.winner;
    Observable obs = Observable::uniform_z(circuit.num_qubits);
    auto set = generate_subexperiments(*winner.strategy, obs);
    ResultTable results;
    std::uint64_t shots_used = 0;
    if (args.backend == "exact") {
      results = run_exact(set);
    } else if (args.backend == "noisy") {
      NoisyExecConfig cfg;
      cfg.shots = args.shots;
      cfg.seed = args.seed;
      cfg.jobs = args.jobs;
      results = run_noisy(set, winner.placements,
                          report.selection.punctured.components, snap.noise,
                          cfg);
      shots_used = args.shots * set.actual_subexperiments;
    } else {
      throw InvalidParameterError("backend must be exact or noisy");
    }
    timing.execution_seconds = watch.lap();
    auto rec = reconstruct(set, results);
    rec.shots_used = shots_used;
    doc["reconstruction"] = json::parse(reconstruction_to_json(rec));
    doc["actual_subexperiments"] = set.actual_subexperiments;
    if (circuit.num_qubits <= 14)
      doc["uncut_exact_expectation"] =
          exact_expectation(lower_to_native(circuit), obs);
  }
  timing.postprocess_seconds = watch.lap();
  doc["timing"] = {{"preprocess_seconds", timing.preprocess_seconds},
                   {"execution_seconds", timing.execution_seconds},
                   {"postprocess_seconds", timing.postprocess_seconds}};

  std::string text = doc.dump(2);
  if (!args.out_dir.empty()) {
    std::filesystem::create_directories(args.out_dir);
    write_text(args.out_dir + "/run_report.json", text);
    write_text(args.out_dir + "/candidates.csv",
               selection_to_csv(report.selection));
  }
  std::cout << text << "\n";
  return exit_code;
}

// ---------------------------------------------------------------------------
// reproduce experiments
// ---------------------------------------------------------------------------

struct ReproArgs {
  std::string name;
  std::string fixtures = HIC_FIXTURE_DIR;
  std::string out_dir = "reports";
  std::uint32_t jobs = 4;
};

void emit_pass_fail(json &summary, const std::string &check, bool ok,
                    const std::string &detail) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << check
            << (detail.empty() ? "" : " — " + detail) << "\n";
  summary["checks"].push_back({{"name", check}, {"pass", ok}, {"detail", detail}});
}

json repro_table1() {
  json summary;
  summary["experiment"] = "table1";
  summary["checks"] = json::array();
  auto circuit = gen_ising_1d(6, 2, 0.7, 0.3);
  struct Row {
    std::uint32_t d, gate_cuts, wire_cuts;
    std::uint64_t executions;
  };
  const std::vector<Row> expected = {
      {2, 8, 0, 43046721ull}, {3, 4, 0, 6561ull}, {4, 2, 1, 1296ull}};
  json rows = json::array();
  for (const auto &row : expected) {
    auto o = oracle_min_cuts(circuit, row.d, 8, 200'000'000);
    auto f = find_cuts(circuit, row.d, 1000);
    json r;
    r["device_constraint"] = row.d;
    r["expected"] = {{"gate_cuts", row.gate_cuts},
                     {"wire_cuts", row.wire_cuts},
                     {"executions", row.executions}};
    if (o) {
      auto rep = overhead(*o);
      r["oracle"] = {{"gate_cuts", o->num_gate_cuts},
                     {"wire_cuts", o->num_wire_cuts},
                     {"executions", rep.canonical_executions}};
      bool ok = o->num_gate_cuts == row.gate_cuts &&
                o->num_wire_cuts == row.wire_cuts &&
                rep.canonical_executions == row.executions;
      emit_pass_fail(summary, "table1 d=" + std::to_string(row.d) + " oracle",
                     ok,
                     ok ? ""
                        : "oracle found g=" + std::to_string(o->num_gate_cuts) +
                              " w=" + std::to_string(o->num_wire_cuts) +
                              " executions=" +
                              std::to_string(rep.canonical_executions));
    }
    if (f) {
      auto rep = overhead(*f);
      r["find_cuts"] = {{"gate_cuts", f->num_gate_cuts},
                        {"wire_cuts", f->num_wire_cuts},
                        {"executions", rep.canonical_executions}};
      if (row.d != 2) {
        bool match = o && overhead(*o).canonical_executions ==
                              rep.canonical_executions;
        emit_pass_fail(summary,
                       "table1 d=" + std::to_string(row.d) +
                           " find_cuts matches oracle",
                       match, "");
      }
    }
    rows.push_back(r);
  }
  summary["rows"] = rows;
  return summary;
}

json repro_table4_arith() {
  json summary;
  summary["experiment"] = "table4_arith";
  summary["checks"] = json::array();
  auto make = [](std::vector<std::pair<std::uint32_t, double>> items) {
    std::vector<ScoredPlacement> ps;
    for (auto &[w, s] : items) {
      ScoredPlacement p;
      p.width = w;
      p.score = s;
      ps.push_back(p);
    }
    return ps;
  };
  double ws_equal =
      weighted_score(make({{1, 0.4221}, {1, 0.5186}, {1, 0.4221}}), 3);
  double ws_hic = weighted_score(make({{1, 0.4217}, {2, 0.4353}}), 3);
  summary["ws_equal_partition"] = ws_equal;
  summary["ws_hic"] = ws_hic;
  emit_pass_fail(summary, "table4 equal-partition W_s = 0.4542 +/- 5e-4",
                 std::abs(ws_equal - 0.4542) <= 5e-4,
                 "computed " + std::to_string(ws_equal));
  emit_pass_fail(summary, "table4 budget-3 W_s = 0.4308 +/- 5e-4",
                 std::abs(ws_hic - 0.4308) <= 5e-4,
                 "computed " + std::to_string(ws_hic));
  return summary;
}

json repro_fig5(std::uint32_t jobs) {
  json summary;
  summary["experiment"] = "fig5_correlation";
  summary["checks"] = json::array();

  TopologyParams params;
  params.kind = TopologyKind::HeavyHex;
  params.size = 4; // 49 qubits
  NoiseLaw law;
  law.mean_qubit_error = 5e-4;
  law.mean_edge_error = 8e-3;
  law.spread = 0.45;
  law.outlier_fraction = 0.06;
  law.outlier_multiplier = 8.0;
  auto snap = gen_topology(params, 20260203, law);

  json per_circuit = json::array();
  int above = 0, total = 0;
  for (int i = 0; i < 20; ++i) {
    std::uint32_t n = i < 10 ? 10 : 20;
    auto circuit = gen_random_clifford(n, 4, 1000 + i);
    SelectorOptions opts;
    opts.jobs = jobs;
    auto sel = select(circuit, snap, 1.0, 1.0, 1000, opts);
    std::vector<std::pair<double, double>> samples;
    for (const auto &cand : sel.all_candidates)
      if (cand.feasible)
        samples.emplace_back(cand.norm1, cand.norm2);
    json cj;
    cj["qubits"] = n;
    cj["seed"] = 1000 + i;
    cj["samples"] = samples.size();
    double r = 0.0;
    bool valid = false;
    if (samples.size() >= 2) {
      try {
        r = norm_correlation(samples);
        valid = true;
      } catch (const InvalidParameterError &) {
      }
    }
    if (valid) {
      cj["pearson_r"] = r;
      ++total;
      if (r > 0.9)
        ++above;
    }
    per_circuit.push_back(cj);
  }
  summary["circuits"] = per_circuit;
  summary["fraction_above_0.9"] =
      total ? static_cast<double>(above) / total : 0.0;
  summary["valid_coefficients"] = total;
  bool in_range = true;
  for (const auto &cj : per_circuit)
    if (cj.contains("pearson_r")) {
      double r = cj["pearson_r"].get<double>();
      if (r < -1.0 - 1e-12 || r > 1.0 + 1e-12)
        in_range = false;
    }
  emit_pass_fail(summary, "fig5 coefficients in [-1,1]", in_range,
                 std::to_string(total) + " coefficients; fraction > 0.9: " +
                     std::to_string(summary["fraction_above_0.9"].get<double>()));
  return summary;
}

json repro_qaoa_mirrored(const std::string &fixtures, std::uint32_t jobs) {
  json summary;
  summary["experiment"] = "qaoa_mirrored";
  summary["checks"] = json::array();
  auto circuit = parse_qasm_file(fixtures + "/qaoa12_mirrored.qasm");
  auto snap = load_calibration(fixtures + "/line18_hetero.json");
  SelectorOptions opts;
  opts.jobs = jobs;
  auto report = compare_with_baseline(circuit, snap, 2.0, 3.0, 4, opts);
  summary["report"] = json::parse(comparison_to_json(report));
  bool has_winner = report.selection.winner.has_value();
  emit_pass_fail(summary, "qaoa12 winner exists", has_winner, "");
  if (has_winner) {
    emit_pass_fail(summary, "qaoa12 execution ratio >= 4",
                   report.execution_ratio >= 4.0,
                   "ratio " + std::to_string(report.execution_ratio));
    Observable obs = Observable::uniform_z(circuit.num_qubits);
    auto set = generate_subexperiments(*report.selection.winner->strategy, obs);
    auto rec = reconstruct(set, run_exact(set));
    summary["exact_reconstruction"] = rec.expectation;
    emit_pass_fail(summary, "qaoa12 mirrored reconstruction = 1",
                   std::abs(rec.expectation - 1.0) < 1e-9,
                   "reconstructed " + std::to_string(rec.expectation));
  }
  return summary;
}

json repro_ising20(std::uint32_t jobs) {
  json summary;
  summary["experiment"] = "ising20";
  summary["checks"] = json::array();
  auto circuit = gen_ising_1d(20, 2, 0.7, 0.3);
  TopologyParams params;
  params.kind = TopologyKind::HeavyHex;
  params.size = 4;
  NoiseLaw law;
  law.mean_qubit_error = 5e-4;
  law.mean_edge_error = 8e-3;
  law.spread = 0.4;
  law.outlier_fraction = 0.08;
  law.outlier_multiplier = 10.0;
  auto snap = gen_topology(params, 20260519, law);
  SelectorOptions opts;
  opts.jobs = jobs;
  auto report = compare_with_baseline(circuit, snap, 1.5, 1.5, 6, opts);
  summary["report"] = json::parse(comparison_to_json(report));
  summary["equal_partition_constraint"] = equal_partition_constraint(circuit);
  emit_pass_fail(summary, "ising20 equal-partition constraint = 10",
                 equal_partition_constraint(circuit) == 10, "");
  if (report.selection.winner)
    emit_pass_fail(
        summary, "ising20 winner executions <= baseline",
        report.selection.winner->overhead_report.canonical_executions <=
            report.baseline.overhead_report.canonical_executions,
        "ratio " + std::to_string(report.execution_ratio));
  return summary;
}

int cmd_reproduce(const ReproArgs &args) {
  json summary;
  if (args.name == "table1")
    summary = repro_table1();
  else if (args.name == "table4_arith")
    summary = repro_table4_arith();
  else if (args.name == "fig5_correlation")
    summary = repro_fig5(args.jobs);
  else if (args.name == "qaoa_mirrored")
    summary = repro_qaoa_mirrored(args.fixtures, args.jobs);
  else if (args.name == "ising20")
    summary = repro_ising20(args.jobs);
  else
    throw InvalidParameterError("unknown experiment '" + args.name + "'");

  std::filesystem::create_directories(args.out_dir);
  write_text(args.out_dir + "/" + args.name + ".json", summary.dump(2));
  bool all = true;
  for (const auto &check : summary["checks"])
    all = all && check["pass"].get<bool>();
  std::cout << (all ? "ALL CHECKS PASSED" : "SOME CHECKS FAILED") << " — report "
            << args.out_dir << "/" << args.name << ".json\n";
  return all ? kExitOk : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"hic — hardware-aware circuit cutting toolkit"};
  app.set_config("--config", "", "Read options from an INI/TOML file");
  app.require_subcommand(1);

  // gen-circuit -------------------------------------------------------------
  auto *gen_circuit = app.add_subcommand("gen-circuit", "Generate a benchmark circuit");
  std::string gc_kind = "ising", gc_edges = "ring", gc_out;
  std::uint32_t gc_n = 6, gc_steps = 2, gc_depth = 8;
  double gc_theta_zz = 0.7, gc_theta_x = 0.3, gc_gamma = 0.6, gc_beta = 0.35;
  std::uint64_t gc_seed = default_seed();
  gen_circuit->add_option("--kind", gc_kind, "ising | qaoa-mirrored | random-clifford")
      ->check(CLI::IsMember({"ising", "qaoa-mirrored", "random-clifford"}));
  gen_circuit->add_option("--n", gc_n, "qubit count");
  gen_circuit->add_option("--steps", gc_steps, "Trotter steps (ising)");
  gen_circuit->add_option("--theta-zz", gc_theta_zz);
  gen_circuit->add_option("--theta-x", gc_theta_x);
  gen_circuit->add_option("--edges", gc_edges, "ring | path | a-b,c-d,... (qaoa)");
  gen_circuit->add_option("--gamma", gc_gamma);
  gen_circuit->add_option("--beta", gc_beta);
  gen_circuit->add_option("--depth", gc_depth, "layers (random-clifford)");
  gen_circuit->add_option("--seed", gc_seed);
  gen_circuit->add_option("--out", gc_out, "output .qasm (default stdout)");

  // gen-calibration ----------------------------------------------------------
  auto *gen_cal = app.add_subcommand("gen-calibration", "Generate a synthetic calibration snapshot");
  std::string cal_topology = "line", cal_out;
  std::uint32_t cal_size = 18, cal_rows = 4, cal_cols = 5;
  NoiseLaw law;
  std::uint64_t cal_seed = default_seed();
  gen_cal->add_option("--topology", cal_topology, "line | grid | heavy-hex")
      ->check(CLI::IsMember({"line", "grid", "heavy-hex"}));
  gen_cal->add_option("--size", cal_size, "qubits (line) or unit cells (heavy-hex)");
  gen_cal->add_option("--rows", cal_rows);
  gen_cal->add_option("--cols", cal_cols);
  gen_cal->add_option("--mean-qubit-error", law.mean_qubit_error);
  gen_cal->add_option("--mean-edge-error", law.mean_edge_error);
  gen_cal->add_option("--readout-scale", law.readout_scale);
  gen_cal->add_option("--spread", law.spread);
  gen_cal->add_option("--outlier-fraction", law.outlier_fraction);
  gen_cal->add_option("--outlier-multiplier", law.outlier_multiplier);
  gen_cal->add_option("--seed", cal_seed);
  gen_cal->add_option("--out", cal_out, "output .json (default stdout)");

  // puncture ------------------------------------------------------------------
  auto *punct = app.add_subcommand("puncture", "Puncture a coupling map into low-noise islands");
  std::string p_cal, p_out;
  double p_zv = 1.0, p_ze = 1.0;
  punct->add_option("--calibration", p_cal)->required();
  punct->add_option("--zv", p_zv, "qubit Z-score threshold")->required();
  punct->add_option("--ze", p_ze, "edge Z-score threshold")->required();
  punct->add_option("--out", p_out);

  // find ----------------------------------------------------------------------
  auto *find = app.add_subcommand("find", "Find a cut strategy for a device constraint");
  std::string f_circuit, f_out;
  std::uint32_t f_d = 0, f_budget = 0;
  find->add_option("--circuit", f_circuit)->required();
  find->add_option("--constraint", f_d, "max qubits per subcircuit")->required();
  find->add_option("--budget", f_budget, "cut budget (0 = unbudgeted)");
  find->add_option("--out", f_out, "strategy JSON output");

  // score ---------------------------------------------------------------------
  auto *score = app.add_subcommand("score", "Place and score a strategy's subcircuits");
  std::string s_strategy, s_cal, s_out;
  double s_zv = 0.0, s_ze = 0.0;
  score->add_option("--strategy", s_strategy)->required();
  score->add_option("--calibration", s_cal)->required();
  score->add_option("--zv", s_zv, "puncture before placing (0 = full map)");
  score->add_option("--ze", s_ze);
  score->add_option("--out", s_out);

  // select / compare ------------------------------------------------------------
  auto add_select_opts = [&](CLI::App *cmd, std::string &circuit,
                             std::string &cal, double &zv, double &ze,
                             std::uint32_t &budget, std::uint32_t &jobs,
                             std::string &out, std::string &csv) {
    cmd->add_option("--circuit", circuit)->required();
    cmd->add_option("--calibration", cal)->required();
    cmd->add_option("--zv", zv)->required();
    cmd->add_option("--ze", ze)->required();
    cmd->add_option("--budget", budget)->required();
    cmd->add_option("--jobs", jobs);
    cmd->add_option("--out", out);
    cmd->add_option("--csv", csv);
  };
  auto *sel_cmd = app.add_subcommand("select", "Sweep device constraints and pick the min-W_s strategy");
  std::string sel_circuit, sel_cal, sel_out, sel_csv;
  double sel_zv = 1.0, sel_ze = 1.0;
  std::uint32_t sel_budget = 4, sel_jobs = 1;
  add_select_opts(sel_cmd, sel_circuit, sel_cal, sel_zv, sel_ze, sel_budget,
                  sel_jobs, sel_out, sel_csv);

  auto *cmp_cmd = app.add_subcommand("compare", "Compare the HIC selection against equal partitioning");
  std::string cmp_circuit, cmp_cal, cmp_out, cmp_csv;
  double cmp_zv = 1.0, cmp_ze = 1.0;
  std::uint32_t cmp_budget = 4, cmp_jobs = 1;
  add_select_opts(cmp_cmd, cmp_circuit, cmp_cal, cmp_zv, cmp_ze, cmp_budget,
                  cmp_jobs, cmp_out, cmp_csv);

  // run -------------------------------------------------------------------------
  auto *run_cmd = app.add_subcommand("run", "Full pipeline: select, execute, reconstruct");
  RunArgs run_args;
  run_cmd->add_option("--circuit", run_args.circuit_path)->required();
  run_cmd->add_option("--calibration", run_args.calibration_path)->required();
  run_cmd->add_option("--zv", run_args.zv)->required();
  run_cmd->add_option("--ze", run_args.ze)->required();
  run_cmd->add_option("--budget", run_args.budget)->required();
  run_cmd->add_option("--backend", run_args.backend, "exact | noisy")
      ->check(CLI::IsMember({"exact", "noisy"}));
  run_cmd->add_option("--shots", run_args.shots);
  run_cmd->add_option("--seed", run_args.seed);
  run_cmd->add_option("--jobs", run_args.jobs);
  run_cmd->add_flag("--dry-run", run_args.dry_run, "select only, skip execution");
  run_cmd->add_option("--out", run_args.out_dir, "report directory");

  // reproduce ---------------------------------------------------------------------
  auto *repro_cmd = app.add_subcommand("reproduce", "Re-run a bundled experiment");
  ReproArgs repro_args;
  repro_cmd->add_option("name", repro_args.name,
                        "table1 | table4_arith | fig5_correlation | ising20 | qaoa_mirrored")
      ->required();
  repro_cmd->add_option("--fixtures", repro_args.fixtures);
  repro_cmd->add_option("--out", repro_args.out_dir);
  repro_cmd->add_option("--jobs", repro_args.jobs);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_circuit->parsed()) {
      Circuit c;
      if (gc_kind == "ising")
        c = gen_ising_1d(gc_n, gc_steps, gc_theta_zz, gc_theta_x);
      else if (gc_kind == "qaoa-mirrored")
        c = gen_qaoa_mirrored(gc_n, parse_edge_list(gc_edges, gc_n), gc_gamma,
                              gc_beta);
      else
        c = gen_random_clifford(gc_n, gc_depth, gc_seed);
      if (gc_out.empty())
        std::cout << emit_qasm(c);
      else
        write_qasm_file(c, gc_out);
      return kExitOk;
    }
    if (gen_cal->parsed()) {
      TopologyParams params;
      if (cal_topology == "line") {
        params.kind = TopologyKind::Line;
        params.size = cal_size;
      } else if (cal_topology == "grid") {
        params.kind = TopologyKind::Grid;
        params.rows = cal_rows;
        params.cols = cal_cols;
      } else {
        params.kind = TopologyKind::HeavyHex;
        params.size = cal_size;
      }
      auto snap = gen_topology(params, cal_seed, law);
      if (cal_out.empty())
        std::cout << calibration_to_json(snap) << "\n";
      else
        save_calibration(snap, cal_out);
      return kExitOk;
    }
    if (punct->parsed()) {
      auto snap = load_calibration(p_cal);
      auto p = puncture(snap, p_zv, p_ze);
      std::string text = punctured_to_json(p);
      if (!p_out.empty())
        write_text(p_out, text);
      std::cout << text << "\n";
      return kExitOk;
    }
    if (find->parsed()) {
      auto circuit = parse_qasm_file(f_circuit);
      auto strategy = find_cuts(circuit, f_d,
                                f_budget == 0
                                    ? std::numeric_limits<std::uint32_t>::max()
                                    : f_budget);
      if (!strategy) {
        std::cerr << "no strategy within budget\n";
        return kExitNoStrategy;
      }
      std::string text = strategy_to_json(*strategy);
      if (!f_out.empty())
        write_text(f_out, text);
      std::cout << text << "\n";
      return kExitOk;
    }
    if (score->parsed()) {
      auto strategy = load_strategy(s_strategy);
      auto snap = load_calibration(s_cal);
      std::vector<Component> components;
      if (s_zv > 0.0 && s_ze > 0.0)
        components = puncture(snap, s_zv, s_ze).components;
      else
        components = {component_from_map(snap.coupling)};
      json doc;
      doc["subcircuits"] = json::array();
      std::vector<ScoredPlacement> placements;
      std::uint32_t total = 0;
      for (std::uint32_t si = 0; si < strategy.subcircuits.size(); ++si) {
        const auto &sub = strategy.subcircuits[si];
        total += sub.width;
        std::optional<ScoredPlacement> best;
        std::uint32_t best_comp = 0;
        for (std::uint32_t ci = 0; ci < components.size(); ++ci) {
          auto placed = place_and_route(sub, components[ci], snap.noise);
          if (placed && (!best || placed->score < best->score)) {
            best = std::move(placed);
            best_comp = ci;
          }
        }
        json sj;
        sj["subcircuit"] = si;
        sj["width"] = sub.width;
        if (best) {
          sj["component"] = best_comp;
          sj["score"] = best->score;
          sj["layout"] = best->layout.initial_mapping;
          placements.push_back(*best);
        } else {
          sj["placeable"] = false;
        }
        doc["subcircuits"].push_back(sj);
      }
      if (placements.size() == strategy.subcircuits.size())
        doc["weighted_score"] = weighted_score(placements, total);
      std::string text = doc.dump(2);
      if (!s_out.empty())
        write_text(s_out, text);
      std::cout << text << "\n";
      return kExitOk;
    }
    if (sel_cmd->parsed() || cmp_cmd->parsed()) {
      const bool comparing = cmp_cmd->parsed();
      auto circuit = parse_qasm_file(comparing ? cmp_circuit : sel_circuit);
      auto snap = load_calibration(comparing ? cmp_cal : sel_cal);
      SelectorOptions opts;
      opts.jobs = comparing ? cmp_jobs : sel_jobs;
      std::string text;
      std::string csv;
      bool has_winner = false;
      if (comparing) {
        auto report = compare_with_baseline(circuit, snap, cmp_zv, cmp_ze,
                                            cmp_budget, opts);
        text = comparison_to_json(report);
        csv = selection_to_csv(report.selection);
        has_winner = report.selection.winner.has_value();
      } else {
        auto sel = select(circuit, snap, sel_zv, sel_ze, sel_budget, opts);
        text = selection_to_json(sel);
        csv = selection_to_csv(sel);
        has_winner = sel.winner.has_value();
      }
      const std::string &out = comparing ? cmp_out : sel_out;
      const std::string &csv_path = comparing ? cmp_csv : sel_csv;
      if (!out.empty())
        write_text(out, text);
      if (!csv_path.empty())
        write_text(csv_path, csv);
      std::cout << text << "\n";
      return has_winner ? kExitOk : kExitNoStrategy;
    }
    if (run_cmd->parsed())
      return cmd_run(run_args);
    if (repro_cmd->parsed())
      return cmd_reproduce(repro_args);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
