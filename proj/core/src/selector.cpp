/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "hic/selector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "hic/cut_finder.hpp"

namespace hic {

namespace {

// Best placement for each subcircuit across the given components (ties:
// lowest component id). Returns false if some subcircuit fits nowhere.
bool place_all(const CutStrategy &strategy,
               const std::vector<Component> &components,
               const NoiseProfile &noise,
               std::vector<ScoredPlacement> &out) {
  out.clear();
  for (const auto &sub : strategy.subcircuits) {
    std::optional<ScoredPlacement> best;
    for (std::uint32_t ci = 0; ci < components.size(); ++ci) {
      auto placed = place_and_route(sub, components[ci], noise);
      if (!placed)
        continue;
      placed->layout.component_id = ci;
      if (!best || placed->score < best->score)
        best = std::move(placed);
    }
    if (!best)
      return false;
    out.push_back(std::move(*best));
  }
  return true;
}

std::uint32_t total_segments(const CutStrategy &strategy) {
  std::uint32_t n = 0;
  for (const auto &sub : strategy.subcircuits)
    n += sub.width;
  return n;
}

CandidateEvaluation evaluate_candidate(const Circuit &c, std::uint32_t d,
                                       std::uint32_t k_max,
                                       const std::vector<Component> &components,
                                       const NoiseProfile &noise) {
  CandidateEvaluation eval;
  eval.device_constraint = d;
  const std::uint32_t d_eff = std::min(d, c.num_qubits);
  auto strategy = find_cuts(c, d_eff, std::numeric_limits<std::uint32_t>::max());
  if (!strategy) {
    eval.infeasible_reason = "no strategy";
    return eval;
  }
  eval.overhead_report = overhead(*strategy);
  eval.strategy = std::move(*strategy);
  if (eval.strategy->num_cuts() > k_max) {
    eval.infeasible_reason = "over budget (" +
                             std::to_string(eval.strategy->num_cuts()) + " > " +
                             std::to_string(k_max) + ")";
    return eval;
  }
  if (!place_all(*eval.strategy, components, noise, eval.placements)) {
    eval.placements.clear();
    eval.infeasible_reason = "unplaceable subcircuit";
    return eval;
  }
  auto terms = objective_terms(eval.placements, total_segments(*eval.strategy));
  eval.norm1 = terms.norm1;
  eval.norm2 = terms.norm2;
  eval.weighted_score = terms.norm1;
  eval.feasible = true;
  return eval;
}

// Winner ordering: W_s, then canonical executions, then smaller d.
bool candidate_better(const CandidateEvaluation &x,
                      const CandidateEvaluation &y) {
  return std::tuple(x.weighted_score,
                    x.overhead_report.canonical_executions,
                    x.device_constraint) <
         std::tuple(y.weighted_score,
                    y.overhead_report.canonical_executions,
                    y.device_constraint);
}

} // namespace

SelectionResult select(const Circuit &c, const CalibrationSnapshot &snap,
                       double z_vertices, double z_edges, std::uint32_t k_max,
                       const SelectorOptions &opts) {
  if (k_max < 1)
    throw InvalidParameterError("cut budget must be >= 1");
  SelectionResult result;
  result.punctured = puncture(snap, z_vertices, z_edges);
  const auto ds = candidate_constraints(result.punctured); // throws if empty

  result.all_candidates.resize(ds.size());
  const std::uint32_t jobs =
      std::max(1u, std::min<std::uint32_t>(opts.jobs,
                                           static_cast<std::uint32_t>(ds.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < ds.size(); ++i)
      result.all_candidates[i] = evaluate_candidate(
          c, ds[i], k_max, result.punctured.components, snap.noise);
  } else {
    std::vector<std::thread> workers;
    for (std::uint32_t w = 0; w < jobs; ++w)
      workers.emplace_back([&, w]() {
        for (std::size_t i = w; i < ds.size(); i += jobs)
          result.all_candidates[i] = evaluate_candidate(
              c, ds[i], k_max, result.punctured.components, snap.noise);
      });
    for (auto &t : workers)
      t.join();
  }

  // Deterministic reduce, independent of evaluation order.
  for (const auto &cand : result.all_candidates) {
    if (!cand.feasible)
      continue;
    if (!result.winner || candidate_better(cand, *result.winner))
      result.winner = cand;
  }
  return result;
}

ComparisonReport compare_with_baseline(const Circuit &c,
                                       const CalibrationSnapshot &snap,
                                       double z_vertices, double z_edges,
                                       std::uint32_t k_max,
                                       const SelectorOptions &opts) {
  ComparisonReport report;
  report.selection = select(c, snap, z_vertices, z_edges, k_max, opts);

  // Baseline: equal partitioning, no budget filter, placeable on the full
  // unpunctured map as well as on the punctured components.
  std::vector<Component> targets = report.selection.punctured.components;
  targets.push_back(component_from_map(snap.coupling));
  report.baseline =
      evaluate_candidate(c, equal_partition_constraint(c),
                         std::numeric_limits<std::uint32_t>::max(), targets,
                         snap.noise);
  report.selection.baseline = report.baseline;

  if (report.selection.winner && report.baseline.strategy) {
    const auto &w = *report.selection.winner;
    report.delta_cuts = static_cast<int>(report.baseline.strategy->num_cuts()) -
                        static_cast<int>(w.strategy->num_cuts());
    report.execution_ratio =
        static_cast<double>(report.baseline.overhead_report.canonical_executions) /
        static_cast<double>(w.overhead_report.canonical_executions);
    report.delta_ws = report.baseline.weighted_score - w.weighted_score;
  }
  return report;
}

} // namespace hic
