/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef HIC_SELECTOR_HPP_
#define HIC_SELECTOR_HPP_

#include <optional>
#include <string>
#include <vector>

#include "hic/layout.hpp"
#include "hic/puncture.hpp"

namespace hic {

struct CandidateEvaluation {
  std::uint32_t device_constraint = 0;
  std::optional<CutStrategy> strategy;
  std::vector<ScoredPlacement> placements; // one per subcircuit when feasible
  double weighted_score = 0.0;             // W_s
  double norm1 = 0.0;
  double norm2 = 0.0;
  OverheadReport overhead_report;
  bool feasible = false;
  std::string infeasible_reason;
};

struct SelectionResult {
  std::optional<CandidateEvaluation> winner;
  std::vector<CandidateEvaluation> all_candidates; // one per d in [s_min,s_max]
  std::optional<CandidateEvaluation> baseline;     // equal partition, if evaluated
  PuncturedMap punctured;
};

struct SelectorOptions {
  std::uint32_t jobs = 1; // parallel candidate evaluations
};

/// Punctures the map, sweeps every integer d in [s_min, s_max], evaluates
/// each candidate (find_cuts, budget filter, best placement per subcircuit
/// over all components, W_s), and picks the argmin-W_s feasible candidate
/// with deterministic tie-breaking (canonical executions, then d).
/// Propagates the no-components error from an over-punctured map.
SelectionResult select(const Circuit &c, const CalibrationSnapshot &snap,
                       double z_vertices, double z_edges, std::uint32_t k_max,
                       const SelectorOptions &opts = {});

struct ComparisonReport {
  SelectionResult selection;
  CandidateEvaluation baseline; // equal-partition constraint, unbudgeted
  int delta_cuts = 0;           // baseline cuts - winner cuts
  double execution_ratio = 0.0; // baseline executions / winner executions
  double delta_ws = 0.0;        // baseline W_s - winner W_s
};

/// Evaluates the equal-partition constraint as a forced candidate, placed on
/// the full unpunctured map as well as on the components, and reports the
/// overhead/quality deltas against the HIC winner.
ComparisonReport compare_with_baseline(const Circuit &c,
                                       const CalibrationSnapshot &snap,
                                       double z_vertices, double z_edges,
                                       std::uint32_t k_max,
                                       const SelectorOptions &opts = {});

} // namespace hic

#endif
