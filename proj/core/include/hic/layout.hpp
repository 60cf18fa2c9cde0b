/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef HIC_LAYOUT_HPP_
#define HIC_LAYOUT_HPP_

#include <optional>
#include <vector>

#include "hic/cut_finder.hpp"
#include "hic/hardware.hpp"
#include "hic/puncture.hpp"

namespace hic {

struct Layout {
  std::vector<QubitId> initial_mapping; // fragment qubit -> physical qubit
  std::vector<QubitId> final_mapping;   // after routing SWAPs
  std::uint32_t component_id = 0;
  Circuit routed; // physical indices, SWAPs decomposed to native CX
};

struct ScoredPlacement {
  Layout layout;
  double score = 0.0;       // in [0,1], lower is better
  std::uint32_t width = 0;  // subcircuit width n_i
};

/// Fidelity-product layout score on a routed circuit:
///   1 - prod_2q (1-eps_edge) * prod_1q (1-eps_1q) * prod_meas (1-eps_readout)
/// Empty circuits score 0. Throws UnmappedOpError when a gate touches a qubit
/// or edge absent from the noise profile.
double layout_score(const Circuit &routed, const Layout &layout,
                    const NoiseProfile &noise);

/// Anchor-BFS placement over all anchor vertices of the component plus greedy
/// shortest-path SWAP routing (each SWAP = 3 native two-qubit ops), keeping
/// the best-scoring anchor. Returns nullopt when the subcircuit is wider than
/// the component. Deterministic.
std::optional<ScoredPlacement> place_and_route(const Subcircuit &sub,
                                               const Component &comp,
                                               const NoiseProfile &noise);

/// Whole coupling map viewed as one component (baseline placement target).
Component component_from_map(const CouplingMap &map);

/// W_s = (1/n) * sum_i n_i * s_i.
double weighted_score(const std::vector<ScoredPlacement> &placements,
                      std::uint32_t n);

struct ObjectiveInputs {
  std::vector<ScoredPlacement> placements;
  std::uint32_t total_qubits = 0;
  double alpha = 1.0;
};

struct ObjectiveTerms {
  double norm1 = 0.0; // (1/n) sum n_i s_i
  double norm2 = 0.0; // (1/S) sum ((1/n) sum n_j s_j - n_i s_i)^2
};

ObjectiveTerms objective_terms(const std::vector<ScoredPlacement> &placements,
                               std::uint32_t n);

/// W = alpha * norm1 + (1 - alpha) * norm2, implemented verbatim.
double full_objective(const ObjectiveInputs &inp);

/// Pearson correlation coefficient over (norm1, norm2) samples. Throws on
/// fewer than two samples or degenerate variance in either coordinate.
double norm_correlation(const std::vector<std::pair<double, double>> &samples);

} // namespace hic

#endif
