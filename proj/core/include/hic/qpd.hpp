/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef HIC_QPD_HPP_
#define HIC_QPD_HPP_

#include <map>
#include <tuple>
#include <vector>

#include "hic/cut_finder.hpp"
#include "hic/hardware.hpp"
#include "hic/layout.hpp"
#include "hic/sim.hpp"

namespace hic {

/// One quasi-probability term. For a gate cut, a_ops/b_ops act locally on the
/// first/second operand wire; for a wire cut, a_ops is the measure side
/// (upstream) and b_ops the prepare side (downstream fresh qubit). Ops use
/// qubit placeholder 0 and are remapped on insertion. A QpdMeasure op inside
/// a side yields a +/-1 outcome that multiplies the term iff the matching
/// sign flag is set.
struct QPDTerm {
  double coefficient = 0.0;
  std::vector<Gate> a_ops;
  std::vector<Gate> b_ops;
  bool a_sign = false;
  bool b_sign = false;
};

/// Six-term local decomposition of CX, CZ, or RZZ(theta). Sum|c| = 3 for the
/// maximally entangling cases; RZZ terms carry angle-dependent coefficients
/// (zero-coefficient terms are dropped, so RZZ(0) collapses to identity).
std::vector<QPDTerm> decompose_gate_cut(const Gate &g);

/// Eight-term measure-and-prepare identity-channel decomposition, Sum|c| = 4.
/// Measure side uses the three Pauli bases (the Z variant serves both the
/// trace and signed-Z terms); prepare side spans the six Pauli eigenstates.
std::vector<QPDTerm> decompose_wire_cut();

struct SubexperimentSet {
  CutStrategy strategy;
  Observable observable;
  // Deduplicated variant circuits per subcircuit.
  std::vector<std::vector<Circuit>> variants;
  // Fragment-local restriction of each observable Pauli string (coefficient
  // carried globally, not here).
  std::vector<std::vector<Observable::Term>> fragment_terms; // [sub][term]
  struct Combo {
    double coefficient = 1.0;                // product of term coefficients
    std::vector<std::uint32_t> variant;      // per subcircuit
    std::vector<std::uint64_t> sign_mask;    // per subcircuit, over QpdMeasures
  };
  std::vector<Combo> combos;
  std::uint64_t actual_subexperiments = 0; // sum of deduplicated variant counts
};

/// Full term-combination enumeration (no Monte-Carlo sampling); desk-scale
/// strategies have few cuts. Throws BudgetExceededError beyond `combo_cap`
/// combinations and Error("observable crossing") if a Pauli term cannot be
/// factorized across the partition.
SubexperimentSet generate_subexperiments(const CutStrategy &s,
                                         const Observable &obs,
                                         std::uint64_t combo_cap = 10'000'000);

/// Estimates are keyed by (subcircuit, variant, sign mask, observable term).
using EstimateKey =
    std::tuple<std::uint32_t, std::uint32_t, std::uint64_t, std::uint32_t>;
using ResultTable = std::map<EstimateKey, NoisyEstimate>;

struct ReconstructionResult {
  double expectation = 0.0;
  double std_error = 0.0;
  std::uint64_t shots_used = 0;
};

/// Recombines per-variant estimates into the observable expectation with
/// first-order error propagation. Throws MissingResultError naming the
/// variant if a referenced estimate is absent.
ReconstructionResult reconstruct(const SubexperimentSet &set,
                                 const ResultTable &results);

/// Exact per-variant expectations by statevector evolution, forking on every
/// QpdMeasure branch.
ResultTable run_exact(const SubexperimentSet &set, std::uint32_t qubit_cap = 14);

/// Shot-based noisy execution: each variant is routed onto the component
/// chosen for its subcircuit's placement and run through the Pauli-trajectory
/// backend. Requires a diagonal observable.
ResultTable run_noisy(const SubexperimentSet &set,
                      const std::vector<ScoredPlacement> &placements,
                      const std::vector<Component> &components,
                      const NoiseProfile &noise, const NoisyExecConfig &cfg);

/// generate -> run_exact -> reconstruct, as one call.
ReconstructionResult reconstruct_exact(const CutStrategy &s,
                                       const Observable &obs,
                                       std::uint32_t qubit_cap = 14);

} // namespace hic

#endif
