/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef HIC_SIM_HPP_
#define HIC_SIM_HPP_

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "hic/circuit.hpp"

namespace hic {

struct StateVector {
  std::uint32_t num_qubits = 0;
  std::vector<std::complex<double>> amps;

  static StateVector zero_state(std::uint32_t n);
  double norm() const;
};

/// Applies a unitary gate in place. Measure and Barrier are no-ops;
/// QpdMeasure is rejected (it needs the forking evaluator in qpd).
void apply_gate(StateVector &state, const Gate &g);

/// Projects `qubit` onto `outcome` (0/1), renormalizes, and returns the
/// pre-projection probability of that outcome.
double project_qubit(StateVector &state, std::uint32_t qubit, int outcome);

/// <psi| P |psi> for a sparse Pauli string.
double pauli_expectation(const StateVector &state,
                         const std::map<std::uint32_t, Pauli> &paulis);

/// Exact <psi|O|psi> by statevector evolution. Trailing Measure gates are
/// ignored. Throws on circuits wider than `qubit_cap`.
double exact_expectation(const Circuit &c, const Observable &obs,
                         std::uint32_t qubit_cap = 14);

struct NoisyExecConfig {
  std::uint64_t shots = 4096;
  std::uint64_t seed = 0;
  bool readout_flips = true;
  std::uint32_t jobs = 0; // 0 = single thread
};

struct NoisyEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// One estimator = a sign mask over the circuit's QpdMeasure occurrences (in
/// gate order) and a diagonal Pauli term evaluated on the final readout bits.
struct ShotEstimator {
  std::uint64_t sign_mask = 0;
  Observable::Term term;
};

/// Pauli-trajectory noisy execution over compact qubit indices. After gate i
/// a depolarizing Pauli error fires with probability gate_error[i] (uniform
/// over the 3 or 15 non-identity Paulis on its operands); the final bitstring
/// is sampled once per shot and flipped per-qubit with readout_error. All
/// estimators are evaluated on the same shots. Deterministic under cfg.seed
/// for any jobs value (per-shot RNG streams).
std::vector<NoisyEstimate>
noisy_estimates(const Circuit &c, const std::vector<double> &gate_error,
                const std::vector<double> &readout_error,
                const std::vector<ShotEstimator> &estimators,
                const NoisyExecConfig &cfg);

} // namespace hic

#endif
