/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef HIC_CIRCUIT_HPP_
#define HIC_CIRCUIT_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hic/errors.hpp"

namespace hic {

enum class GateKind {
  H,
  X,
  Y,
  Z,
  S,
  Sdg,
  T,
  Tdg,
  RZ,
  RX,
  CX,
  CZ,
  RZZ,
  Swap,
  Measure,
  Barrier,
  // Mid-circuit Z-basis measurement introduced by QPD terms. The measured bit
  // is reconstruction bookkeeping, not part of the observable. Never produced
  // by the parser and never emitted as QASM.
  QpdMeasure,
};

/// Number of qubit operands for a gate kind (Barrier is variadic, returns 0).
int gate_arity(GateKind kind);
/// Number of real parameters carried by a gate kind.
int gate_param_count(GateKind kind);
/// Lowercase mnemonic, matching the QASM subset where applicable.
const std::string &gate_name(GateKind kind);

struct Gate {
  GateKind kind;
  std::vector<std::uint32_t> qubits;
  std::vector<double> params;

  bool is_two_qubit() const {
    return kind == GateKind::CX || kind == GateKind::CZ ||
           kind == GateKind::RZZ || kind == GateKind::Swap;
  }
};

/// Ordered gate list over logical qubits. Immutable by convention once built:
/// nothing in the pipeline mutates a circuit it did not create.
struct Circuit {
  std::uint32_t num_qubits = 0;
  std::vector<Gate> gates;
  std::string name;

  Circuit() = default;
  Circuit(std::uint32_t n, std::string label = "")
      : num_qubits(n), name(std::move(label)) {}

  void add(GateKind kind, std::vector<std::uint32_t> qubits,
           std::vector<double> params = {});

  std::size_t two_qubit_gate_count() const;

  /// Throws if any gate violates arity/params/operand-range invariants.
  void validate() const;
};

enum class Pauli { X, Y, Z };

/// Weighted sum of Pauli strings; strings are sparse maps qubit -> Pauli.
struct Observable {
  struct Term {
    double coefficient = 1.0;
    std::map<std::uint32_t, Pauli> paulis;
  };
  std::vector<Term> terms;

  /// The default observable (1/n) * sum_i Z_i.
  static Observable uniform_z(std::uint32_t n);
  /// Single Pauli string with coefficient 1.
  static Observable pauli_string(std::map<std::uint32_t, Pauli> paulis);

  bool is_diagonal() const;
  std::uint32_t max_qubit() const;
};

/// Two-qubit interaction multigraph: one edge per unordered qubit pair with at
/// least one two-qubit gate between them, weighted by the gate count.
struct InteractionGraph {
  struct Edge {
    std::uint32_t a, b;
    std::uint32_t weight;
  };
  std::uint32_t num_qubits = 0;
  std::vector<Edge> edges; // sorted by (a, b), a < b

  std::uint32_t degree(std::uint32_t q) const;
  std::uint64_t total_weight() const;
};

InteractionGraph interaction_graph(const Circuit &c);

/// Rewrites to the hardware-native set {1q ops, CX, CZ, Measure, Barrier}:
/// RZZ(t) a,b -> CX a,b; RZ(t) b; CX a,b and SWAP a,b -> 3 CX. The cut finder,
/// router and QPD generator all operate on this view.
Circuit lower_to_native(const Circuit &c);

/// Indices of gates acting on each wire, in circuit order (all kinds,
/// barriers excluded).
std::vector<std::vector<std::uint32_t>> wire_timelines(const Circuit &c);

} // namespace hic

#endif
