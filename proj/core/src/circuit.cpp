/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "hic/circuit.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace hic {

int gate_arity(GateKind kind) {
  switch (kind) {
  case GateKind::CX:
  case GateKind::CZ:
  case GateKind::RZZ:
  case GateKind::Swap:
    return 2;
  case GateKind::Barrier:
    return 0;
  default:
    return 1;
  }
}

int gate_param_count(GateKind kind) {
  switch (kind) {
  case GateKind::RZ:
  case GateKind::RX:
  case GateKind::RZZ:
    return 1;
  default:
    return 0;
  }
}

const std::string &gate_name(GateKind kind) {
  static const std::array<std::string, 17> names = {
      "h",  "x",  "y",   "z",    "s",       "sdg",     "t",          "tdg",
      "rz", "rx", "cx",  "cz",   "rzz",     "swap",    "measure",    "barrier",
      "qpd_measure"};
  return names[static_cast<std::size_t>(kind)];
}

void Circuit::add(GateKind kind, std::vector<std::uint32_t> qubits,
                  std::vector<double> params) {
  Gate g{kind, std::move(qubits), std::move(params)};
  const int arity = gate_arity(kind);
  if (arity != 0 && static_cast<int>(g.qubits.size()) != arity)
    throw InvalidParameterError("gate " + gate_name(kind) + " expects " +
                                std::to_string(arity) + " qubits");
  if (static_cast<int>(g.params.size()) != gate_param_count(kind))
    throw InvalidParameterError("gate " + gate_name(kind) + " expects " +
                                std::to_string(gate_param_count(kind)) +
                                " params");
  if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1])
    throw InvalidParameterError("gate " + gate_name(kind) +
                                " operands must be distinct");
  for (auto q : g.qubits)
    if (q >= num_qubits)
      throw InvalidParameterError("qubit " + std::to_string(q) +
                                  " out of range for n=" +
                                  std::to_string(num_qubits));
  gates.push_back(std::move(g));
}

std::size_t Circuit::two_qubit_gate_count() const {
  std::size_t count = 0;
  for (const auto &g : gates)
    if (g.is_two_qubit())
      ++count;
  return count;
}

void Circuit::validate() const {
  for (const auto &g : gates) {
    const int arity = gate_arity(g.kind);
    if (arity != 0 && static_cast<int>(g.qubits.size()) != arity)
      throw InvalidParameterError("arity mismatch on " + gate_name(g.kind));
    if (static_cast<int>(g.params.size()) != gate_param_count(g.kind))
      throw InvalidParameterError("param mismatch on " + gate_name(g.kind));
    if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1])
      throw InvalidParameterError("duplicate operand on " + gate_name(g.kind));
    for (auto q : g.qubits)
      if (q >= num_qubits)
        throw InvalidParameterError("qubit out of range");
  }
}

Observable Observable::uniform_z(std::uint32_t n) {
  Observable obs;
  if (n == 0)
    throw InvalidParameterError("observable needs n >= 1");
  for (std::uint32_t q = 0; q < n; ++q) {
    Term t;
    t.coefficient = 1.0 / static_cast<double>(n);
    t.paulis[q] = Pauli::Z;
    obs.terms.push_back(std::move(t));
  }
  return obs;
}

Observable Observable::pauli_string(std::map<std::uint32_t, Pauli> paulis) {
  Observable obs;
  Term t;
  t.paulis = std::move(paulis);
  obs.terms.push_back(std::move(t));
  return obs;
}

bool Observable::is_diagonal() const {
  for (const auto &t : terms)
    for (const auto &[q, p] : t.paulis)
      if (p != Pauli::Z)
        return false;
  return true;
}

std::uint32_t Observable::max_qubit() const {
  std::uint32_t m = 0;
  for (const auto &t : terms)
    for (const auto &[q, p] : t.paulis)
      m = std::max(m, q);
  return m;
}

std::uint32_t InteractionGraph::degree(std::uint32_t q) const {
  std::uint32_t d = 0;
  for (const auto &e : edges)
    if (e.a == q || e.b == q)
      ++d;
  return d;
}

std::uint64_t InteractionGraph::total_weight() const {
  std::uint64_t w = 0;
  for (const auto &e : edges)
    w += e.weight;
  return w;
}

InteractionGraph interaction_graph(const Circuit &c) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> counts;
  for (const auto &g : c.gates) {
    if (!g.is_two_qubit())
      continue;
    auto a = std::min(g.qubits[0], g.qubits[1]);
    auto b = std::max(g.qubits[0], g.qubits[1]);
    ++counts[{a, b}];
  }
  InteractionGraph ig;
  ig.num_qubits = c.num_qubits;
  for (const auto &[pair, w] : counts)
    ig.edges.push_back({pair.first, pair.second, w});
  return ig;
}

Circuit lower_to_native(const Circuit &c) {
  Circuit out(c.num_qubits, c.name);
  for (const auto &g : c.gates) {
    switch (g.kind) {
    case GateKind::RZZ:
      out.add(GateKind::CX, {g.qubits[0], g.qubits[1]});
      out.add(GateKind::RZ, {g.qubits[1]}, {g.params[0]});
      out.add(GateKind::CX, {g.qubits[0], g.qubits[1]});
      break;
    case GateKind::Swap:
      out.add(GateKind::CX, {g.qubits[0], g.qubits[1]});
      out.add(GateKind::CX, {g.qubits[1], g.qubits[0]});
      out.add(GateKind::CX, {g.qubits[0], g.qubits[1]});
      break;
    default:
      out.gates.push_back(g);
      break;
    }
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> wire_timelines(const Circuit &c) {
  std::vector<std::vector<std::uint32_t>> lines(c.num_qubits);
  for (std::uint32_t i = 0; i < c.gates.size(); ++i) {
    const auto &g = c.gates[i];
    if (g.kind == GateKind::Barrier)
      continue;
    for (auto q : g.qubits)
      lines[q].push_back(i);
  }
  return lines;
}

} // namespace hic
