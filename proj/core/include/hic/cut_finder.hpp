/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef HIC_CUT_FINDER_HPP_
#define HIC_CUT_FINDER_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "hic/circuit.hpp"

namespace hic {

/// One cut action on the native (lowered) circuit. Gate cuts target a single
/// native two-qubit gate; wire cuts sever a qubit wire strictly between two
/// gates acting on it, identified by the preceding gate index.
struct CutAction {
  enum class Kind { GateCut, WireCut };
  Kind kind = Kind::GateCut;
  std::uint32_t gate_index = 0; // GateCut: which two-qubit gate
  std::uint32_t qubit = 0;      // WireCut: which wire
  std::uint32_t after_gate = 0; // WireCut: cut lies after this gate

  friend bool operator==(const CutAction &x, const CutAction &y) {
    return x.kind == y.kind && x.gate_index == y.gate_index &&
           x.qubit == y.qubit && x.after_gate == y.after_gate;
  }
  friend bool operator<(const CutAction &x, const CutAction &y) {
    auto key = [](const CutAction &a) {
      return std::tuple(static_cast<int>(a.kind), a.gate_index, a.qubit,
                        a.after_gate);
    };
    return key(x) < key(y);
  }
};

/// One wire segment of an original qubit, as mapped into a subcircuit.
struct WireSegment {
  std::uint32_t wire = 0;           // original qubit
  std::uint32_t index = 0;          // 0-based piece number along the wire
  std::uint32_t fragment_qubit = 0; // index inside the owning fragment
  bool fresh = false;               // downstream of a wire cut
};

/// Where a cut touches a subcircuit, in fragment coordinates. `position` is
/// the gate-list index at which QPD term ops are spliced in.
struct IncidentCut {
  enum class Side { Left, Right, Upstream, Downstream };
  std::uint32_t action_index = 0;
  Side side = Side::Left;
  std::uint32_t fragment_qubit = 0;
  std::uint32_t position = 0;
};

struct Subcircuit {
  Circuit fragment;                    // uncut gates, remapped
  std::uint32_t width = 0;             // number of wire segments
  std::vector<WireSegment> segments;   // sorted by (wire, index)
  std::vector<IncidentCut> incident_cuts;
};

struct OverheadReport {
  double gamma = 1.0;                        // 3^g * 4^w
  std::uint64_t canonical_executions = 1;    // 9^g * 16^w, saturating
  std::uint64_t actual_subexperiments = 0;   // deduplicated; 0 until generated
};

struct CutStrategy {
  Circuit circuit; // native-basis circuit the actions refer to
  std::uint32_t device_constraint = 0;
  std::vector<CutAction> actions; // canonically sorted
  std::uint32_t num_gate_cuts = 0;
  std::uint32_t num_wire_cuts = 0;
  std::vector<Subcircuit> subcircuits;
  // wire -> (subcircuit index, fragment qubit) of the wire's final segment;
  // this is where end-of-circuit observables land.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> final_wire_location;

  std::uint32_t num_cuts() const { return num_gate_cuts + num_wire_cuts; }
  std::uint32_t max_width() const;
};

OverheadReport overhead(const CutStrategy &s);

/// Replays actions on the native circuit: splits wires at wire cuts, drops
/// gate-cut gates, and groups the resulting wire segments into connected
/// subcircuits. Validates every action. This is the single source of truth
/// for cut semantics; both search paths and all tests go through it.
CutStrategy apply_cuts(const Circuit &native, std::vector<CutAction> actions,
                       std::uint32_t device_constraint);

/// Best-first search for a cut set with all subcircuit widths <= d and
/// heuristically minimal 9^g*16^w. The input circuit is lowered to the
/// native basis first. Returns nullopt when the cheapest strategy found
/// exceeds k_max cuts (the budget is a post-filter, not a search prune).
/// Deterministic for fixed inputs.
std::optional<CutStrategy> find_cuts(const Circuit &c, std::uint32_t d,
                                     std::uint32_t k_max);

/// Exhaustive oracle: enumerates action sets in ascending 9^g*16^w order
/// (ties: fewer actions, then lexicographic) and returns the first valid
/// strategy, which is therefore provably minimal. Intended for small
/// circuits. Throws BudgetExceededError once more than `enumeration_cap`
/// candidate sets have been examined.
std::optional<CutStrategy>
oracle_min_cuts(const Circuit &c, std::uint32_t d, std::uint32_t max_actions,
                std::uint64_t enumeration_cap = 50'000'000);

/// The naive equal-partition device constraint ceil(n/2).
std::uint32_t equal_partition_constraint(const Circuit &c);

} // namespace hic

#endif
