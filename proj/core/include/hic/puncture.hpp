/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef HIC_PUNCTURE_HPP_
#define HIC_PUNCTURE_HPP_

#include <set>
#include <vector>

#include "hic/hardware.hpp"

namespace hic {

/// Maximal connected subgraph of the punctured map ("island of comparatively
/// low noise"). Sizes of these bound subcircuit widths.
struct Component {
  std::vector<QubitId> qubits; // sorted
  std::vector<EdgeId> edges;   // induced, sorted

  std::uint32_t size() const { return static_cast<std::uint32_t>(qubits.size()); }
};

struct PuncturedMap {
  std::set<QubitId> retained_qubits;
  std::set<EdgeId> retained_edges;
  std::set<QubitId> removed_qubits;
  std::set<EdgeId> removed_edges;
  std::vector<Component> components; // ordered by smallest member qubit
};

/// Z-score outlier keys: { k : (x_k - mean)/sigma > z } with sigma the
/// population standard deviation. sigma = 0 yields the empty set.
template <typename Key>
std::set<Key> zscore_outliers(const std::vector<std::pair<Key, double>> &values,
                              double z);

extern template std::set<QubitId>
zscore_outliers(const std::vector<std::pair<QubitId, double>> &, double);
extern template std::set<EdgeId>
zscore_outliers(const std::vector<std::pair<EdgeId, double>> &, double);

/// Removes Z-outlier qubits (with their incident edges) and Z-outlier edges,
/// then drops dangling edges and isolated qubits until stable, and extracts
/// connected components. The per-qubit noise figure is readout_error +
/// single_qubit_gate_error; the per-edge figure is the two-qubit gate error.
PuncturedMap puncture(const CalibrationSnapshot &snapshot, double z_vertices,
                      double z_edges);

/// Every integer in [smallest component size, largest component size].
/// Throws Error if the punctured map has no components.
std::vector<std::uint32_t> candidate_constraints(const PuncturedMap &p);

} // namespace hic

#endif
