/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef HIC_HARDWARE_HPP_
#define HIC_HARDWARE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hic/errors.hpp"

namespace hic {

using QubitId = std::uint32_t;
using EdgeId = std::pair<QubitId, QubitId>; // normalized: first < second

inline EdgeId make_edge(QubitId a, QubitId b) {
  return a < b ? EdgeId{a, b} : EdgeId{b, a};
}

/// Physical-qubit connectivity graph. Edges are unordered and stored
/// normalized; a pristine device map is a single connected component.
struct CouplingMap {
  std::uint32_t num_qubits = 0;
  std::vector<EdgeId> edges; // sorted, unique

  bool has_edge(QubitId a, QubitId b) const;
  std::vector<std::vector<QubitId>> adjacency() const;
  bool is_connected() const;
  void add_edge(QubitId a, QubitId b);
  void finalize(); // sort + dedupe + validate
};

struct NoiseProfile {
  struct QubitNoise {
    double readout_error = 0.0;
    double single_qubit_gate_error = 0.0;
  };
  std::vector<QubitNoise> qubits;           // indexed by physical qubit
  std::map<EdgeId, double> two_qubit_gate_error;

  double edge_error(QubitId a, QubitId b) const;
};

struct CalibrationSnapshot {
  CouplingMap coupling;
  NoiseProfile noise;
  std::string timestamp;

  /// Throws SchemaError if qubit/edge coverage or rate ranges are violated.
  void validate() const;
};

/// Reads the versioned calibration JSON schema (see README). Throws
/// SchemaError naming the missing or invalid field, or on rates outside
/// [0,1], or if the loaded map is disconnected.
CalibrationSnapshot load_calibration(const std::string &path);
CalibrationSnapshot parse_calibration(const std::string &json_text);
std::string calibration_to_json(const CalibrationSnapshot &snap);
void save_calibration(const CalibrationSnapshot &snap, const std::string &path);

enum class TopologyKind { Line, Grid, HeavyHex };

struct TopologyParams {
  TopologyKind kind = TopologyKind::Line;
  std::uint32_t size = 0;  // Line: qubit count; HeavyHex: unit cells
  std::uint32_t rows = 0;  // Grid only
  std::uint32_t cols = 0;  // Grid only
};

/// Log-normal spread around the means with a Bernoulli outlier layer:
/// designated outliers get rate = base * outlier_multiplier, clipped to [0,1].
struct NoiseLaw {
  double mean_qubit_error = 1e-3;   // single-qubit gate error mean
  double mean_edge_error = 8e-3;    // two-qubit gate error mean
  double readout_scale = 10.0;      // readout mean = scale * mean_qubit_error
  double spread = 0.25;             // sigma of ln(rate); 0 => uniform rates
  double outlier_fraction = 0.0;    // in [0,1)
  double outlier_multiplier = 10.0;
};

/// Builds the coupling graph for `params` and draws a noise profile from
/// `law`. Pure function of (params, seed, law).
CalibrationSnapshot gen_topology(const TopologyParams &params,
                                 std::uint64_t seed, const NoiseLaw &law);

/// The bare coupling graph for a topology (no noise).
CouplingMap make_topology(const TopologyParams &params);

} // namespace hic

#endif
