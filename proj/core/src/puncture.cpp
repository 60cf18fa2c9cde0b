/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "hic/puncture.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

namespace hic {

template <typename Key>
std::set<Key> zscore_outliers(const std::vector<std::pair<Key, double>> &values,
                              double z) {
  if (values.empty())
    throw InvalidParameterError("zscore_outliers needs a nonempty value map");
  if (z <= 0.0)
    throw InvalidParameterError("z threshold must be > 0");
  double mean = 0.0;
  for (const auto &[k, x] : values)
    mean += x;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (const auto &[k, x] : values)
    var += (x - mean) * (x - mean);
  var /= static_cast<double>(values.size()); // population variance
  double sigma = std::sqrt(var);
  std::set<Key> outliers;
  if (sigma == 0.0)
    return outliers; // uniform profile: nothing to puncture
  for (const auto &[k, x] : values)
    if ((x - mean) / sigma > z)
      outliers.insert(k);
  return outliers;
}

template std::set<QubitId>
zscore_outliers(const std::vector<std::pair<QubitId, double>> &, double);
template std::set<EdgeId>
zscore_outliers(const std::vector<std::pair<EdgeId, double>> &, double);

namespace {

std::vector<Component> extract_components(const std::set<QubitId> &qubits,
                                          const std::set<EdgeId> &edges) {
  std::map<QubitId, QubitId> parent;
  for (QubitId q : qubits)
    parent[q] = q;
  std::function<QubitId(QubitId)> find = [&](QubitId q) {
    while (parent[q] != q) {
      parent[q] = parent[parent[q]];
      q = parent[q];
    }
    return q;
  };
  for (const auto &[a, b] : edges) {
    QubitId ra = find(a), rb = find(b);
    if (ra != rb)
      parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::map<QubitId, Component> by_root;
  for (QubitId q : qubits)
    by_root[find(q)].qubits.push_back(q);
  for (const auto &e : edges)
    by_root[find(e.first)].edges.push_back(e);
  std::vector<Component> components;
  for (auto &[root, comp] : by_root) {
    std::sort(comp.qubits.begin(), comp.qubits.end());
    std::sort(comp.edges.begin(), comp.edges.end());
    components.push_back(std::move(comp));
  }
  return components; // map order == ascending smallest member
}

} // namespace

PuncturedMap puncture(const CalibrationSnapshot &snapshot, double z_vertices,
                      double z_edges) {
  const auto &map = snapshot.coupling;
  const auto &noise = snapshot.noise;

  std::vector<std::pair<QubitId, double>> qubit_rates;
  for (QubitId q = 0; q < map.num_qubits; ++q)
    qubit_rates.emplace_back(q, noise.qubits[q].readout_error +
                                    noise.qubits[q].single_qubit_gate_error);
  std::vector<std::pair<EdgeId, double>> edge_rates;
  for (const auto &e : map.edges)
    edge_rates.emplace_back(e, noise.edge_error(e.first, e.second));

  auto bad_qubits = zscore_outliers(qubit_rates, z_vertices);
  auto bad_edges =
      map.edges.empty() ? std::set<EdgeId>{} : zscore_outliers(edge_rates, z_edges);

  PuncturedMap out;
  for (QubitId q = 0; q < map.num_qubits; ++q)
    (bad_qubits.count(q) ? out.removed_qubits : out.retained_qubits).insert(q);
  for (const auto &e : map.edges) {
    bool dead = bad_edges.count(e) || bad_qubits.count(e.first) ||
                bad_qubits.count(e.second);
    (dead ? out.removed_edges : out.retained_edges).insert(e);
  }

  // Dangling-edge / isolated-qubit cleanup. Removing a qubit kills its
  // incident edges, which can isolate further qubits, so iterate to fixpoint.
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<QubitId, std::uint32_t> degree;
    for (const auto &e : out.retained_edges) {
      ++degree[e.first];
      ++degree[e.second];
    }
    std::vector<QubitId> isolated;
    for (QubitId q : out.retained_qubits)
      if (degree[q] == 0 && map.num_qubits > 1)
        isolated.push_back(q);
    for (QubitId q : isolated) {
      out.retained_qubits.erase(q);
      out.removed_qubits.insert(q);
      changed = true;
    }
    std::vector<EdgeId> dangling;
    for (const auto &e : out.retained_edges)
      if (!out.retained_qubits.count(e.first) ||
          !out.retained_qubits.count(e.second))
        dangling.push_back(e);
    for (const auto &e : dangling) {
      out.retained_edges.erase(e);
      out.removed_edges.insert(e);
      changed = true;
    }
  }

  out.components = extract_components(out.retained_qubits, out.retained_edges);
  return out;
}

std::vector<std::uint32_t> candidate_constraints(const PuncturedMap &p) {
  if (p.components.empty())
    throw Error("punctured map has no components");
  std::uint32_t s_min = p.components.front().size();
  std::uint32_t s_max = s_min;
  for (const auto &c : p.components) {
    s_min = std::min(s_min, c.size());
    s_max = std::max(s_max, c.size());
  }
  std::vector<std::uint32_t> ds;
  for (std::uint32_t d = s_min; d <= s_max; ++d)
    ds.push_back(d);
  return ds;
}

} // namespace hic
