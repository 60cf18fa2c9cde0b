/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "hic/hardware.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <random>
#include <sstream>

#include <json.hpp>

namespace hic {

using nlohmann::json;

bool CouplingMap::has_edge(QubitId a, QubitId b) const {
  return std::binary_search(edges.begin(), edges.end(), make_edge(a, b));
}

std::vector<std::vector<QubitId>> CouplingMap::adjacency() const {
  std::vector<std::vector<QubitId>> adj(num_qubits);
  for (const auto &[a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

bool CouplingMap::is_connected() const {
  if (num_qubits == 0)
    return false;
  auto adj = adjacency();
  std::vector<bool> seen(num_qubits, false);
  std::queue<QubitId> frontier;
  frontier.push(0);
  seen[0] = true;
  std::uint32_t visited = 0;
  while (!frontier.empty()) {
    QubitId q = frontier.front();
    frontier.pop();
    ++visited;
    for (QubitId nb : adj[q])
      if (!seen[nb]) {
        seen[nb] = true;
        frontier.push(nb);
      }
  }
  return visited == num_qubits;
}

void CouplingMap::add_edge(QubitId a, QubitId b) {
  if (a == b)
    throw InvalidParameterError("coupling map edges have no self-loops");
  edges.push_back(make_edge(a, b));
}

void CouplingMap::finalize() {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const auto &[a, b] : edges)
    if (b >= num_qubits)
      throw InvalidParameterError("edge endpoint out of range");
}

double NoiseProfile::edge_error(QubitId a, QubitId b) const {
  auto it = two_qubit_gate_error.find(make_edge(a, b));
  if (it == two_qubit_gate_error.end())
    throw SchemaError("no error rate for edge (" + std::to_string(a) + "," +
                      std::to_string(b) + ")");
  return it->second;
}

void CalibrationSnapshot::validate() const {
  if (noise.qubits.size() != coupling.num_qubits)
    throw SchemaError("noise profile covers " +
                      std::to_string(noise.qubits.size()) + " qubits, map has " +
                      std::to_string(coupling.num_qubits));
  auto in_range = [](double x) { return x >= 0.0 && x <= 1.0; };
  for (std::size_t q = 0; q < noise.qubits.size(); ++q) {
    if (!in_range(noise.qubits[q].readout_error) ||
        !in_range(noise.qubits[q].single_qubit_gate_error))
      throw SchemaError("rate out of range on qubit " + std::to_string(q));
  }
  for (const auto &e : coupling.edges) {
    auto it = noise.two_qubit_gate_error.find(e);
    if (it == noise.two_qubit_gate_error.end())
      throw SchemaError("edge (" + std::to_string(e.first) + "," +
                        std::to_string(e.second) + ") has no error rate");
    if (!in_range(it->second))
      throw SchemaError("rate out of range on edge (" +
                        std::to_string(e.first) + "," +
                        std::to_string(e.second) + ")");
  }
}

namespace {

const json &require_field(const json &obj, const char *field,
                          const std::string &context) {
  auto it = obj.find(field);
  if (it == obj.end())
    throw SchemaError("missing field '" + std::string(field) + "' in " +
                      context);
  return *it;
}

double require_rate(const json &obj, const char *field,
                    const std::string &context) {
  const json &v = require_field(obj, field, context);
  if (!v.is_number())
    throw SchemaError("field '" + std::string(field) + "' in " + context +
                      " is not a number");
  double rate = v.get<double>();
  if (rate < 0.0 || rate > 1.0)
    throw SchemaError("rate '" + std::string(field) + "' in " + context +
                      " out of range [0,1]: " + std::to_string(rate));
  return rate;
}

} // namespace

CalibrationSnapshot parse_calibration(const std::string &json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception &e) {
    throw SchemaError(std::string("calibration is not valid JSON: ") +
                      e.what());
  }
  if (!doc.is_object())
    throw SchemaError("calibration root must be an object");
  if (require_field(doc, "schema", "calibration").get<int>() != 1)
    throw SchemaError("unsupported calibration schema version");

  CalibrationSnapshot snap;
  snap.timestamp = doc.value("timestamp", "");
  const auto n = require_field(doc, "num_qubits", "calibration").get<std::int64_t>();
  if (n < 1)
    throw SchemaError("num_qubits must be >= 1");
  snap.coupling.num_qubits = static_cast<std::uint32_t>(n);
  snap.noise.qubits.resize(snap.coupling.num_qubits);

  const json &qubits = require_field(doc, "qubits", "calibration");
  if (!qubits.is_array())
    throw SchemaError("'qubits' must be an array");
  std::vector<bool> covered(snap.coupling.num_qubits, false);
  for (const auto &q : qubits) {
    auto id = require_field(q, "id", "qubit entry").get<std::int64_t>();
    if (id < 0 || id >= n)
      throw SchemaError("qubit id " + std::to_string(id) + " out of range");
    const std::string ctx = "qubit " + std::to_string(id);
    if (covered[static_cast<std::size_t>(id)])
      throw SchemaError("duplicate entry for " + ctx);
    covered[static_cast<std::size_t>(id)] = true;
    auto &entry = snap.noise.qubits[static_cast<std::size_t>(id)];
    entry.readout_error = require_rate(q, "readout_error", ctx);
    entry.single_qubit_gate_error = require_rate(q, "sx_error", ctx);
  }
  for (std::size_t q = 0; q < covered.size(); ++q)
    if (!covered[q])
      throw SchemaError("missing entry for qubit " + std::to_string(q));

  const json &edges = require_field(doc, "edges", "calibration");
  if (!edges.is_array())
    throw SchemaError("'edges' must be an array");
  for (const auto &e : edges) {
    auto q0 = require_field(e, "q0", "edge entry").get<std::int64_t>();
    auto q1 = require_field(e, "q1", "edge entry").get<std::int64_t>();
    const std::string ctx =
        "edge (" + std::to_string(q0) + "," + std::to_string(q1) + ")";
    if (q0 < 0 || q0 >= n || q1 < 0 || q1 >= n || q0 == q1)
      throw SchemaError(ctx + " is not a valid qubit pair");
    EdgeId edge = make_edge(static_cast<QubitId>(q0), static_cast<QubitId>(q1));
    if (snap.noise.two_qubit_gate_error.count(edge))
      throw SchemaError("duplicate " + ctx);
    snap.coupling.edges.push_back(edge);
    snap.noise.two_qubit_gate_error[edge] = require_rate(e, "cx_error", ctx);
  }
  snap.coupling.finalize();
  if (!snap.coupling.is_connected())
    throw SchemaError("coupling map is disconnected as loaded");
  snap.validate();
  return snap;
}

CalibrationSnapshot load_calibration(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open calibration file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_calibration(ss.str());
}

std::string calibration_to_json(const CalibrationSnapshot &snap) {
  json doc;
  doc["schema"] = 1;
  doc["timestamp"] = snap.timestamp;
  doc["num_qubits"] = snap.coupling.num_qubits;
  doc["qubits"] = json::array();
  for (std::uint32_t q = 0; q < snap.coupling.num_qubits; ++q) {
    doc["qubits"].push_back(
        {{"id", q},
         {"readout_error", snap.noise.qubits[q].readout_error},
         {"sx_error", snap.noise.qubits[q].single_qubit_gate_error}});
  }
  doc["edges"] = json::array();
  for (const auto &e : snap.coupling.edges) {
    doc["edges"].push_back({{"q0", e.first},
                            {"q1", e.second},
                            {"cx_error", snap.noise.edge_error(e.first, e.second)}});
  }
  return doc.dump(2);
}

void save_calibration(const CalibrationSnapshot &snap,
                      const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write calibration file: " + path);
  out << calibration_to_json(snap) << "\n";
}

namespace {

CouplingMap make_line(std::uint32_t n) {
  if (n < 2)
    throw InvalidParameterError("line topology needs >= 2 qubits");
  CouplingMap map;
  map.num_qubits = n;
  for (std::uint32_t q = 0; q + 1 < n; ++q)
    map.add_edge(q, q + 1);
  map.finalize();
  return map;
}

CouplingMap make_grid(std::uint32_t rows, std::uint32_t cols) {
  if (rows < 1 || cols < 1 || rows * cols < 2)
    throw InvalidParameterError("grid topology needs >= 2 qubits");
  CouplingMap map;
  map.num_qubits = rows * cols;
  auto id = [cols](std::uint32_t r, std::uint32_t c) { return r * cols + c; };
  for (std::uint32_t r = 0; r < rows; ++r)
    for (std::uint32_t c = 0; c < cols; ++c) {
      if (c + 1 < cols)
        map.add_edge(id(r, c), id(r, c + 1));
      if (r + 1 < rows)
        map.add_edge(id(r, c), id(r + 1, c));
    }
  map.finalize();
  return map;
}

// Ladder of 12-qubit hexagonal cells sharing 3-qubit rails, with pendant
// qubits on the side corners of every cell plus one on the first cell's
// top-left corner and one on the last cell's bottom-right corner. cells=2
// gives the 27-qubit / 28-edge pattern.
CouplingMap make_heavy_hex(std::uint32_t cells) {
  if (cells < 1)
    throw InvalidParameterError("heavy_hex topology needs >= 1 cell");
  CouplingMap map;
  std::uint32_t next = 0;
  auto fresh = [&next]() { return next++; };

  std::uint32_t p0 = fresh();
  std::uint32_t tl = fresh(), tm = fresh(), tr = fresh();
  map.add_edge(p0, tl);
  map.add_edge(tl, tm);
  map.add_edge(tm, tr);

  for (std::uint32_t cell = 0; cell < cells; ++cell) {
    std::uint32_t lu = fresh(), ru = fresh();
    std::uint32_t lc = fresh(), rc = fresh();
    std::uint32_t pl = fresh(), pr = fresh();
    std::uint32_t ll = fresh(), rl = fresh();
    std::uint32_t bl = fresh(), bm = fresh(), br = fresh();
    map.add_edge(tl, lu);
    map.add_edge(lu, lc);
    map.add_edge(tr, ru);
    map.add_edge(ru, rc);
    map.add_edge(pl, lc);
    map.add_edge(pr, rc);
    map.add_edge(lc, ll);
    map.add_edge(ll, bl);
    map.add_edge(rc, rl);
    map.add_edge(rl, br);
    map.add_edge(bl, bm);
    map.add_edge(bm, br);
    tl = bl;
    tm = bm;
    tr = br;
  }
  std::uint32_t pend = fresh();
  map.add_edge(pend, tr);

  map.num_qubits = next;
  map.finalize();
  return map;
}

} // namespace

CouplingMap make_topology(const TopologyParams &params) {
  switch (params.kind) {
  case TopologyKind::Line:
    return make_line(params.size);
  case TopologyKind::Grid:
    return make_grid(params.rows, params.cols);
  case TopologyKind::HeavyHex:
    return make_heavy_hex(params.size);
  }
  throw InvalidParameterError("unknown topology kind");
}

CalibrationSnapshot gen_topology(const TopologyParams &params,
                                 std::uint64_t seed, const NoiseLaw &law) {
  if (law.mean_qubit_error <= 0.0 || law.mean_edge_error <= 0.0 ||
      law.readout_scale <= 0.0)
    throw InvalidParameterError("noise law means must be positive");
  if (law.spread < 0.0)
    throw InvalidParameterError("noise law spread must be >= 0");
  if (law.outlier_fraction < 0.0 || law.outlier_fraction >= 1.0)
    throw InvalidParameterError("outlier_fraction must be in [0,1)");
  if (law.outlier_multiplier <= 0.0)
    throw InvalidParameterError("outlier_multiplier must be positive");

  CalibrationSnapshot snap;
  snap.coupling = make_topology(params);
  snap.noise.qubits.resize(snap.coupling.num_qubits);
  snap.timestamp = "synthetic-seed-" + std::to_string(seed);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  auto clip01 = [](double x) { return std::min(1.0, std::max(0.0, x)); };
  auto draw = [&](double mean) {
    return mean * std::exp(law.spread * normal(rng));
  };

  for (auto &q : snap.noise.qubits) {
    double sx = draw(law.mean_qubit_error);
    double ro = draw(law.readout_scale * law.mean_qubit_error);
    bool outlier = uniform(rng) < law.outlier_fraction;
    if (outlier) {
      sx *= law.outlier_multiplier;
      ro *= law.outlier_multiplier;
    }
    q.single_qubit_gate_error = clip01(sx);
    q.readout_error = clip01(ro);
  }
  for (const auto &e : snap.coupling.edges) {
    double cx = draw(law.mean_edge_error);
    if (uniform(rng) < law.outlier_fraction)
      cx *= law.outlier_multiplier;
    snap.noise.two_qubit_gate_error[e] = clip01(cx);
  }
  snap.validate();
  return snap;
}

} // namespace hic
