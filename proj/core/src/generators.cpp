/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "hic/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace hic {

Circuit gen_ising_1d(std::uint32_t n, std::uint32_t steps, double theta_zz,
                     double theta_x) {
  if (n < 2)
    throw InvalidParameterError("gen_ising_1d needs n >= 2");
  if (steps < 1)
    throw InvalidParameterError("gen_ising_1d needs steps >= 1");
  Circuit c(n, "ising_1d_n" + std::to_string(n) + "_s" + std::to_string(steps));
  for (std::uint32_t s = 0; s < steps; ++s) {
    for (std::uint32_t q = 0; q + 1 < n; ++q)
      c.add(GateKind::RZZ, {q, q + 1}, {theta_zz});
    for (std::uint32_t q = 0; q < n; ++q)
      c.add(GateKind::RX, {q}, {theta_x});
  }
  return c;
}

Circuit gen_random_clifford(std::uint32_t n, std::uint32_t depth,
                            std::uint64_t seed) {
  if (n < 2)
    throw InvalidParameterError("gen_random_clifford needs n >= 2");
  if (depth < 1)
    throw InvalidParameterError("gen_random_clifford needs depth >= 1");
  static const GateKind singles[] = {GateKind::H, GateKind::X,  GateKind::Y,
                                     GateKind::Z, GateKind::S,  GateKind::Sdg};
  std::mt19937_64 rng(seed);
  Circuit c(n, "random_clifford_n" + std::to_string(n) + "_d" +
                   std::to_string(depth) + "_seed" + std::to_string(seed));
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  for (std::uint32_t layer = 0; layer < depth; ++layer) {
    for (std::uint32_t q = 0; q < n; ++q) {
      auto pick = std::uniform_int_distribution<int>(0, 5)(rng);
      c.add(singles[pick], {q});
    }
    std::shuffle(order.begin(), order.end(), rng);
    for (std::uint32_t i = 0; i + 1 < n; i += 2)
      c.add(GateKind::CX, {order[i], order[i + 1]});
  }
  return c;
}

Circuit gen_qaoa_mirrored(
    std::uint32_t n,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> &edges,
    double gamma, double beta) {
  if (n < 2)
    throw InvalidParameterError("gen_qaoa_mirrored needs n >= 2");
  for (const auto &[a, b] : edges)
    if (a >= n || b >= n || a == b)
      throw InvalidParameterError("invalid QAOA edge");
  Circuit c(n, "qaoa_mirrored_n" + std::to_string(n));
  for (std::uint32_t q = 0; q < n; ++q)
    c.add(GateKind::H, {q});
  for (const auto &[a, b] : edges)
    c.add(GateKind::RZZ, {a, b}, {2.0 * gamma});
  for (std::uint32_t q = 0; q < n; ++q)
    c.add(GateKind::RX, {q}, {2.0 * beta});
  // Inverse in reverse order.
  for (std::uint32_t q = 0; q < n; ++q)
    c.add(GateKind::RX, {n - 1 - q}, {-2.0 * beta});
  for (auto it = edges.rbegin(); it != edges.rend(); ++it)
    c.add(GateKind::RZZ, {it->first, it->second}, {-2.0 * gamma});
  for (std::uint32_t q = 0; q < n; ++q)
    c.add(GateKind::H, {n - 1 - q});
  return c;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>>
ring_edges(std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t q = 0; q < n; ++q)
    edges.emplace_back(q, (q + 1) % n);
  return edges;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>>
path_edges(std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t q = 0; q + 1 < n; ++q)
    edges.emplace_back(q, q + 1);
  return edges;
}

} // namespace hic
