/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef HIC_GENERATORS_HPP_
#define HIC_GENERATORS_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "hic/circuit.hpp"

namespace hic {

/// 1D transverse-field Ising Trotter circuit: per step, RZZ(theta_zz) on each
/// nearest-neighbor pair (0,1)..(n-2,n-1) followed by RX(theta_x) on every
/// qubit. n >= 2, steps >= 1.
Circuit gen_ising_1d(std::uint32_t n, std::uint32_t steps, double theta_zz,
                     double theta_x);

/// Random-Clifford layers: each layer applies an independent uniform draw
/// from {H,X,Y,Z,S,Sdg} to every qubit followed by CX gates on a random
/// perfect matching of the qubits. The seed fully determines the circuit.
Circuit gen_random_clifford(std::uint32_t n, std::uint32_t depth,
                            std::uint64_t seed);

/// One QAOA layer (H on all, RZZ(2*gamma) per problem edge, RX(2*beta) on
/// all) followed by its exact inverse, so the ideal state returns to |0...0>
/// and <(1/n) sum Z_i> = 1 noiselessly.
Circuit gen_qaoa_mirrored(std::uint32_t n,
                          const std::vector<std::pair<std::uint32_t, std::uint32_t>> &edges,
                          double gamma, double beta);

/// Ring edges (0,1),(1,2),...,(n-1,0); the default QAOA problem graph.
std::vector<std::pair<std::uint32_t, std::uint32_t>> ring_edges(std::uint32_t n);

/// Path edges (0,1),(1,2),...,(n-2,n-1).
std::vector<std::pair<std::uint32_t, std::uint32_t>> path_edges(std::uint32_t n);

} // namespace hic

#endif
