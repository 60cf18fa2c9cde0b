/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef HIC_QASM_HPP_
#define HIC_QASM_HPP_

#include <string>

#include "hic/circuit.hpp"

namespace hic {

/// Parses the OpenQASM-2 subset documented in the README: a single qreg, an
/// optional creg, the gate set {h,x,y,z,s,sdg,t,tdg,rz,rx,cx,cz,rzz,swap},
/// measure, barrier, `//` comments, and literal arithmetic angle expressions
/// over +,-,*,/,(),pi. Gate definitions, classical control and OpenQASM 3 are
/// out of scope.
///
/// Throws ParseError (with line/column), UnsupportedGateError, or
/// InvalidParameterError for out-of-range qubit indices.
Circuit parse_qasm(const std::string &text);

Circuit parse_qasm_file(const std::string &path);

/// Emits the circuit back as QASM-subset text; parse_qasm(emit_qasm(c)) is
/// gate-identical to c. Rejects circuits containing QpdMeasure.
std::string emit_qasm(const Circuit &c);

void write_qasm_file(const Circuit &c, const std::string &path);

} // namespace hic

#endif
