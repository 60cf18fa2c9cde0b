/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef HIC_ERRORS_HPP_
#define HIC_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hic {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised by the QASM parser; carries 1-based source position.
class ParseError : public Error {
public:
  ParseError(const std::string &msg, std::size_t line, std::size_t column)
      : Error("parse error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + msg),
        line(line), column(column) {}
  std::size_t line;
  std::size_t column;
};

class UnsupportedGateError : public Error {
public:
  explicit UnsupportedGateError(const std::string &gate_name,
                                const std::string &context = "")
      : Error("unsupported gate '" + gate_name + "'" +
              (context.empty() ? "" : " (" + context + ")")),
        gate(gate_name) {}
  std::string gate;
};

class InvalidParameterError : public Error {
public:
  using Error::Error;
};

/// Calibration / report files that do not match the documented schema.
class SchemaError : public Error {
public:
  using Error::Error;
};

class UnmappedOpError : public Error {
public:
  using Error::Error;
};

class BudgetExceededError : public Error {
public:
  using Error::Error;
};

class MissingResultError : public Error {
public:
  using Error::Error;
};

} // namespace hic

#endif
