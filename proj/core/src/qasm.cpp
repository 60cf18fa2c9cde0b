/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "hic/qasm.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace hic {

namespace {

struct Token {
  enum class Kind {
    Ident,
    Number,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semicolon,
    Arrow,
    Plus,
    Minus,
    Star,
    Slash,
    String,
    End,
  };
  Kind kind;
  std::string text;
  double value = 0.0;
  std::size_t line = 1, col = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string &src) : src_(src) {}

  Token next() {
    skip_ws_and_comments();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) {
      t.kind = Token::Kind::End;
      return t;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        t.text += advance();
      t.kind = Token::Kind::Ident;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E' ||
              ((src_[pos_] == '+' || src_[pos_] == '-') && !t.text.empty() &&
               (t.text.back() == 'e' || t.text.back() == 'E'))))
        t.text += advance();
      t.kind = Token::Kind::Number;
      try {
        t.value = std::stod(t.text);
      } catch (const std::exception &) {
        throw ParseError("bad numeric literal '" + t.text + "'", t.line,
                         t.col);
      }
      return t;
    }
    if (c == '"') {
      advance();
      while (pos_ < src_.size() && src_[pos_] != '"')
        t.text += advance();
      if (pos_ >= src_.size())
        throw ParseError("unterminated string", t.line, t.col);
      advance();
      t.kind = Token::Kind::String;
      return t;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      advance();
      advance();
      t.kind = Token::Kind::Arrow;
      return t;
    }
    advance();
    switch (c) {
    case '(': t.kind = Token::Kind::LParen; return t;
    case ')': t.kind = Token::Kind::RParen; return t;
    case '[': t.kind = Token::Kind::LBracket; return t;
    case ']': t.kind = Token::Kind::RBracket; return t;
    case ',': t.kind = Token::Kind::Comma; return t;
    case ';': t.kind = Token::Kind::Semicolon; return t;
    case '+': t.kind = Token::Kind::Plus; return t;
    case '-': t.kind = Token::Kind::Minus; return t;
    case '*': t.kind = Token::Kind::Star; return t;
    case '/': t.kind = Token::Kind::Slash; return t;
    default:
      throw ParseError(std::string("unexpected character '") + c + "'", t.line,
                       t.col);
    }
  }

private:
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_ws_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n')
          advance();
      } else {
        break;
      }
    }
  }

  const std::string &src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1, col_ = 1;
};

class Parser {
public:
  explicit Parser(const std::string &src) : lexer_(src) { consume(); }

  Circuit run() {
    // Optional version header.
    if (cur_.kind == Token::Kind::Ident && cur_.text == "OPENQASM") {
      consume();
      expect(Token::Kind::Number, "version number");
      expect(Token::Kind::Semicolon, "';'");
    }
    while (cur_.kind == Token::Kind::Ident && cur_.text == "include") {
      consume();
      expect(Token::Kind::String, "include path");
      expect(Token::Kind::Semicolon, "';'");
    }
    while (cur_.kind != Token::Kind::End)
      statement();
    if (!saw_qreg_)
      throw ParseError("program declares no qreg", cur_.line, cur_.col);
    return std::move(circuit_);
  }

private:
  static const std::unordered_map<std::string, GateKind> &gate_table() {
    static const std::unordered_map<std::string, GateKind> table = {
        {"h", GateKind::H},     {"x", GateKind::X},     {"y", GateKind::Y},
        {"z", GateKind::Z},     {"s", GateKind::S},     {"sdg", GateKind::Sdg},
        {"t", GateKind::T},     {"tdg", GateKind::Tdg}, {"rz", GateKind::RZ},
        {"rx", GateKind::RX},   {"cx", GateKind::CX},   {"cz", GateKind::CZ},
        {"rzz", GateKind::RZZ}, {"swap", GateKind::Swap}};
    return table;
  }

  void statement() {
    Token head = cur_;
    if (head.kind != Token::Kind::Ident)
      throw ParseError("expected statement", head.line, head.col);
    consume();
    if (head.text == "qreg") {
      if (saw_qreg_)
        throw ParseError("only a single qreg is supported", head.line,
                         head.col);
      auto [name, size] = reg_decl();
      qreg_name_ = name;
      circuit_.num_qubits = size;
      saw_qreg_ = true;
      return;
    }
    if (head.text == "creg") {
      auto [name, size] = reg_decl();
      creg_name_ = name;
      creg_size_ = size;
      return;
    }
    if (!saw_qreg_)
      throw ParseError("statement before qreg declaration", head.line,
                       head.col);
    if (head.text == "measure") {
      std::uint32_t q = qubit_ref(head);
      expect(Token::Kind::Arrow, "'->'");
      Token creg = expect(Token::Kind::Ident, "creg name");
      if (creg.text != creg_name_)
        throw ParseError("unknown creg '" + creg.text + "'", creg.line,
                         creg.col);
      expect(Token::Kind::LBracket, "'['");
      Token idx = expect(Token::Kind::Number, "bit index");
      if (idx.value < 0 || idx.value >= creg_size_)
        throw ParseError("classical bit out of range", idx.line, idx.col);
      expect(Token::Kind::RBracket, "']'");
      expect(Token::Kind::Semicolon, "';'");
      circuit_.add(GateKind::Measure, {q});
      return;
    }
    if (head.text == "barrier") {
      // Operands are parsed and discarded; barriers carry no semantics here.
      while (cur_.kind != Token::Kind::Semicolon) {
        Token reg = expect(Token::Kind::Ident, "register name");
        if (reg.text != qreg_name_)
          throw ParseError("unknown register '" + reg.text + "'", reg.line,
                           reg.col);
        if (cur_.kind == Token::Kind::LBracket) {
          consume();
          Token idx = expect(Token::Kind::Number, "qubit index");
          check_qubit_index(idx);
          expect(Token::Kind::RBracket, "']'");
        }
        if (cur_.kind == Token::Kind::Comma)
          consume();
        else
          break;
      }
      expect(Token::Kind::Semicolon, "';'");
      circuit_.add(GateKind::Barrier, {});
      return;
    }

    auto it = gate_table().find(head.text);
    if (it == gate_table().end())
      throw UnsupportedGateError(head.text, "at line " +
                                                std::to_string(head.line));
    GateKind kind = it->second;

    std::vector<double> params;
    if (gate_param_count(kind) > 0) {
      expect(Token::Kind::LParen, "'('");
      params.push_back(expression());
      expect(Token::Kind::RParen, "')'");
    } else if (cur_.kind == Token::Kind::LParen) {
      throw ParseError("gate " + head.text + " takes no parameters", cur_.line,
                       cur_.col);
    }

    std::vector<std::uint32_t> qubits;
    qubits.push_back(qubit_ref(head));
    while (cur_.kind == Token::Kind::Comma) {
      consume();
      qubits.push_back(qubit_ref(head));
    }
    expect(Token::Kind::Semicolon, "';'");
    if (static_cast<int>(qubits.size()) != gate_arity(kind))
      throw ParseError("gate " + head.text + " expects " +
                           std::to_string(gate_arity(kind)) + " operands",
                       head.line, head.col);
    if (qubits.size() == 2 && qubits[0] == qubits[1])
      throw ParseError("gate " + head.text + " operands must be distinct",
                       head.line, head.col);
    circuit_.add(kind, std::move(qubits), std::move(params));
  }

  std::pair<std::string, std::uint32_t> reg_decl() {
    Token name = expect(Token::Kind::Ident, "register name");
    expect(Token::Kind::LBracket, "'['");
    Token size = expect(Token::Kind::Number, "register size");
    expect(Token::Kind::RBracket, "']'");
    expect(Token::Kind::Semicolon, "';'");
    if (size.value < 1 || size.value != std::floor(size.value))
      throw ParseError("register size must be a positive integer", size.line,
                       size.col);
    return {name.text, static_cast<std::uint32_t>(size.value)};
  }

  std::uint32_t qubit_ref(const Token &context) {
    Token reg = expect(Token::Kind::Ident, "register name");
    if (reg.text != qreg_name_)
      throw ParseError("unknown register '" + reg.text + "'", reg.line,
                       reg.col);
    expect(Token::Kind::LBracket, "'['");
    Token idx = expect(Token::Kind::Number, "qubit index");
    check_qubit_index(idx);
    expect(Token::Kind::RBracket, "']'");
    (void)context;
    return static_cast<std::uint32_t>(idx.value);
  }

  void check_qubit_index(const Token &idx) {
    if (idx.value < 0 || idx.value != std::floor(idx.value) ||
        idx.value >= circuit_.num_qubits)
      throw ParseError("qubit index out of range", idx.line, idx.col);
  }

  // expression := term (('+'|'-') term)*
  double expression() {
    double v = term();
    while (cur_.kind == Token::Kind::Plus || cur_.kind == Token::Kind::Minus) {
      bool plus = cur_.kind == Token::Kind::Plus;
      consume();
      double rhs = term();
      v = plus ? v + rhs : v - rhs;
    }
    return v;
  }

  double term() {
    double v = factor();
    while (cur_.kind == Token::Kind::Star || cur_.kind == Token::Kind::Slash) {
      bool mul = cur_.kind == Token::Kind::Star;
      Token op = cur_;
      consume();
      double rhs = factor();
      if (!mul && rhs == 0.0)
        throw ParseError("division by zero in angle expression", op.line,
                         op.col);
      v = mul ? v * rhs : v / rhs;
    }
    return v;
  }

  double factor() {
    if (cur_.kind == Token::Kind::Minus) {
      consume();
      return -factor();
    }
    if (cur_.kind == Token::Kind::Plus) {
      consume();
      return factor();
    }
    if (cur_.kind == Token::Kind::Number) {
      double v = cur_.value;
      consume();
      return v;
    }
    if (cur_.kind == Token::Kind::Ident && cur_.text == "pi") {
      consume();
      return M_PI;
    }
    if (cur_.kind == Token::Kind::LParen) {
      consume();
      double v = expression();
      expect(Token::Kind::RParen, "')'");
      return v;
    }
    throw ParseError("expected angle expression", cur_.line, cur_.col);
  }

  Token expect(Token::Kind kind, const std::string &what) {
    if (cur_.kind != kind)
      throw ParseError("expected " + what, cur_.line, cur_.col);
    Token t = cur_;
    consume();
    return t;
  }

  void consume() { cur_ = lexer_.next(); }

  Lexer lexer_;
  Token cur_;
  Circuit circuit_;
  std::string qreg_name_;
  std::string creg_name_;
  std::uint32_t creg_size_ = 0;
  bool saw_qreg_ = false;
};

} // namespace

Circuit parse_qasm(const std::string &text) { return Parser(text).run(); }

Circuit parse_qasm_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open QASM file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  Circuit c = parse_qasm(ss.str());
  if (c.name.empty())
    c.name = path;
  return c;
}

std::string emit_qasm(const Circuit &c) {
  std::ostringstream out;
  out.precision(17);
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  out << "qreg q[" << c.num_qubits << "];\n";
  bool has_measure = false;
  for (const auto &g : c.gates)
    if (g.kind == GateKind::Measure)
      has_measure = true;
  if (has_measure)
    out << "creg c[" << c.num_qubits << "];\n";
  std::uint32_t next_bit = 0;
  for (const auto &g : c.gates) {
    switch (g.kind) {
    case GateKind::QpdMeasure:
      throw Error("qpd_measure has no QASM form");
    case GateKind::Barrier:
      out << "barrier q;\n";
      break;
    case GateKind::Measure:
      out << "measure q[" << g.qubits[0] << "] -> c[" << next_bit++ << "];\n";
      break;
    default: {
      out << gate_name(g.kind);
      if (!g.params.empty()) {
        out << "(";
        for (std::size_t i = 0; i < g.params.size(); ++i)
          out << (i ? "," : "") << g.params[i];
        out << ")";
      }
      out << " ";
      for (std::size_t i = 0; i < g.qubits.size(); ++i)
        out << (i ? "," : "") << "q[" << g.qubits[i] << "]";
      out << ";\n";
    }
    }
  }
  return out.str();
}

void write_qasm_file(const Circuit &c, const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write QASM file: " + path);
  out << emit_qasm(c);
}

} // namespace hic
