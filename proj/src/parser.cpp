// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "qpend/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "qpend/state.hpp"

namespace qpend {

namespace {

// Unsigned decimal literal (digits, optional fraction, optional exponent).
// The sign is handled by the caller, so reject anything from_chars would
// accept beyond that, including "inf" and "nan".
std::optional<double> parse_plain_decimal(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (!(std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '.')) {
    return std::nullopt;
  }
  double value = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace

std::optional<double> parse_angle(std::string_view token) {
  if (token.empty()) return std::nullopt;
  double sign = 1.0;
  std::string_view body = token;
  if (body[0] == '+' || body[0] == '-') {
    if (body[0] == '-') sign = -1.0;
    body.remove_prefix(1);
  }
  if (body.empty()) return std::nullopt;

  std::size_t pos = body.find("pi");
  if (pos != std::string_view::npos) {
    std::string_view coef_text = body.substr(0, pos);
    std::string_view rest = body.substr(pos + 2);
    double coef = 1.0;
    if (!coef_text.empty()) {
      auto v = parse_plain_decimal(coef_text);
      if (!v) return std::nullopt;
      coef = *v;
    }
    double denom = 1.0;
    if (!rest.empty()) {
      if (rest[0] != '/') return std::nullopt;
      rest.remove_prefix(1);
      auto v = parse_plain_decimal(rest);
      if (!v || *v == 0.0) return std::nullopt;
      denom = *v;
    }
    double value = sign * ((coef * kPi) / denom);
    if (!std::isfinite(value)) return std::nullopt;
    return value;
  }

  auto v = parse_plain_decimal(body);
  if (!v) return std::nullopt;
  return sign * *v;
}

std::string format_angle(double angle) {
  if (angle == 0.0) return "0";
  const bool negative = std::signbit(angle);
  const double mag = std::abs(angle);
  for (long denom : {1L, 2L, 3L, 4L, 6L, 8L, 12L, 16L, 32L}) {
    double kf = std::round(mag * static_cast<double>(denom) / kPi);
    if (kf < 1.0 || kf > 64.0) continue;
    long k = static_cast<long>(kf);
    long g = std::gcd(k, denom);
    long rk = k / g;
    long rd = denom / g;
    // Recompute exactly the way parse_angle will.
    double candidate =
        (static_cast<double>(rk) * kPi) / static_cast<double>(rd);
    if (candidate != mag) {
      candidate = (static_cast<double>(k) * kPi) / static_cast<double>(denom);
      if (candidate != mag) continue;
      rk = k;
      rd = denom;
    }
    std::string out = negative ? "-" : "";
    if (rk != 1) out += std::to_string(rk);
    out += "pi";
    if (rd != 1) out += "/" + std::to_string(rd);
    return out;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", angle);
  return buf;
}

std::string print_gate(const GateOp& g) {
  std::string out = mnemonic(g.kind);
  if (g.kind == GateKind::kMeasureAll) return out + " all";
  out += " " + std::to_string(g.q0);
  if (arity(g.kind) == 2) out += " " + std::to_string(g.q1);
  if (has_angle(g.kind)) out += " " + format_angle(g.angle);
  return out;
}

std::string print_circuit(const Circuit& c) {
  std::string out = "qubits " + std::to_string(c.n_qubits) + "\n";
  for (const GateOp& g : c.ops) out += print_gate(g) + "\n";
  return out;
}

namespace {

struct Token {
  std::string_view text;
  int column = 0;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    char ch = line[i];
    if (ch == '#') break;
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r' && line[i] != '#') {
      ++i;
    }
    tokens.push_back({line.substr(start, i - start),
                      static_cast<int>(start) + 1});
  }
  return tokens;
}

std::optional<int> parse_uint(std::string_view s) {
  if (s.empty()) return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value < 0) {
    return std::nullopt;
  }
  return value;
}

struct InstructionSpec {
  GateKind kind;
  int n_qubit_args;
  bool takes_angle;
};

std::optional<InstructionSpec> lookup(std::string_view name) {
  if (name == "rz") return InstructionSpec{GateKind::kRz, 1, true};
  if (name == "rx") return InstructionSpec{GateKind::kRx, 1, true};
  if (name == "not") return InstructionSpec{GateKind::kNot, 1, false};
  if (name == "h") return InstructionSpec{GateKind::kH, 1, false};
  if (name == "cnot") return InstructionSpec{GateKind::kCnot, 2, false};
  if (name == "cphase") return InstructionSpec{GateKind::kCphase, 2, true};
  if (name == "swap") return InstructionSpec{GateKind::kSwap, 2, false};
  return std::nullopt;
}

}  // namespace

ParseResult parse_circuit(std::string_view text) {
  ParseResult res;
  Circuit circuit;
  bool have_header = false;
  bool header_usable = false;
  bool missing_header_reported = false;

  auto report = [&res](int line, int column, std::string message) {
    res.errors.push_back({line, column, std::move(message)});
  };

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(
        start, nl == std::string_view::npos ? text.size() - start
                                            : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::vector<Token> tokens = tokenize(line);
    if (tokens.empty()) continue;
    const Token& head = tokens[0];

    if (head.text == "qubits") {
      if (have_header) {
        report(line_no, head.column, "duplicate 'qubits' header");
        continue;
      }
      have_header = true;
      if (tokens.size() != 2) {
        report(line_no, head.column,
               "'qubits' header expects exactly one count");
        continue;
      }
      auto n = parse_uint(tokens[1].text);
      if (!n) {
        report(line_no, tokens[1].column,
               "invalid register size '" + std::string(tokens[1].text) + "'");
        continue;
      }
      if (*n < 1 || *n > kMaxQubits) {
        report(line_no, tokens[1].column,
               "register size must be between 1 and " +
                   std::to_string(kMaxQubits) + ", got " +
                   std::to_string(*n));
        continue;
      }
      circuit.n_qubits = *n;
      header_usable = true;
      continue;
    }

    if (!have_header && !missing_header_reported) {
      report(line_no, head.column,
             "missing 'qubits <count>' header before instructions");
      missing_header_reported = true;
    }

    bool line_ok = true;
    GateOp op;
    if (head.text == "measure") {
      if (tokens.size() != 2) {
        report(line_no, head.column, "'measure' expects one operand");
        continue;
      }
      if (tokens[1].text == "all") {
        op = GateOp::measure_all();
      } else {
        auto q = parse_uint(tokens[1].text);
        if (!q) {
          report(line_no, tokens[1].column,
                 "expected a qubit index or 'all', got '" +
                     std::string(tokens[1].text) + "'");
          continue;
        }
        op = GateOp::measure(*q);
        if (header_usable && *q >= circuit.n_qubits) {
          report(line_no, tokens[1].column,
                 "qubit " + std::to_string(*q) +
                     " out of range (register has " +
                     std::to_string(circuit.n_qubits) + " qubits)");
          line_ok = false;
        }
      }
    } else {
      auto spec = lookup(head.text);
      if (!spec) {
        report(line_no, head.column,
               "unknown instruction '" + std::string(head.text) + "'");
        continue;
      }
      const std::size_t want =
          1 + static_cast<std::size_t>(spec->n_qubit_args) +
          (spec->takes_angle ? 1 : 0);
      if (tokens.size() != want) {
        report(line_no, head.column,
               "'" + std::string(head.text) + "' expects " +
                   std::to_string(want - 1) + " argument" +
                   (want == 2 ? "" : "s") + ", got " +
                   std::to_string(tokens.size() - 1));
        continue;
      }
      int qs[2] = {-1, -1};
      for (int a = 0; a < spec->n_qubit_args; ++a) {
        const Token& t = tokens[static_cast<std::size_t>(a) + 1];
        auto q = parse_uint(t.text);
        if (!q) {
          report(line_no, t.column,
                 "expected a qubit index, got '" + std::string(t.text) + "'");
          line_ok = false;
          continue;
        }
        qs[a] = *q;
        if (header_usable && *q >= circuit.n_qubits) {
          report(line_no, t.column,
                 "qubit " + std::to_string(*q) +
                     " out of range (register has " +
                     std::to_string(circuit.n_qubits) + " qubits)");
          line_ok = false;
        }
      }
      if (spec->n_qubit_args == 2 && qs[0] >= 0 && qs[0] == qs[1]) {
        report(line_no, tokens[2].column,
               "'" + std::string(head.text) +
                   "' operands must be distinct, got " +
                   std::to_string(qs[0]) + " twice");
        line_ok = false;
      }
      double angle = 0.0;
      if (spec->takes_angle) {
        const Token& t = tokens[want - 1];
        auto v = parse_angle(t.text);
        if (!v) {
          report(line_no, t.column,
                 "malformed angle '" + std::string(t.text) + "'");
          line_ok = false;
        } else {
          angle = *v;
        }
      }
      op.kind = spec->kind;
      op.q0 = qs[0];
      op.q1 = qs[1];
      op.angle = angle;
    }

    if (line_ok) {
      circuit.ops.push_back(op);
      circuit.spans.push_back({line_no, head.column});
    }
  }

  if (!have_header && !missing_header_reported) {
    report(line_no > 0 ? line_no : 1, 1,
           "missing 'qubits <count>' header before instructions");
  }

  if (res.errors.empty()) res.circuit = std::move(circuit);
  return res;
}

}  // namespace qpend
