// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpend/circuit.hpp"

namespace qpend {

// One diagnostic from the total parser. line/column are 1-based; column
// points at the offending token (or 1 for whole-line problems).
struct ParseError {
  int line = 0;
  int column = 0;
  std::string message;
};

// Either a circuit (no errors) or a non-empty error list; parsing always
// continues to the end of the input, so one pass reports every problem.
struct ParseResult {
  std::optional<Circuit> circuit;
  std::vector<ParseError> errors;

  bool ok() const { return errors.empty(); }
};

ParseResult parse_circuit(std::string_view text);

// Angle literal: a decimal number, or a multiple of pi written as
// [coef]pi[/denom], with an optional leading sign on either form.
// Examples: "pi", "pi/2", "3pi/4", "-pi", "2pi", "0.5pi", "1.25", "-2e-3".
std::optional<double> parse_angle(std::string_view token);

// Canonical text for an angle; parse_angle(format_angle(a)) == a exactly.
// Small multiples of pi come back in pi form, everything else as a decimal
// with enough digits to round-trip.
std::string format_angle(double angle);

// Canonical source forms. print_circuit output reparses to an equal circuit.
std::string print_gate(const GateOp& g);
std::string print_circuit(const Circuit& c);

}  // namespace qpend
