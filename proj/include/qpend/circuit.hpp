// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <string>
#include <vector>

#include "qpend/linalg.hpp"

namespace qpend {

enum class GateKind {
  kRz,
  kRx,
  kNot,
  kH,
  kCnot,
  kCphase,
  kSwap,
  kMeasure,
  kMeasureAll,
};

bool is_measurement(GateKind k);
bool has_angle(GateKind k);
int arity(GateKind k);  // qubit operands: 0 for measure-all, else 1 or 2
const char* mnemonic(GateKind k);

// One instruction. q0 is the single target, the control of cnot/cphase, or
// the first swap operand; q1 the second operand where one exists. angle is
// used by rz, rx and cphase only.
struct GateOp {
  GateKind kind = GateKind::kNot;
  int q0 = -1;
  int q1 = -1;
  double angle = 0.0;

  static GateOp rz(int q, double angle);
  static GateOp rx(int q, double angle);
  static GateOp not_(int q);
  static GateOp h(int q);
  static GateOp cnot(int control, int target);
  static GateOp cphase(int control, int target, double angle);
  static GateOp swap(int a, int b);
  static GateOp measure(int q);
  static GateOp measure_all();
};

bool operator==(const GateOp& a, const GateOp& b);

// Source location of an instruction, for diagnostics. 1-based.
struct SourceSpan {
  int line = 0;
  int column = 0;
};

struct Circuit {
  int n_qubits = 0;
  std::vector<GateOp> ops;
  // Parallel to ops when produced by the parser; may be empty otherwise.
  std::vector<SourceSpan> spans;
};

// Structural equality; spans are ignored.
bool operator==(const Circuit& a, const Circuit& b);

// Throws std::invalid_argument on out-of-range or coincident operands,
// non-finite angle, or a kind/operand mismatch.
void validate_gate(const GateOp& g, int n_qubits);
void validate_circuit(const Circuit& c);

// Full 2^n x 2^n matrix of one unitary instruction (measurements are
// rejected). Single-qubit gates are embedded by Kronecker products of the
// 2x2 block; rx is the half-sum projector form (symmetric + e^{i angle}
// antisymmetric), whose quarter turn equals the familiar x-rotation matrix
// up to complex conjugation and a global phase. h expands to its
// rz-rx-rz composition and so carries a global phase of pi/4 relative to
// the textbook matrix.
MatrixXc unitary_of_gate(const GateOp& g, int n_qubits);

// Product of all instruction unitaries, first instruction applied first.
// Rejects circuits containing measurements.
MatrixXc circuit_unitary(const Circuit& c);

}  // namespace qpend
