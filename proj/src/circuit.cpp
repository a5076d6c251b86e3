// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "qpend/circuit.hpp"

#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

#include "qpend/state.hpp"

namespace qpend {

bool is_measurement(GateKind k) {
  return k == GateKind::kMeasure || k == GateKind::kMeasureAll;
}

bool has_angle(GateKind k) {
  return k == GateKind::kRz || k == GateKind::kRx || k == GateKind::kCphase;
}

int arity(GateKind k) {
  switch (k) {
    case GateKind::kRz:
    case GateKind::kRx:
    case GateKind::kNot:
    case GateKind::kH:
    case GateKind::kMeasure:
      return 1;
    case GateKind::kCnot:
    case GateKind::kCphase:
    case GateKind::kSwap:
      return 2;
    case GateKind::kMeasureAll:
      return 0;
  }
  throw std::logic_error("unreachable gate kind");
}

const char* mnemonic(GateKind k) {
  switch (k) {
    case GateKind::kRz: return "rz";
    case GateKind::kRx: return "rx";
    case GateKind::kNot: return "not";
    case GateKind::kH: return "h";
    case GateKind::kCnot: return "cnot";
    case GateKind::kCphase: return "cphase";
    case GateKind::kSwap: return "swap";
    case GateKind::kMeasure: return "measure";
    case GateKind::kMeasureAll: return "measure";
  }
  throw std::logic_error("unreachable gate kind");
}

GateOp GateOp::rz(int q, double angle) { return {GateKind::kRz, q, -1, angle}; }
GateOp GateOp::rx(int q, double angle) { return {GateKind::kRx, q, -1, angle}; }
GateOp GateOp::not_(int q) { return {GateKind::kNot, q, -1, 0.0}; }
GateOp GateOp::h(int q) { return {GateKind::kH, q, -1, 0.0}; }
GateOp GateOp::cnot(int control, int target) {
  return {GateKind::kCnot, control, target, 0.0};
}
GateOp GateOp::cphase(int control, int target, double angle) {
  return {GateKind::kCphase, control, target, angle};
}
GateOp GateOp::swap(int a, int b) { return {GateKind::kSwap, a, b, 0.0}; }
GateOp GateOp::measure(int q) { return {GateKind::kMeasure, q, -1, 0.0}; }
GateOp GateOp::measure_all() { return {GateKind::kMeasureAll, -1, -1, 0.0}; }

bool operator==(const GateOp& a, const GateOp& b) {
  return a.kind == b.kind && a.q0 == b.q0 && a.q1 == b.q1 &&
         a.angle == b.angle;
}

bool operator==(const Circuit& a, const Circuit& b) {
  return a.n_qubits == b.n_qubits && a.ops == b.ops;
}

void validate_gate(const GateOp& g, int n_qubits) {
  auto check_q = [&](int q, const char* role) {
    if (q < 0 || q >= n_qubits) {
      throw std::invalid_argument(std::string(role) + " qubit " +
                                  std::to_string(q) +
                                  " out of range for register of " +
                                  std::to_string(n_qubits));
    }
  };
  int n_ops = arity(g.kind);
  if (n_ops >= 1) check_q(g.q0, n_ops == 2 ? "first" : "target");
  if (n_ops == 2) {
    check_q(g.q1, "second");
    if (g.q0 == g.q1) {
      throw std::invalid_argument(
          std::string(mnemonic(g.kind)) + " operands must be distinct, got " +
          std::to_string(g.q0) + " twice");
    }
  }
  if (has_angle(g.kind) && !std::isfinite(g.angle)) {
    throw std::invalid_argument("gate angle must be finite");
  }
}

void validate_circuit(const Circuit& c) {
  if (c.n_qubits < 1 || c.n_qubits > kMaxQubits) {
    throw std::invalid_argument("circuit qubit count out of range");
  }
  for (const GateOp& g : c.ops) validate_gate(g, c.n_qubits);
}

namespace {

Eigen::Matrix2cd rz2(double angle) {
  Eigen::Matrix2cd m;
  m << 1.0, 0.0, 0.0, std::polar(1.0, angle);
  return m;
}

Eigen::Matrix2cd rx2(double angle) {
  const Complex e = std::polar(1.0, angle);
  Eigen::Matrix2cd m;
  m << 0.5 * (1.0 + e), 0.5 * (1.0 - e), 0.5 * (1.0 - e), 0.5 * (1.0 + e);
  return m;
}

Eigen::Matrix2cd not2() {
  Eigen::Matrix2cd m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Eigen::Matrix2cd h2() { return rz2(kPi / 2) * rx2(kPi / 2) * rz2(kPi / 2); }

MatrixXc embed_single(const Eigen::Matrix2cd& u, int q, int n_qubits) {
  const Eigen::Index pre = Eigen::Index(1) << q;
  const Eigen::Index post = Eigen::Index(1) << (n_qubits - 1 - q);
  MatrixXc right = Eigen::kroneckerProduct(
      u, MatrixXc(MatrixXc::Identity(post, post)));
  return Eigen::kroneckerProduct(MatrixXc(MatrixXc::Identity(pre, pre)),
                                 right);
}

std::size_t flip_bit(std::size_t k, int q, int n_qubits) {
  return k ^ (std::size_t(1) << (n_qubits - 1 - q));
}

}  // namespace

MatrixXc unitary_of_gate(const GateOp& g, int n_qubits) {
  validate_gate(g, n_qubits);
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  switch (g.kind) {
    case GateKind::kRz:
      return embed_single(rz2(g.angle), g.q0, n_qubits);
    case GateKind::kRx:
      return embed_single(rx2(g.angle), g.q0, n_qubits);
    case GateKind::kNot:
      return embed_single(not2(), g.q0, n_qubits);
    case GateKind::kH:
      return embed_single(h2(), g.q0, n_qubits);
    case GateKind::kCnot: {
      MatrixXc u = MatrixXc::Zero(dim, dim);
      for (std::size_t k = 0; k < std::size_t(dim); ++k) {
        std::size_t j = bit_of_index(k, g.q0, n_qubits)
                            ? flip_bit(k, g.q1, n_qubits)
                            : k;
        u(Eigen::Index(j), Eigen::Index(k)) = 1.0;
      }
      return u;
    }
    case GateKind::kCphase: {
      MatrixXc u = MatrixXc::Identity(dim, dim);
      for (std::size_t k = 0; k < std::size_t(dim); ++k) {
        if (bit_of_index(k, g.q0, n_qubits) &&
            bit_of_index(k, g.q1, n_qubits)) {
          u(Eigen::Index(k), Eigen::Index(k)) = std::polar(1.0, g.angle);
        }
      }
      return u;
    }
    case GateKind::kSwap: {
      MatrixXc u = MatrixXc::Zero(dim, dim);
      for (std::size_t k = 0; k < std::size_t(dim); ++k) {
        std::size_t j = k;
        int b0 = bit_of_index(k, g.q0, n_qubits);
        int b1 = bit_of_index(k, g.q1, n_qubits);
        if (b0 != b1) {
          j = flip_bit(flip_bit(k, g.q0, n_qubits), g.q1, n_qubits);
        }
        u(Eigen::Index(j), Eigen::Index(k)) = 1.0;
      }
      return u;
    }
    case GateKind::kMeasure:
    case GateKind::kMeasureAll:
      throw std::invalid_argument("measurements have no unitary");
  }
  throw std::logic_error("unreachable gate kind");
}

MatrixXc circuit_unitary(const Circuit& c) {
  validate_circuit(c);
  const Eigen::Index dim = Eigen::Index(1) << c.n_qubits;
  MatrixXc u = MatrixXc::Identity(dim, dim);
  for (const GateOp& g : c.ops) {
    if (is_measurement(g.kind)) {
      throw std::invalid_argument(
          "circuit_unitary: circuit contains a measurement");
    }
    u = unitary_of_gate(g, c.n_qubits) * u;
  }
  return u;
}

}  // namespace qpend
