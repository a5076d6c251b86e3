// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "qpend/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpend {

namespace {

void check_qubit_count(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be between 1 and " +
                                std::to_string(kMaxQubits) + ", got " +
                                std::to_string(n_qubits));
  }
}

}  // namespace

EnvelopeState init_ground(int n_qubits) {
  check_qubit_count(n_qubits);
  EnvelopeState s;
  s.n_qubits = n_qubits;
  s.amplitudes = VectorXc::Zero(Eigen::Index(1) << n_qubits);
  s.amplitudes(0) = 1.0;
  return s;
}

EnvelopeState make_state(int n_qubits, VectorXc amplitudes) {
  check_qubit_count(n_qubits);
  if (amplitudes.size() != (Eigen::Index(1) << n_qubits)) {
    throw std::invalid_argument(
        "amplitude vector has " + std::to_string(amplitudes.size()) +
        " entries, expected 2^" + std::to_string(n_qubits));
  }
  EnvelopeState s;
  s.n_qubits = n_qubits;
  s.amplitudes = std::move(amplitudes);
  if (norm_error(s) > kNormTol) {
    throw std::invalid_argument("total probability deviates from 1 by " +
                                std::to_string(norm_error(s)));
  }
  return s;
}

Eigen::VectorXd probabilities(const EnvelopeState& state) {
  return state.amplitudes.cwiseAbs2();
}

double norm_error(const EnvelopeState& state) {
  return std::abs(state.amplitudes.squaredNorm() - 1.0);
}

BlochPoint bloch_from_state(const EnvelopeState& state) {
  if (state.n_qubits != 1) {
    throw std::invalid_argument("Bloch angles need a single-qubit state");
  }
  const Complex lower = state.amplitudes(0);
  const Complex upper = state.amplitudes(1);
  BlochPoint p;
  p.theta = 2.0 * std::atan2(std::abs(lower), std::abs(upper));
  if (std::abs(lower) < 1e-15 || std::abs(upper) < 1e-15) {
    p.phi = 0.0;
  } else {
    p.phi = wrap_angle(std::arg(lower) - std::arg(upper));
  }
  return p;
}

EnvelopeState state_from_bloch(double theta, double phi) {
  VectorXc a(2);
  a(0) = std::polar(std::sin(theta / 2.0), phi);
  a(1) = Complex(std::cos(theta / 2.0), 0.0);
  return make_state(1, std::move(a));
}

ProductCheck is_product_two_qubit(const EnvelopeState& state, double tol) {
  if (state.n_qubits != 2) {
    throw std::invalid_argument("product check needs a two-qubit state");
  }
  const VectorXc& a = state.amplitudes;
  ProductCheck c;
  c.residual = std::abs(a(0) * a(3) - a(1) * a(2));
  c.is_product = c.residual <= tol;
  return c;
}

double fidelity(const VectorXc& a, const VectorXc& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("fidelity needs equal dimensions");
  }
  double na = a.squaredNorm();
  double nb = b.squaredNorm();
  if (na <= 0.0 || nb <= 0.0) {
    throw std::invalid_argument("fidelity needs nonzero states");
  }
  return std::min(1.0, std::norm(a.dot(b)) / (na * nb));
}

double fidelity(const EnvelopeState& a, const EnvelopeState& b) {
  return fidelity(a.amplitudes, b.amplitudes);
}

std::string bits_of_index(std::size_t k, int n_qubits) {
  std::string bits(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if (bit_of_index(k, q, n_qubits)) bits[static_cast<std::size_t>(q)] = '1';
  }
  return bits;
}

}  // namespace qpend
