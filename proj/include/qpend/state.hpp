// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <cstddef>
#include <string>

#include "qpend/linalg.hpp"

namespace qpend {

inline constexpr int kMaxQubits = 20;
inline constexpr double kNormTol = 1e-12;

// Slowly varying complex envelope of a register of 2^n pendulums, one
// amplitude per pendulum. Basis convention: pendulum with array index k
// represents the basis state whose bits are the binary digits of k, qubit 0
// being the most significant digit; digit 0 is the lower level (rest state
// of that qubit's pair), digit 1 the upper. Display numbering of pendulums
// is index + 1.
struct EnvelopeState {
  int n_qubits = 0;
  VectorXc amplitudes;

  Eigen::Index dim() const { return amplitudes.size(); }
};

// All amplitude in pendulum 1 (index 0): every qubit in the lower level.
EnvelopeState init_ground(int n_qubits);

// Validates dimension 2^n_qubits and unit total probability (within
// kNormTol); throws std::invalid_argument otherwise.
EnvelopeState make_state(int n_qubits, VectorXc amplitudes);

// |a_k|^2 for each pendulum.
Eigen::VectorXd probabilities(const EnvelopeState& state);

// | sum |a_k|^2 - 1 |
double norm_error(const EnvelopeState& state);

// Bloch angles of a single-qubit state: theta = 2 atan2(|A_lower|,
// |A_upper|) so theta = 0 is the upper level and theta = pi the lower;
// phi = arg(A_lower) - arg(A_upper), wrapped to [-pi, pi), and defined as 0
// at the poles.
struct BlochPoint {
  double theta = 0.0;
  double phi = 0.0;
};

BlochPoint bloch_from_state(const EnvelopeState& state);
EnvelopeState state_from_bloch(double theta, double phi);

// Product test for a two-qubit state via the 2x2 determinant
// a0*a3 - a1*a2 of the amplitude matrix; residual is its magnitude,
// 0 for product states, 1/2 for maximally entangled ones.
struct ProductCheck {
  bool is_product = false;
  double residual = 0.0;
};

ProductCheck is_product_two_qubit(const EnvelopeState& state,
                                  double tol = 1e-9);

// |<a|b>|^2. Requires equal dimension and nonzero norms.
double fidelity(const VectorXc& a, const VectorXc& b);
double fidelity(const EnvelopeState& a, const EnvelopeState& b);

// Digit of `qubit` (0 = most significant) in index k of an n-qubit register.
inline int bit_of_index(std::size_t k, int qubit, int n_qubits) {
  return static_cast<int>((k >> (n_qubits - 1 - qubit)) & 1u);
}

// Bit string of index k, qubit 0 first.
std::string bits_of_index(std::size_t k, int n_qubits);

}  // namespace qpend
