// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <random>
#include <vector>

#include "qpend/circuit.hpp"
#include "qpend/state.hpp"

namespace qpend::testutil {

// Haar-ish random normalized state from a seeded engine.
inline EnvelopeState random_state(int n_qubits, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  VectorXc a(Eigen::Index(1) << n_qubits);
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    a(k) = Complex(normal(gen), normal(gen));
  }
  a /= std::sqrt(a.squaredNorm());
  return make_state(n_qubits, std::move(a));
}

inline double random_angle(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-2.0 * kPi, 2.0 * kPi);
  return u(gen);
}

inline int random_qubit(int n_qubits, std::mt19937_64& gen) {
  std::uniform_int_distribution<int> u(0, n_qubits - 1);
  return u(gen);
}

// Random unitary instruction (no measurements).
inline GateOp random_gate(int n_qubits, std::mt19937_64& gen) {
  std::uniform_int_distribution<int> pick(0, n_qubits >= 2 ? 6 : 3);
  const int q0 = random_qubit(n_qubits, gen);
  int q1 = q0;
  if (n_qubits >= 2) {
    while (q1 == q0) q1 = random_qubit(n_qubits, gen);
  }
  switch (pick(gen)) {
    case 0: return GateOp::rz(q0, random_angle(gen));
    case 1: return GateOp::rx(q0, random_angle(gen));
    case 2: return GateOp::not_(q0);
    case 3: return GateOp::h(q0);
    case 4: return GateOp::cnot(q0, q1);
    case 5: return GateOp::cphase(q0, q1, random_angle(gen));
    default: return GateOp::swap(q0, q1);
  }
}

inline Circuit random_unitary_circuit(int n_qubits, int n_gates,
                                      std::mt19937_64& gen) {
  Circuit c;
  c.n_qubits = n_qubits;
  for (int i = 0; i < n_gates; ++i) {
    c.ops.push_back(random_gate(n_qubits, gen));
  }
  return c;
}

// Textbook reference blocks, assembled independently of the library's gate
// constructions.
inline MatrixXc ref_hadamard() {
  MatrixXc m(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  m << r, r, r, -r;
  return m;
}

inline MatrixXc ref_quarter_x() {
  MatrixXc m(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  m << Complex(r, 0), Complex(0, r), Complex(0, r), Complex(r, 0);
  return m;
}

}  // namespace qpend::testutil
