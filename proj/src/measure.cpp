// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "qpend/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace qpend {

int choose_binary(double p0, double u) { return u < p0 ? 0 : 1; }

std::size_t choose_categorical(const Eigen::VectorXd& probs, double u) {
  double cum = 0.0;
  Eigen::Index last_positive = -1;
  for (Eigen::Index k = 0; k < probs.size(); ++k) {
    if (probs(k) > 0.0) last_positive = k;
    cum += probs(k);
    if (u < cum) return static_cast<std::size_t>(k);
  }
  // u landed beyond the accumulated total (rounding); take the last branch
  // that has any probability.
  if (last_positive < 0) {
    throw std::invalid_argument("categorical draw over all-zero weights");
  }
  return static_cast<std::size_t>(last_positive);
}

QubitMeasurement measure_qubit(const EnvelopeState& state, int qubit,
                               ShotRng& rng) {
  if (qubit < 0 || qubit >= state.n_qubits) {
    throw std::invalid_argument("measured qubit out of range");
  }
  const VectorXc& a = state.amplitudes;
  double group[2] = {0.0, 0.0};
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    group[bit_of_index(static_cast<std::size_t>(k), qubit, state.n_qubits)] +=
        std::norm(a(k));
  }
  const double total = group[0] + group[1];
  const double p0 = group[0] / total;

  QubitMeasurement m;
  m.outcome = choose_binary(p0, rng.uniform());
  const double p_chosen = m.outcome == 0 ? p0 : group[1] / total;
  const double scale = 1.0 / std::sqrt(group[m.outcome]);

  m.state.n_qubits = state.n_qubits;
  m.state.amplitudes = VectorXc::Zero(a.size());
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (bit_of_index(static_cast<std::size_t>(k), qubit, state.n_qubits) ==
        m.outcome) {
      m.state.amplitudes(k) = a(k) * scale;
    }
  }

  m.record.qubit = qubit;
  m.record.outcome = m.outcome ? "1" : "0";
  m.record.pre_probabilities = {group[0] / total, group[1] / total};
  m.record.energy_unit_factor = p_chosen;
  return m;
}

RegisterMeasurement measure_all(const EnvelopeState& state, ShotRng& rng) {
  Eigen::VectorXd probs = probabilities(state);
  const double total = probs.sum();
  probs /= total;

  RegisterMeasurement m;
  m.index = choose_categorical(probs, rng.uniform());
  m.bits = bits_of_index(m.index, state.n_qubits);

  m.state.n_qubits = state.n_qubits;
  m.state.amplitudes = VectorXc::Zero(state.amplitudes.size());
  const Complex survivor = state.amplitudes(Eigen::Index(m.index));
  m.state.amplitudes(Eigen::Index(m.index)) = survivor / std::abs(survivor);

  m.record.qubit = -1;
  m.record.outcome = m.bits;
  m.record.pre_probabilities.assign(probs.data(),
                                    probs.data() + probs.size());
  m.record.energy_unit_factor = probs(Eigen::Index(m.index));
  return m;
}

}  // namespace qpend
