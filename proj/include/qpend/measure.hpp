// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qpend/rng.hpp"
#include "qpend/state.hpp"

namespace qpend {

// What one measurement did: which qubit (-1 for the whole register), the
// outcome bits, the pre-measurement distribution the draw was made from,
// and the probability of the branch actually taken. The latter is the
// factor by which the register's energy unit shrinks when the losing
// pendulums are stopped and the survivors renormalized.
struct MeasurementRecord {
  int qubit = -1;
  std::string outcome;
  std::vector<double> pre_probabilities;
  double energy_unit_factor = 1.0;
};

// Branch selection shared by the envelope and mechanical backends. Exactly
// one uniform draw decides a measurement; u < p0 selects outcome 0.
int choose_binary(double p0, double u);

// Cumulative inverse over probs in index order. Zero-probability branches
// occupy zero-width intervals and cannot be selected.
std::size_t choose_categorical(const Eigen::VectorXd& probs, double u);

struct QubitMeasurement {
  int outcome = 0;
  EnvelopeState state;
  MeasurementRecord record;
};

// Projective measurement of one qubit: the losing half of the amplitudes is
// zeroed and the surviving half divided by sqrt(p), preserving phases.
QubitMeasurement measure_qubit(const EnvelopeState& state, int qubit,
                               ShotRng& rng);

struct RegisterMeasurement {
  std::size_t index = 0;
  std::string bits;
  EnvelopeState state;
  MeasurementRecord record;
};

// Full-register measurement: one categorical draw over all pendulums.
RegisterMeasurement measure_all(const EnvelopeState& state, ShotRng& rng);

}  // namespace qpend
