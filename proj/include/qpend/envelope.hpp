// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include "qpend/circuit.hpp"
#include "qpend/control.hpp"
#include "qpend/measure.hpp"

namespace qpend {

// Fast reference backend: evolves the complex envelope directly with the
// closed-form action of each gate or control segment. Everything here is
// O(2^n) per instruction, no matrices are built.

EnvelopeState apply_gate(const EnvelopeState& state, const GateOp& g);

// Closed form per segment: detuned pendulums pick up e^{i delta t}, each
// sprung pair splits into symmetric (unchanged) and antisymmetric
// (e^{i splitting t}) parts.
EnvelopeState apply_segment(const EnvelopeState& state,
                            const ControlSegment& seg);

// Segments applied in order; markers are rejected (use run_schedule).
EnvelopeState apply_schedule(const EnvelopeState& state,
                             const ControlSchedule& sched);

// The two-qubit singlet (0, 1/sqrt 2, -1/sqrt 2, 0): pendulums 2 and 3
// excited in antiphase.
EnvelopeState prepare_singlet();

struct RunResult {
  EnvelopeState state;
  std::vector<MeasurementRecord> records;
  std::string outcome_bits;  // concatenation of all measured bits, in order
};

// Runs a circuit from the ground state, measurements drawn from rng.
RunResult run_circuit(const Circuit& c, ShotRng& rng);

// Runs a compiled schedule, honoring markers.
RunResult run_schedule(const ControlSchedule& sched, ShotRng& rng);

}  // namespace qpend
