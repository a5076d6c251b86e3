// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <map>
#include <variant>
#include <vector>

#include "qpend/circuit.hpp"

namespace qpend {

// Control-level description of the pendulum array. All pendulums share the
// carrier frequency omega0 and mass; delta_omega_budget is the single
// control strength used for every detuning and normal-mode splitting the
// compiler emits. Budget defaults to omega0 / 100, slow enough that the
// envelope picture holds well.
struct PhysicalParams {
  double omega0 = kTwoPi;
  double mass = 1.0;
  double delta_omega_budget = kTwoPi / 100.0;
};

void validate_params(const PhysicalParams& p);

// Params with delta_omega_budget = ratio * omega0.
PhysicalParams params_for_ratio(double ratio);

// One coupling spring between pendulums i < j, described by the normal-mode
// splitting it must produce (the antisymmetric mode runs faster by
// `splitting` rad/s).
struct Spring {
  int i = 0;
  int j = 0;
  double splitting = 0.0;
};

bool operator==(const Spring& a, const Spring& b);

// Piecewise-constant control interval: for `duration` seconds, pendulum k
// runs detuned by detunings[k] rad/s and the listed springs are engaged.
// A pendulum may appear in at most one spring and not also be detuned.
struct ControlSegment {
  double duration = 0.0;
  std::map<int, double> detunings;
  std::vector<Spring> springs;
};

bool operator==(const ControlSegment& a, const ControlSegment& b);

// Point in the schedule where pendulums are observed. qubit = -1 reads the
// whole register at once.
struct MeasureMarker {
  int qubit = -1;
};

using ScheduleItem = std::variant<ControlSegment, MeasureMarker>;

struct ControlSchedule {
  int n_qubits = 0;
  PhysicalParams params;
  std::vector<ScheduleItem> items;

  bool has_measurements() const;
  double total_duration() const;
};

// Spring constant producing a given normal-mode splitting:
// kappa = m ((omega0 + splitting)^2 - omega0^2) / 2, and its inverse.
double spring_constant_for_splitting(double splitting,
                                     const PhysicalParams& p);
double splitting_of_spring_constant(double kappa, const PhysicalParams& p);

// Control segments realizing one gate, all strengths at the params budget.
// Rotation angles are taken mod 2 pi into (0, 2 pi]: zero compiles to no
// segments, while a nonzero exact multiple of 2 pi keeps a full turn. h
// expands to its three-gate composition. Measurements are rejected;
// compile_circuit turns them into markers instead.
std::vector<ControlSegment> compile_gate(const GateOp& g, int n_qubits,
                                         const PhysicalParams& p);

ControlSchedule compile_circuit(const Circuit& c, const PhysicalParams& p);

// Throws std::invalid_argument on nonpositive duration, indices out of
// range, i >= j, overlapping springs, a pendulum both sprung and detuned,
// or nonpositive splitting.
void validate_segment(const ControlSegment& s, int n_qubits);

// Hermitian generator of the segment in the envelope frame: detunings on
// the diagonal plus `splitting` times the antisymmetric projector of each
// sprung pair. The segment unitary is exp(i G t).
Eigen::MatrixXd segment_generator(const ControlSegment& s, int n_qubits);

// Product of segment unitaries, first segment first. Rejects markers.
MatrixXc schedule_unitary(const ControlSchedule& sched);

// Moves every control strength to a new budget and scales durations
// inversely, so each segment's accumulated phases (and hence its unitary)
// are unchanged.
ControlSchedule rescale_schedule(const ControlSchedule& sched,
                                 double new_budget);

}  // namespace qpend
