// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <functional>
#include <vector>

#include "qpend/control.hpp"
#include "qpend/measure.hpp"

namespace qpend {

// Raw mechanical configuration of the array: position and velocity of every
// pendulum (small-angle, so positions are displacements) plus laboratory
// time.
struct MechanicalState {
  Eigen::VectorXd positions;
  Eigen::VectorXd velocities;
  double time = 0.0;
};

inline constexpr int kMinStepsPerCarrierPeriod = 16;

struct IntegratorConfig {
  // Classical fixed-step RK4 substeps per carrier period 2 pi / omega0.
  // 320 keeps relative energy drift a few 1e-10 per period; the hard floor
  // below is rejected as unusable.
  int steps_per_carrier_period = 320;
};

// Carrier-phase initial condition for a (unit-norm) envelope at t = 0:
// x = Re a, v = -omega0 Im a.
MechanicalState synthesize_initial(const EnvelopeState& state,
                                   const PhysicalParams& p);

// Inverse of synthesize_initial at any time: a_k = (x_k - i v_k / omega0)
// e^{-i omega0 t}. Unnormalized; integrator drift shows up in the norm.
EnvelopeState demodulate(const MechanicalState& mech,
                         const PhysicalParams& p);

// Energy of each pendulum, kinetic plus its own restoring potential at the
// frequency it currently runs at (active segment detunings included; spring
// potential is not attributed to either endpoint).
Eigen::VectorXd pendulum_energies(const MechanicalState& mech,
                                  const PhysicalParams& p,
                                  const ControlSegment* active = nullptr);

// Pendulum energies plus the potential of any engaged springs.
double total_energy(const MechanicalState& mech, const PhysicalParams& p,
                    const ControlSegment* active = nullptr);

// Per-step observer: laboratory time, per-pendulum energies, total energy.
using TraceSink =
    std::function<void(double, const Eigen::VectorXd&, double)>;

struct SegmentReport {
  double duration_requested = 0.0;
  double duration_executed = 0.0;  // rounded up to whole steps
  long steps = 0;
  double energy_start = 0.0;
  double energy_end = 0.0;
  double drift_per_period = 0.0;  // |E_end / E_start - 1| per carrier period
};

struct NewtonRunResult {
  MechanicalState mech;
  EnvelopeState state;         // demodulated and renormalized
  double envelope_norm = 1.0;  // demodulated norm before renormalization
  std::vector<MeasurementRecord> records;
  std::string outcome_bits;
  std::vector<SegmentReport> segment_reports;
  double max_drift_per_period = 0.0;
};

// Integrates Newton's equations for the whole schedule,
//   m x_k'' = -m omega_k(t)^2 x_k - sum_springs kappa (x_k - x_partner),
// with classical RK4 at fixed step (2 pi / omega0) / steps_per_carrier_period.
// Segment durations are rounded up to whole steps (reported per segment).
// Markers perform mechanical measurements and need rng; schedules without
// markers may pass nullptr. Throws NumericalGuardError when the step cannot
// resolve the fastest mode (omega_max * h > 0.5).
NewtonRunResult simulate_schedule(const EnvelopeState& initial,
                                  const ControlSchedule& sched,
                                  const IntegratorConfig& cfg = {},
                                  ShotRng* rng = nullptr,
                                  const TraceSink* trace = nullptr);

struct StopReport {
  MechanicalState state;
  double kept_fraction = 1.0;  // share of total energy in the kept pendulums
};

// Mechanical collapse: pendulums not in `keep` are stopped dead, the kept
// ones rescaled so total energy is restored; kept_fraction records how much
// the energy unit shrank. Call between segments (all pendulums at omega0).
StopReport stop_and_renormalize(const MechanicalState& mech,
                                const std::vector<int>& keep,
                                const PhysicalParams& p);

}  // namespace qpend
