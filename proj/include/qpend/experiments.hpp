// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpend/circuit.hpp"
#include "qpend/newton.hpp"

namespace qpend {

// Gates rotating the measurement axis (theta, phi) onto the vertical, so a
// plain energy readout afterwards measures spin along that axis: outcome 1
// means aligned with the axis, 0 opposite. Application order is as listed.
std::vector<GateOp> axis_to_z_ops(int qubit, double theta, double phi);

struct AnticorrResult {
  double axis_theta = 0.0;
  double axis_phi = 0.0;
  long shots = 0;
  std::uint64_t seed = 0;
  std::array<long, 4> counts{};  // outcome pair (o0, o1) at index 2 o0 + o1
  long opposite = 0;
  double p_opposite = 0.0;
  double marginal_q0_up = 0.0;
  double marginal_q1_up = 0.0;
};

// Measures both halves of a fresh singlet along the same axis, shot by
// shot. Outcomes are perfectly anti-correlated for every axis; marginals
// stay 50/50.
AnticorrResult run_anticorrelation(double theta, double phi, long shots,
                                   std::uint64_t seed);

struct Fig3Branch {
  int outcome0 = 0;
  double probability = 0.0;
  std::array<Complex, 4> post{};  // state right after the first measurement
  double y_eigen_residual = 0.0;  // distance of qubit 1 from a Y eigenstate
  int outcome1 = 0;               // after the readout quarter-turn on qubit 1
  bool opposite = false;
};

struct Fig3Report {
  std::array<Complex, 4> amplitudes{};  // singlet after the quarter-turn on 0
  std::array<double, 4> magnitudes{};
  double phase_diff_12 = 0.0;  // pendulum 2 relative to 1
  double phase_diff_34 = 0.0;  // pendulum 4 relative to 3
  std::array<Fig3Branch, 2> branches{};
};

// Deterministic walk through the side-measurement protocol: quarter-turn on
// qubit 0, both collapse branches followed exactly, then the quarter-turn
// readout on qubit 1. No randomness involved.
Fig3Report fig3_trace();

struct ChshSetting {
  double angle_a = 0.0;
  double angle_b = 0.0;
  double correlator = 0.0;
  double std_error = 0.0;  // 0 for exact evaluation
  std::array<long, 4> counts{};
};

struct ChshResult {
  bool exact = false;
  long shots_per_setting = 0;
  std::uint64_t seed = 0;
  std::array<ChshSetting, 4> settings{};  // (a1,b1) (a1,b2) (a2,b1) (a2,b2)
  double S = 0.0;
  double S_std_error = 0.0;
};

// Singlet correlator for measurement axes at polar angles a and b in a
// common plane; equals -cos(a - b).
double singlet_correlator_exact(double a, double b);

// S = E(a1,b1) + E(a1,b2) + E(a2,b1) - E(a2,b2).
ChshResult run_chsh_exact(const std::array<double, 2>& a,
                          const std::array<double, 2>& b);
ChshResult run_chsh_sampled(const std::array<double, 2>& a,
                            const std::array<double, 2>& b,
                            long shots_per_setting, std::uint64_t seed);

// Angles maximizing |S| for that combination: S = -2 sqrt 2.
inline constexpr std::array<double, 2> kChshOptimalA{0.0, kPi / 2};
inline constexpr std::array<double, 2> kChshOptimalB{kPi / 4, -kPi / 4};

struct BitflipReport {
  std::vector<int> flipped;
  std::array<int, 2> syndrome{};  // measured bits of qubits 1 and 2
  bool corrected = false;         // whether the conditional flip fired
  double fidelity_to_logical = 0.0;
  double logical_error_overlap = 0.0;  // |<psi| flipped psi>|^2, for context
  std::uint64_t seed = 0;
};

// Three-pendulum-pair repetition code: encode a fixed generic logical state,
// optionally flip some qubits, decode, measure the two syndrome qubits and
// apply the classically-controlled correction. A single flip (or none) is
// always corrected; two flips fool the code.
BitflipReport run_bitflip_demo(const std::vector<int>& flips,
                               std::uint64_t seed);

struct SweepCell {
  double ratio = 0.0;
  double min_fidelity = 0.0;
  double mean_infidelity = 0.0;
  double max_infidelity = 0.0;
};

struct SweepCaseResult {
  std::string gate;
  int n_qubits = 0;
  std::vector<SweepCell> cells;  // one per ratio, in the order given
  bool monotone = false;
};

struct SweepResult {
  std::vector<double> ratios;
  int states_per_case = 0;
  std::uint64_t seed = 0;
  std::vector<SweepCaseResult> cases;
  bool all_monotone = false;
  double min_fidelity_finest = 0.0;
};

// Compiles each primitive pulse construction (RZ, RX, NOT on one qubit and
// RZ, RX, CNOT, CPHASE, SWAP on two) at every coupling ratio, integrates
// the mechanics from pseudo-random initial states, and compares against the
// exact gate action. Mean infidelity must not grow as the coupling weakens;
// values below kSweepInfidelityFloor are treated as ties, since the
// half-turn gates hit exact resonances where the error sits at rounding
// level. H is a composite of three pulses, not a primitive, and its aliased
// ripple phase is not monotone on the standard grid, so it has no case
// here; its accuracy is covered by the composite-schedule tests.
inline constexpr double kSweepInfidelityFloor = 1e-12;

SweepResult gate_fidelity_sweep(const std::vector<double>& ratios,
                                int states_per_case, std::uint64_t seed,
                                const IntegratorConfig& cfg);

}  // namespace qpend
