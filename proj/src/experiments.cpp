// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "qpend/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qpend/envelope.hpp"
#include "qpend/parser.hpp"

namespace qpend {

std::vector<GateOp> axis_to_z_ops(int qubit, double theta, double phi) {
  return {GateOp::rz(qubit, phi - kPi / 2), GateOp::rx(qubit, theta)};
}

namespace {

EnvelopeState rotated_singlet(double theta_a, double phi_a, double theta_b,
                              double phi_b) {
  EnvelopeState s = prepare_singlet();
  for (const GateOp& g : axis_to_z_ops(0, theta_a, phi_a)) {
    s = apply_gate(s, g);
  }
  for (const GateOp& g : axis_to_z_ops(1, theta_b, phi_b)) {
    s = apply_gate(s, g);
  }
  return s;
}

}  // namespace

AnticorrResult run_anticorrelation(double theta, double phi, long shots,
                                   std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be positive");
  AnticorrResult res;
  res.axis_theta = theta;
  res.axis_phi = phi;
  res.shots = shots;
  res.seed = seed;
  for (long shot = 0; shot < shots; ++shot) {
    ShotRng rng(shot_stream_seed(seed, static_cast<std::uint64_t>(shot)));
    EnvelopeState s = rotated_singlet(theta, phi, theta, phi);
    QubitMeasurement m0 = measure_qubit(s, 0, rng);
    QubitMeasurement m1 = measure_qubit(m0.state, 1, rng);
    res.counts[static_cast<std::size_t>(2 * m0.outcome + m1.outcome)]++;
  }
  res.opposite = res.counts[1] + res.counts[2];
  res.p_opposite =
      static_cast<double>(res.opposite) / static_cast<double>(shots);
  res.marginal_q0_up = static_cast<double>(res.counts[2] + res.counts[3]) /
                       static_cast<double>(shots);
  res.marginal_q1_up = static_cast<double>(res.counts[1] + res.counts[3]) /
                       static_cast<double>(shots);
  return res;
}

Fig3Report fig3_trace() {
  Fig3Report rep;
  EnvelopeState s = apply_gate(prepare_singlet(), GateOp::rx(0, kPi / 2));
  for (int k = 0; k < 4; ++k) {
    rep.amplitudes[static_cast<std::size_t>(k)] = s.amplitudes(k);
    rep.magnitudes[static_cast<std::size_t>(k)] = std::abs(s.amplitudes(k));
  }
  rep.phase_diff_12 =
      wrap_angle(std::arg(s.amplitudes(1)) - std::arg(s.amplitudes(0)));
  rep.phase_diff_34 =
      wrap_angle(std::arg(s.amplitudes(3)) - std::arg(s.amplitudes(2)));

  const Complex y_plus[2] = {Complex(0.0, 1.0) / std::sqrt(2.0),
                             Complex(1.0, 0.0) / std::sqrt(2.0)};
  const Complex y_minus[2] = {Complex(0.0, -1.0) / std::sqrt(2.0),
                              Complex(1.0, 0.0) / std::sqrt(2.0)};

  for (int outcome = 0; outcome < 2; ++outcome) {
    Fig3Branch& br = rep.branches[static_cast<std::size_t>(outcome)];
    br.outcome0 = outcome;
    // Deterministic collapse of qubit 0 onto `outcome`.
    VectorXc post = VectorXc::Zero(4);
    double p = 0.0;
    for (int k = 0; k < 4; ++k) {
      if (bit_of_index(static_cast<std::size_t>(k), 0, 2) == outcome) {
        p += std::norm(s.amplitudes(k));
      }
    }
    br.probability = p;
    for (int k = 0; k < 4; ++k) {
      if (bit_of_index(static_cast<std::size_t>(k), 0, 2) == outcome) {
        post(k) = s.amplitudes(k) / std::sqrt(p);
      }
    }
    for (int k = 0; k < 4; ++k) {
      br.post[static_cast<std::size_t>(k)] = post(k);
    }

    // Qubit 1 state within the surviving pair.
    const int base = outcome == 0 ? 0 : 2;
    const Complex c[2] = {post(base), post(base + 1)};
    auto overlap2 = [&](const Complex axis[2]) {
      return std::norm(std::conj(axis[0]) * c[0] +
                       std::conj(axis[1]) * c[1]);
    };
    br.y_eigen_residual =
        std::max(0.0, 1.0 - std::max(overlap2(y_plus), overlap2(y_minus)));

    EnvelopeState collapsed = make_state(2, post);
    EnvelopeState readout = apply_gate(collapsed, GateOp::rx(1, kPi / 2));
    Eigen::VectorXd probs = probabilities(readout);
    const double p1_up = probs(base + 1);
    br.outcome1 = p1_up > 0.5 ? 1 : 0;
    br.opposite = br.outcome1 != br.outcome0;
  }
  return rep;
}

double singlet_correlator_exact(double a, double b) {
  Eigen::VectorXd p = probabilities(rotated_singlet(a, 0.0, b, 0.0));
  return p(0) - p(1) - p(2) + p(3);
}

namespace {

constexpr double kChshSign[4] = {1.0, 1.0, 1.0, -1.0};

void fill_setting_angles(ChshResult& res, const std::array<double, 2>& a,
                         const std::array<double, 2>& b) {
  res.settings[0].angle_a = a[0];
  res.settings[0].angle_b = b[0];
  res.settings[1].angle_a = a[0];
  res.settings[1].angle_b = b[1];
  res.settings[2].angle_a = a[1];
  res.settings[2].angle_b = b[0];
  res.settings[3].angle_a = a[1];
  res.settings[3].angle_b = b[1];
}

}  // namespace

ChshResult run_chsh_exact(const std::array<double, 2>& a,
                          const std::array<double, 2>& b) {
  ChshResult res;
  res.exact = true;
  fill_setting_angles(res, a, b);
  for (std::size_t i = 0; i < 4; ++i) {
    ChshSetting& st = res.settings[i];
    st.correlator = singlet_correlator_exact(st.angle_a, st.angle_b);
    res.S += kChshSign[i] * st.correlator;
  }
  return res;
}

ChshResult run_chsh_sampled(const std::array<double, 2>& a,
                            const std::array<double, 2>& b,
                            long shots_per_setting, std::uint64_t seed) {
  if (shots_per_setting < 1) {
    throw std::invalid_argument("shots_per_setting must be positive");
  }
  ChshResult res;
  res.exact = false;
  res.shots_per_setting = shots_per_setting;
  res.seed = seed;
  fill_setting_angles(res, a, b);
  double var_sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    ChshSetting& st = res.settings[i];
    const std::uint64_t setting_master = splitmix64(seed) + i;
    for (long shot = 0; shot < shots_per_setting; ++shot) {
      ShotRng rng(
          shot_stream_seed(setting_master, static_cast<std::uint64_t>(shot)));
      EnvelopeState s = rotated_singlet(st.angle_a, 0.0, st.angle_b, 0.0);
      RegisterMeasurement m = measure_all(s, rng);
      st.counts[m.index]++;
    }
    const double n = static_cast<double>(shots_per_setting);
    st.correlator = (static_cast<double>(st.counts[0]) -
                     static_cast<double>(st.counts[1]) -
                     static_cast<double>(st.counts[2]) +
                     static_cast<double>(st.counts[3])) /
                    n;
    st.std_error = std::sqrt(
        std::max(0.0, 1.0 - st.correlator * st.correlator) / n);
    res.S += kChshSign[i] * st.correlator;
    var_sum += st.std_error * st.std_error;
  }
  res.S_std_error = std::sqrt(var_sum);
  return res;
}

BitflipReport run_bitflip_demo(const std::vector<int>& flips,
                               std::uint64_t seed) {
  for (int q : flips) {
    if (q < 0 || q > 2) {
      throw std::invalid_argument("flip qubit must be 0, 1 or 2");
    }
  }
  for (std::size_t i = 0; i < flips.size(); ++i) {
    for (std::size_t j = i + 1; j < flips.size(); ++j) {
      if (flips[i] == flips[j]) {
        throw std::invalid_argument("flip qubits must be distinct");
      }
    }
  }

  const double theta_l = 0.9;
  const double phi_l = 0.6;

  EnvelopeState s = init_ground(3);
  // Put the logical state on qubit 0, then spread it over the triple.
  s = apply_gate(s, GateOp::rx(0, kPi - theta_l));
  s = apply_gate(s, GateOp::rz(0, kPi / 2 - phi_l));
  s = apply_gate(s, GateOp::cnot(0, 1));
  s = apply_gate(s, GateOp::cnot(0, 2));
  for (int q : flips) s = apply_gate(s, GateOp::not_(q));
  s = apply_gate(s, GateOp::cnot(0, 1));
  s = apply_gate(s, GateOp::cnot(0, 2));

  BitflipReport rep;
  rep.flipped = flips;
  rep.seed = seed;
  ShotRng rng(shot_stream_seed(seed, 0));
  QubitMeasurement m1 = measure_qubit(s, 1, rng);
  QubitMeasurement m2 = measure_qubit(m1.state, 2, rng);
  rep.syndrome = {m1.outcome, m2.outcome};
  EnvelopeState after = m2.state;
  if (m1.outcome == 1 && m2.outcome == 1) {
    after = apply_gate(after, GateOp::not_(0));
    rep.corrected = true;
  }

  const EnvelopeState logical = state_from_bloch(theta_l, phi_l);
  const int base = (rep.syndrome[0] << 1) | rep.syndrome[1];
  VectorXc pair(2);
  pair << after.amplitudes(base), after.amplitudes(base + 4);
  rep.fidelity_to_logical = fidelity(pair, logical.amplitudes);
  VectorXc swapped(2);
  swapped << logical.amplitudes(1), logical.amplitudes(0);
  rep.logical_error_overlap = fidelity(swapped, logical.amplitudes);
  return rep;
}

SweepResult gate_fidelity_sweep(const std::vector<double>& ratios,
                                int states_per_case, std::uint64_t seed,
                                const IntegratorConfig& cfg) {
  if (ratios.empty()) throw std::invalid_argument("need at least one ratio");
  if (states_per_case < 1) {
    throw std::invalid_argument("states_per_case must be positive");
  }

  struct Case {
    GateOp gate;
    int n_qubits;
  };
  // One case per primitive pulse construction. Rotation angles are integer
  // multiples of pi/25 so that segment durations are whole half-periods of
  // the carrier at every ratio in the standard {0.04, 0.02, 0.01} grid: the
  // final-time demodulation then samples the counter-rotating ripple at the
  // same phase for every ratio, and the infidelity falls cleanly as the
  // square of the ratio. Angles not commensurate with the grid alias the
  // ripple and need not fall monotonically between neighboring ratios, even
  // though the quadratic envelope still shrinks.
  const std::vector<Case> cases = {
      {GateOp::rz(0, 6.0 * kPi / 25.0), 1},
      {GateOp::rx(0, 15.0 * kPi / 25.0), 1},
      {GateOp::not_(0), 1},
      {GateOp::rz(1, 18.0 * kPi / 25.0), 2},
      {GateOp::rx(0, 9.0 * kPi / 25.0), 2},
      {GateOp::cnot(0, 1), 2},
      {GateOp::cphase(0, 1, 17.0 * kPi / 25.0), 2},
      {GateOp::swap(0, 1), 2},
  };

  SweepResult res;
  res.ratios = ratios;
  res.states_per_case = states_per_case;
  res.seed = seed;
  res.all_monotone = true;
  res.min_fidelity_finest = 1.0;

  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const Case& c = cases[ci];
    SweepCaseResult cr;
    cr.gate = print_gate(c.gate);
    cr.n_qubits = c.n_qubits;

    const Eigen::Index dim = Eigen::Index(1) << c.n_qubits;
    const MatrixXc u_exact = unitary_of_gate(c.gate, c.n_qubits);

    // Fixed pseudo-random initial states, identical across ratios.
    std::vector<EnvelopeState> states;
    ShotRng gen(shot_stream_seed(seed, ci));
    for (int si = 0; si < states_per_case; ++si) {
      VectorXc a(dim);
      for (Eigen::Index k = 0; k < dim; ++k) {
        const double r1 = gen.uniform();
        const double r2 = gen.uniform();
        const double mag = std::sqrt(-2.0 * std::log(1.0 - r1));
        a(k) = std::polar(mag, kTwoPi * r2);
      }
      a /= std::sqrt(a.squaredNorm());
      states.push_back(make_state(c.n_qubits, std::move(a)));
    }

    for (double ratio : ratios) {
      const PhysicalParams params = params_for_ratio(ratio);
      ControlSchedule sched;
      sched.n_qubits = c.n_qubits;
      sched.params = params;
      for (auto& seg : compile_gate(c.gate, c.n_qubits, params)) {
        sched.items.emplace_back(std::move(seg));
      }

      SweepCell cell;
      cell.ratio = ratio;
      cell.min_fidelity = 1.0;
      cell.max_infidelity = 0.0;
      double inf_sum = 0.0;
      for (const EnvelopeState& st : states) {
        NewtonRunResult run = simulate_schedule(st, sched, cfg);
        const VectorXc target = u_exact * st.amplitudes;
        const double fid = fidelity(run.state.amplitudes, target);
        cell.min_fidelity = std::min(cell.min_fidelity, fid);
        cell.max_infidelity = std::max(cell.max_infidelity, 1.0 - fid);
        inf_sum += 1.0 - fid;
      }
      cell.mean_infidelity = inf_sum / static_cast<double>(states.size());
      cr.cells.push_back(cell);
    }

    cr.monotone = true;
    for (std::size_t i = 1; i < cr.cells.size(); ++i) {
      const double prev = cr.cells[i - 1].mean_infidelity;
      const double cur = cr.cells[i].mean_infidelity;
      if (cur > std::max(prev, kSweepInfidelityFloor)) {
        cr.monotone = false;
      }
    }
    res.all_monotone = res.all_monotone && cr.monotone;
    const SweepCell& finest = cr.cells.back();
    res.min_fidelity_finest =
        std::min(res.min_fidelity_finest, finest.min_fidelity);
    res.cases.push_back(std::move(cr));
  }
  return res;
}

}  // namespace qpend
