// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "qpend/newton.hpp"

#include <cmath>
#include <stdexcept>

#include "qpend/errors.hpp"

namespace qpend {

MechanicalState synthesize_initial(const EnvelopeState& state,
                                   const PhysicalParams& p) {
  validate_params(p);
  if (norm_error(state) > 1e-9) {
    throw std::invalid_argument(
        "synthesize_initial needs a normalized envelope");
  }
  MechanicalState m;
  m.positions = state.amplitudes.real();
  m.velocities = -p.omega0 * state.amplitudes.imag();
  m.time = 0.0;
  return m;
}

EnvelopeState demodulate(const MechanicalState& mech,
                         const PhysicalParams& p) {
  const Eigen::Index dim = mech.positions.size();
  int n_qubits = 0;
  while ((Eigen::Index(1) << n_qubits) < dim) ++n_qubits;
  if ((Eigen::Index(1) << n_qubits) != dim) {
    throw std::invalid_argument("pendulum count is not a power of two");
  }
  EnvelopeState s;
  s.n_qubits = n_qubits;
  s.amplitudes.resize(dim);
  const Complex carrier = std::polar(1.0, -p.omega0 * mech.time);
  for (Eigen::Index k = 0; k < dim; ++k) {
    s.amplitudes(k) =
        Complex(mech.positions(k), -mech.velocities(k) / p.omega0) * carrier;
  }
  return s;
}

namespace {

// Per-segment force constants.
struct SegmentForces {
  Eigen::VectorXd omega_sq;  // restoring coefficient per pendulum
  std::vector<std::pair<int, int>> spring_idx;
  std::vector<double> kappa_over_m;
  double omega_max = 0.0;
};

SegmentForces build_forces(const ControlSegment& seg, Eigen::Index dim,
                           const PhysicalParams& p) {
  SegmentForces f;
  f.omega_sq = Eigen::VectorXd::Constant(dim, p.omega0 * p.omega0);
  f.omega_max = p.omega0;
  for (const auto& [k, delta] : seg.detunings) {
    const double w = p.omega0 + delta;
    f.omega_sq(k) = w * w;
    f.omega_max = std::max(f.omega_max, std::abs(w));
  }
  for (const Spring& sp : seg.springs) {
    f.spring_idx.emplace_back(sp.i, sp.j);
    f.kappa_over_m.push_back(
        spring_constant_for_splitting(sp.splitting, p) / p.mass);
    f.omega_max = std::max(f.omega_max, p.omega0 + sp.splitting);
  }
  return f;
}

void acceleration(const SegmentForces& f, const Eigen::VectorXd& x,
                  Eigen::VectorXd& a) {
  a = -f.omega_sq.cwiseProduct(x);
  for (std::size_t s = 0; s < f.spring_idx.size(); ++s) {
    const auto [i, j] = f.spring_idx[s];
    const double pull = f.kappa_over_m[s] * (x(i) - x(j));
    a(i) -= pull;
    a(j) += pull;
  }
}

// One classical RK4 step of (x, v) under the segment forces.
void rk4_step(const SegmentForces& f, double h, Eigen::VectorXd& x,
              Eigen::VectorXd& v, Eigen::VectorXd scratch[8]) {
  Eigen::VectorXd& a1 = scratch[0];
  Eigen::VectorXd& a2 = scratch[1];
  Eigen::VectorXd& a3 = scratch[2];
  Eigen::VectorXd& a4 = scratch[3];
  Eigen::VectorXd& xt = scratch[4];
  Eigen::VectorXd& v2 = scratch[5];
  Eigen::VectorXd& v3 = scratch[6];
  Eigen::VectorXd& v4 = scratch[7];

  acceleration(f, x, a1);
  xt = x + 0.5 * h * v;
  v2 = v + 0.5 * h * a1;
  acceleration(f, xt, a2);
  xt = x + 0.5 * h * v2;
  v3 = v + 0.5 * h * a2;
  acceleration(f, xt, a3);
  xt = x + h * v3;
  v4 = v + h * a3;
  acceleration(f, xt, a4);

  x += (h / 6.0) * (v + 2.0 * v2 + 2.0 * v3 + v4);
  v += (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
}

}  // namespace

Eigen::VectorXd pendulum_energies(const MechanicalState& mech,
                                  const PhysicalParams& p,
                                  const ControlSegment* active) {
  const Eigen::Index dim = mech.positions.size();
  Eigen::VectorXd w2 = Eigen::VectorXd::Constant(dim, p.omega0 * p.omega0);
  if (active) {
    for (const auto& [k, delta] : active->detunings) {
      const double w = p.omega0 + delta;
      w2(k) = w * w;
    }
  }
  return 0.5 * p.mass *
         (mech.velocities.cwiseAbs2() +
          w2.cwiseProduct(mech.positions.cwiseAbs2()));
}

double total_energy(const MechanicalState& mech, const PhysicalParams& p,
                    const ControlSegment* active) {
  double e = pendulum_energies(mech, p, active).sum();
  if (active) {
    for (const Spring& sp : active->springs) {
      const double kappa = spring_constant_for_splitting(sp.splitting, p);
      const double d = mech.positions(sp.i) - mech.positions(sp.j);
      e += 0.5 * kappa * d * d;
    }
  }
  return e;
}

StopReport stop_and_renormalize(const MechanicalState& mech,
                                const std::vector<int>& keep,
                                const PhysicalParams& p) {
  if (keep.empty()) {
    throw std::domain_error("stop_and_renormalize with nothing kept");
  }
  Eigen::VectorXd energies = pendulum_energies(mech, p);
  const double total = energies.sum();
  double kept = 0.0;
  for (int k : keep) kept += energies(k);
  if (!(kept > 0.0)) {
    throw std::domain_error("kept pendulums hold no energy");
  }
  StopReport r;
  r.kept_fraction = kept / total;
  r.state = mech;
  r.state.positions.setZero();
  r.state.velocities.setZero();
  const double scale = std::sqrt(total / kept);
  for (int k : keep) {
    r.state.positions(k) = mech.positions(k) * scale;
    r.state.velocities(k) = mech.velocities(k) * scale;
  }
  return r;
}

namespace {

void mechanical_measure(MechanicalState& mech, const MeasureMarker& marker,
                        int n_qubits, const PhysicalParams& p, ShotRng& rng,
                        NewtonRunResult& res) {
  Eigen::VectorXd energies = pendulum_energies(mech, p);
  const double total = energies.sum();
  if (!(total > 0.0)) {
    throw std::domain_error("measurement on a register with no energy");
  }

  MeasurementRecord rec;
  std::vector<int> keep;
  if (marker.qubit < 0) {
    Eigen::VectorXd probs = energies / total;
    const std::size_t idx = choose_categorical(probs, rng.uniform());
    keep.push_back(static_cast<int>(idx));
    rec.qubit = -1;
    rec.outcome = bits_of_index(idx, n_qubits);
    rec.pre_probabilities.assign(probs.data(), probs.data() + probs.size());
    rec.energy_unit_factor = probs(Eigen::Index(idx));
    res.outcome_bits += rec.outcome;
  } else {
    double group[2] = {0.0, 0.0};
    for (Eigen::Index k = 0; k < energies.size(); ++k) {
      group[bit_of_index(std::size_t(k), marker.qubit, n_qubits)] +=
          energies(k);
    }
    const int outcome = choose_binary(group[0] / total, rng.uniform());
    for (Eigen::Index k = 0; k < energies.size(); ++k) {
      if (bit_of_index(std::size_t(k), marker.qubit, n_qubits) == outcome) {
        keep.push_back(static_cast<int>(k));
      }
    }
    rec.qubit = marker.qubit;
    rec.outcome = outcome ? "1" : "0";
    rec.pre_probabilities = {group[0] / total, group[1] / total};
    rec.energy_unit_factor = group[outcome] / total;
    res.outcome_bits += rec.outcome;
  }

  StopReport stop = stop_and_renormalize(mech, keep, p);
  mech = std::move(stop.state);
  res.records.push_back(std::move(rec));
}

}  // namespace

NewtonRunResult simulate_schedule(const EnvelopeState& initial,
                                  const ControlSchedule& sched,
                                  const IntegratorConfig& cfg, ShotRng* rng,
                                  const TraceSink* trace) {
  const PhysicalParams& p = sched.params;
  validate_params(p);
  if (cfg.steps_per_carrier_period < kMinStepsPerCarrierPeriod) {
    throw std::invalid_argument(
        "steps_per_carrier_period must be at least " +
        std::to_string(kMinStepsPerCarrierPeriod));
  }
  if (sched.has_measurements() && rng == nullptr) {
    throw std::invalid_argument(
        "schedule contains measurements but no random stream was given");
  }
  if (initial.dim() != (Eigen::Index(1) << sched.n_qubits)) {
    throw std::invalid_argument("initial state does not match the schedule");
  }

  const double period = kTwoPi / p.omega0;
  const double h = period / cfg.steps_per_carrier_period;

  NewtonRunResult res;
  MechanicalState mech = synthesize_initial(initial, p);
  Eigen::VectorXd scratch[8];

  for (const ScheduleItem& it : sched.items) {
    if (const auto* marker = std::get_if<MeasureMarker>(&it)) {
      mechanical_measure(mech, *marker, sched.n_qubits, p, *rng, res);
      continue;
    }
    const ControlSegment& seg = std::get<ControlSegment>(it);
    validate_segment(seg, sched.n_qubits);
    SegmentForces forces = build_forces(seg, mech.positions.size(), p);
    if (forces.omega_max * h > 0.5) {
      throw NumericalGuardError(
          "integration step too coarse: omega_max * h = " +
          std::to_string(forces.omega_max * h) + " exceeds 0.5");
    }

    SegmentReport rep;
    rep.duration_requested = seg.duration;
    rep.steps = static_cast<long>(std::ceil(seg.duration / h - 1e-9));
    if (rep.steps < 1) rep.steps = 1;
    rep.duration_executed = static_cast<double>(rep.steps) * h;
    rep.energy_start = total_energy(mech, p, &seg);

    const double t0 = mech.time;
    for (long i = 0; i < rep.steps; ++i) {
      rk4_step(forces, h, mech.positions, mech.velocities, scratch);
      mech.time = t0 + static_cast<double>(i + 1) * h;
      if (trace && *trace) {
        (*trace)(mech.time, pendulum_energies(mech, p, &seg),
                 total_energy(mech, p, &seg));
      }
    }

    rep.energy_end = total_energy(mech, p, &seg);
    const double periods = rep.duration_executed / period;
    rep.drift_per_period =
        std::abs(rep.energy_end / rep.energy_start - 1.0) / periods;
    res.max_drift_per_period =
        std::max(res.max_drift_per_period, rep.drift_per_period);
    res.segment_reports.push_back(rep);
  }

  res.mech = mech;
  EnvelopeState demod = demodulate(mech, p);
  res.envelope_norm = std::sqrt(demod.amplitudes.squaredNorm());
  demod.amplitudes /= res.envelope_norm;
  res.state = std::move(demod);
  return res;
}

}  // namespace qpend
