// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "qpend/envelope.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace qpend {

namespace {

void for_each_pair(int qubit, int n_qubits, Eigen::Index dim,
                   const std::function<void(Eigen::Index, Eigen::Index)>& f) {
  const std::size_t stride = std::size_t(1) << (n_qubits - 1 - qubit);
  for (std::size_t k = 0; k < std::size_t(dim); ++k) {
    if ((k & stride) == 0) {
      f(Eigen::Index(k), Eigen::Index(k + stride));
    }
  }
}

void rotate_pair(VectorXc& a, Eigen::Index lo, Eigen::Index hi,
                 const Complex& e) {
  const Complex s = 0.5 * (a(lo) + a(hi));
  const Complex d = 0.5 * (a(lo) - a(hi));
  a(lo) = s + e * d;
  a(hi) = s - e * d;
}

}  // namespace

EnvelopeState apply_gate(const EnvelopeState& state, const GateOp& g) {
  validate_gate(g, state.n_qubits);
  EnvelopeState out = state;
  VectorXc& a = out.amplitudes;
  const Eigen::Index dim = a.size();
  switch (g.kind) {
    case GateKind::kRz: {
      const Complex e = std::polar(1.0, g.angle);
      for (Eigen::Index k = 0; k < dim; ++k) {
        if (bit_of_index(std::size_t(k), g.q0, state.n_qubits)) a(k) *= e;
      }
      break;
    }
    case GateKind::kRx: {
      const Complex e = std::polar(1.0, g.angle);
      for_each_pair(g.q0, state.n_qubits, dim,
                    [&](Eigen::Index lo, Eigen::Index hi) {
                      rotate_pair(a, lo, hi, e);
                    });
      break;
    }
    case GateKind::kNot: {
      for_each_pair(g.q0, state.n_qubits, dim,
                    [&](Eigen::Index lo, Eigen::Index hi) {
                      std::swap(a(lo), a(hi));
                    });
      break;
    }
    case GateKind::kH: {
      out = apply_gate(out, GateOp::rz(g.q0, kPi / 2));
      out = apply_gate(out, GateOp::rx(g.q0, kPi / 2));
      out = apply_gate(out, GateOp::rz(g.q0, kPi / 2));
      break;
    }
    case GateKind::kCnot: {
      const std::size_t stride =
          std::size_t(1) << (state.n_qubits - 1 - g.q1);
      for (std::size_t k = 0; k < std::size_t(dim); ++k) {
        if (bit_of_index(k, g.q0, state.n_qubits) == 1 &&
            bit_of_index(k, g.q1, state.n_qubits) == 0) {
          std::swap(a(Eigen::Index(k)), a(Eigen::Index(k + stride)));
        }
      }
      break;
    }
    case GateKind::kCphase: {
      const Complex e = std::polar(1.0, g.angle);
      for (Eigen::Index k = 0; k < dim; ++k) {
        if (bit_of_index(std::size_t(k), g.q0, state.n_qubits) &&
            bit_of_index(std::size_t(k), g.q1, state.n_qubits)) {
          a(k) *= e;
        }
      }
      break;
    }
    case GateKind::kSwap: {
      const std::size_t s0 = std::size_t(1) << (state.n_qubits - 1 - g.q0);
      const std::size_t s1 = std::size_t(1) << (state.n_qubits - 1 - g.q1);
      for (std::size_t k = 0; k < std::size_t(dim); ++k) {
        if (bit_of_index(k, g.q0, state.n_qubits) == 0 &&
            bit_of_index(k, g.q1, state.n_qubits) == 1) {
          std::swap(a(Eigen::Index(k)), a(Eigen::Index(k + s0 - s1)));
        }
      }
      break;
    }
    case GateKind::kMeasure:
    case GateKind::kMeasureAll:
      throw std::invalid_argument(
          "apply_gate: measurements need a random stream; use run_circuit");
  }
  return out;
}

EnvelopeState apply_segment(const EnvelopeState& state,
                            const ControlSegment& seg) {
  validate_segment(seg, state.n_qubits);
  EnvelopeState out = state;
  VectorXc& a = out.amplitudes;
  for (const auto& [k, delta] : seg.detunings) {
    a(k) *= std::polar(1.0, delta * seg.duration);
  }
  for (const Spring& sp : seg.springs) {
    rotate_pair(a, sp.i, sp.j, std::polar(1.0, sp.splitting * seg.duration));
  }
  return out;
}

EnvelopeState apply_schedule(const EnvelopeState& state,
                             const ControlSchedule& sched) {
  EnvelopeState out = state;
  for (const ScheduleItem& it : sched.items) {
    if (std::holds_alternative<MeasureMarker>(it)) {
      throw std::invalid_argument(
          "apply_schedule: schedule contains a measurement; use run_schedule");
    }
    out = apply_segment(out, std::get<ControlSegment>(it));
  }
  return out;
}

EnvelopeState prepare_singlet() {
  VectorXc a(4);
  const double r = 1.0 / std::sqrt(2.0);
  a << 0.0, r, -r, 0.0;
  return make_state(2, std::move(a));
}

namespace {

void do_measure(EnvelopeState& state, const MeasureMarker& m, ShotRng& rng,
                RunResult& res) {
  if (m.qubit < 0) {
    RegisterMeasurement r = measure_all(state, rng);
    state = std::move(r.state);
    res.outcome_bits += r.bits;
    res.records.push_back(std::move(r.record));
  } else {
    QubitMeasurement r = measure_qubit(state, m.qubit, rng);
    state = std::move(r.state);
    res.outcome_bits += r.outcome ? "1" : "0";
    res.records.push_back(std::move(r.record));
  }
}

}  // namespace

RunResult run_circuit(const Circuit& c, ShotRng& rng) {
  validate_circuit(c);
  RunResult res;
  res.state = init_ground(c.n_qubits);
  for (const GateOp& g : c.ops) {
    if (g.kind == GateKind::kMeasure) {
      do_measure(res.state, MeasureMarker{g.q0}, rng, res);
    } else if (g.kind == GateKind::kMeasureAll) {
      do_measure(res.state, MeasureMarker{-1}, rng, res);
    } else {
      res.state = apply_gate(res.state, g);
    }
  }
  return res;
}

RunResult run_schedule(const ControlSchedule& sched, ShotRng& rng) {
  RunResult res;
  res.state = init_ground(sched.n_qubits);
  for (const ScheduleItem& it : sched.items) {
    if (const auto* m = std::get_if<MeasureMarker>(&it)) {
      do_measure(res.state, *m, rng, res);
    } else {
      res.state = apply_segment(res.state, std::get<ControlSegment>(it));
    }
  }
  return res;
}

}  // namespace qpend
