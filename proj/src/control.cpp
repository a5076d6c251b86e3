// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "qpend/control.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "qpend/state.hpp"

namespace qpend {

void validate_params(const PhysicalParams& p) {
  if (!(p.omega0 > 0.0) || !std::isfinite(p.omega0)) {
    throw std::invalid_argument("omega0 must be positive and finite");
  }
  if (!(p.mass > 0.0) || !std::isfinite(p.mass)) {
    throw std::invalid_argument("mass must be positive and finite");
  }
  if (!(p.delta_omega_budget > 0.0) ||
      !std::isfinite(p.delta_omega_budget) ||
      p.delta_omega_budget >= p.omega0) {
    throw std::invalid_argument(
        "delta_omega_budget must be positive and below omega0");
  }
}

PhysicalParams params_for_ratio(double ratio) {
  PhysicalParams p;
  p.delta_omega_budget = ratio * p.omega0;
  validate_params(p);
  return p;
}

bool operator==(const Spring& a, const Spring& b) {
  return a.i == b.i && a.j == b.j && a.splitting == b.splitting;
}

bool operator==(const ControlSegment& a, const ControlSegment& b) {
  return a.duration == b.duration && a.detunings == b.detunings &&
         a.springs == b.springs;
}

bool ControlSchedule::has_measurements() const {
  return std::any_of(items.begin(), items.end(), [](const ScheduleItem& it) {
    return std::holds_alternative<MeasureMarker>(it);
  });
}

double ControlSchedule::total_duration() const {
  double t = 0.0;
  for (const ScheduleItem& it : items) {
    if (const auto* seg = std::get_if<ControlSegment>(&it)) {
      t += seg->duration;
    }
  }
  return t;
}

double spring_constant_for_splitting(double splitting,
                                     const PhysicalParams& p) {
  const double wa = p.omega0 + splitting;
  return p.mass * (wa * wa - p.omega0 * p.omega0) / 2.0;
}

double splitting_of_spring_constant(double kappa, const PhysicalParams& p) {
  const double wa2 = p.omega0 * p.omega0 + 2.0 * kappa / p.mass;
  if (wa2 <= 0.0) {
    throw std::invalid_argument("spring constant puts the mode below zero");
  }
  return std::sqrt(wa2) - p.omega0;
}

namespace {

// Angle into (0, 2 pi]: nonzero multiples of 2 pi keep a full turn, only
// an exact 0 returns 0, which callers treat as "no segment".
double normalize_rotation(double angle) {
  if (angle == 0.0) return 0.0;
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r == 0.0) r = kTwoPi;
  return r;
}

std::size_t stride_of(int qubit, int n_qubits) {
  return std::size_t(1) << (n_qubits - 1 - qubit);
}

ControlSegment detuning_segment(double angle, int n_qubits,
                                const PhysicalParams& p,
                                const std::vector<std::size_t>& indices) {
  ControlSegment seg;
  seg.duration = angle / p.delta_omega_budget;
  for (std::size_t k : indices) {
    seg.detunings[static_cast<int>(k)] = p.delta_omega_budget;
  }
  return seg;
}

ControlSegment spring_segment(double angle, const PhysicalParams& p,
                              const std::vector<std::pair<std::size_t,
                                                          std::size_t>>&
                                  pairs) {
  ControlSegment seg;
  seg.duration = angle / p.delta_omega_budget;
  for (auto [i, j] : pairs) {
    if (i > j) std::swap(i, j);
    seg.springs.push_back({static_cast<int>(i), static_cast<int>(j),
                           p.delta_omega_budget});
  }
  std::sort(seg.springs.begin(), seg.springs.end(),
            [](const Spring& a, const Spring& b) { return a.i < b.i; });
  return seg;
}

}  // namespace

std::vector<ControlSegment> compile_gate(const GateOp& g, int n_qubits,
                                         const PhysicalParams& p) {
  validate_gate(g, n_qubits);
  validate_params(p);
  if (is_measurement(g.kind)) {
    throw std::invalid_argument("measurements do not compile to segments");
  }
  const std::size_t dim = std::size_t(1) << n_qubits;

  auto indices_with_bit = [&](int qubit, int value) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < dim; ++k) {
      if (bit_of_index(k, qubit, n_qubits) == value) out.push_back(k);
    }
    return out;
  };

  switch (g.kind) {
    case GateKind::kRz: {
      double a = normalize_rotation(g.angle);
      if (a == 0.0) return {};
      return {detuning_segment(a, n_qubits, p, indices_with_bit(g.q0, 1))};
    }
    case GateKind::kRx:
    case GateKind::kNot: {
      double a = g.kind == GateKind::kNot ? kPi : normalize_rotation(g.angle);
      if (a == 0.0) return {};
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      const std::size_t stride = stride_of(g.q0, n_qubits);
      for (std::size_t k : indices_with_bit(g.q0, 0)) {
        pairs.emplace_back(k, k + stride);
      }
      return {spring_segment(a, p, pairs)};
    }
    case GateKind::kH: {
      std::vector<ControlSegment> segs =
          compile_gate(GateOp::rz(g.q0, kPi / 2), n_qubits, p);
      for (auto& s :
           compile_gate(GateOp::rx(g.q0, kPi / 2), n_qubits, p)) {
        segs.push_back(std::move(s));
      }
      for (auto& s :
           compile_gate(GateOp::rz(g.q0, kPi / 2), n_qubits, p)) {
        segs.push_back(std::move(s));
      }
      return segs;
    }
    case GateKind::kCnot: {
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      const std::size_t stride = stride_of(g.q1, n_qubits);
      for (std::size_t k = 0; k < dim; ++k) {
        if (bit_of_index(k, g.q0, n_qubits) == 1 &&
            bit_of_index(k, g.q1, n_qubits) == 0) {
          pairs.emplace_back(k, k + stride);
        }
      }
      return {spring_segment(kPi, p, pairs)};
    }
    case GateKind::kCphase: {
      double a = normalize_rotation(g.angle);
      if (a == 0.0) return {};
      std::vector<std::size_t> both;
      for (std::size_t k = 0; k < dim; ++k) {
        if (bit_of_index(k, g.q0, n_qubits) == 1 &&
            bit_of_index(k, g.q1, n_qubits) == 1) {
          both.push_back(k);
        }
      }
      return {detuning_segment(a, n_qubits, p, both)};
    }
    case GateKind::kSwap: {
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      const std::size_t s0 = stride_of(g.q0, n_qubits);
      const std::size_t s1 = stride_of(g.q1, n_qubits);
      for (std::size_t k = 0; k < dim; ++k) {
        if (bit_of_index(k, g.q0, n_qubits) == 0 &&
            bit_of_index(k, g.q1, n_qubits) == 1) {
          pairs.emplace_back(k, k + s0 - s1);
        }
      }
      return {spring_segment(kPi, p, pairs)};
    }
    default:
      throw std::logic_error("unreachable gate kind");
  }
}

ControlSchedule compile_circuit(const Circuit& c, const PhysicalParams& p) {
  validate_circuit(c);
  validate_params(p);
  ControlSchedule sched;
  sched.n_qubits = c.n_qubits;
  sched.params = p;
  for (const GateOp& g : c.ops) {
    if (g.kind == GateKind::kMeasure) {
      sched.items.emplace_back(MeasureMarker{g.q0});
    } else if (g.kind == GateKind::kMeasureAll) {
      sched.items.emplace_back(MeasureMarker{-1});
    } else {
      for (auto& seg : compile_gate(g, c.n_qubits, p)) {
        sched.items.emplace_back(std::move(seg));
      }
    }
  }
  return sched;
}

void validate_segment(const ControlSegment& s, int n_qubits) {
  const int dim = 1 << n_qubits;
  if (!(s.duration > 0.0) || !std::isfinite(s.duration)) {
    throw std::invalid_argument("segment duration must be positive");
  }
  std::set<int> sprung;
  for (const Spring& sp : s.springs) {
    if (sp.i < 0 || sp.j >= dim || sp.i >= sp.j) {
      throw std::invalid_argument("spring endpoints must satisfy 0 <= i < j < " +
                                  std::to_string(dim));
    }
    if (!(sp.splitting > 0.0) || !std::isfinite(sp.splitting)) {
      throw std::invalid_argument("spring splitting must be positive");
    }
    if (!sprung.insert(sp.i).second || !sprung.insert(sp.j).second) {
      throw std::invalid_argument("springs overlap on a pendulum");
    }
  }
  for (const auto& [k, delta] : s.detunings) {
    if (k < 0 || k >= dim) {
      throw std::invalid_argument("detuned pendulum index out of range");
    }
    if (!std::isfinite(delta)) {
      throw std::invalid_argument("detuning must be finite");
    }
    if (sprung.count(k)) {
      throw std::invalid_argument(
          "pendulum cannot be both detuned and sprung");
    }
  }
}

Eigen::MatrixXd segment_generator(const ControlSegment& s, int n_qubits) {
  validate_segment(s, n_qubits);
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& [k, delta] : s.detunings) g(k, k) += delta;
  for (const Spring& sp : s.springs) {
    const double half = sp.splitting / 2.0;
    g(sp.i, sp.i) += half;
    g(sp.j, sp.j) += half;
    g(sp.i, sp.j) -= half;
    g(sp.j, sp.i) -= half;
  }
  return g;
}

MatrixXc schedule_unitary(const ControlSchedule& sched) {
  const Eigen::Index dim = Eigen::Index(1) << sched.n_qubits;
  MatrixXc u = MatrixXc::Identity(dim, dim);
  for (const ScheduleItem& it : sched.items) {
    if (std::holds_alternative<MeasureMarker>(it)) {
      throw std::invalid_argument(
          "schedule_unitary: schedule contains a measurement");
    }
    const auto& seg = std::get<ControlSegment>(it);
    u = expi_symmetric(segment_generator(seg, sched.n_qubits),
                       seg.duration) *
        u;
  }
  return u;
}

ControlSchedule rescale_schedule(const ControlSchedule& sched,
                                 double new_budget) {
  if (!(new_budget > 0.0) || !std::isfinite(new_budget)) {
    throw std::invalid_argument("new budget must be positive");
  }
  const double old_budget = sched.params.delta_omega_budget;
  const double strength_factor = new_budget / old_budget;
  ControlSchedule out = sched;
  out.params.delta_omega_budget = new_budget;
  validate_params(out.params);
  for (ScheduleItem& it : out.items) {
    if (auto* seg = std::get_if<ControlSegment>(&it)) {
      seg->duration /= strength_factor;
      for (auto& [k, delta] : seg->detunings) delta *= strength_factor;
      for (Spring& sp : seg->springs) sp.splitting *= strength_factor;
    }
  }
  return out;
}

}  // namespace qpend
