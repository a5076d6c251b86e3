// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qpend/control.hpp"
#include "test_util.hpp"

using namespace qpend;

namespace {

const PhysicalParams kParams;  // defaults: omega0 = 2 pi, budget = omega0/100

ControlSchedule schedule_of(const GateOp& g, int n_qubits,
                            const PhysicalParams& p = kParams) {
  ControlSchedule s;
  s.n_qubits = n_qubits;
  s.params = p;
  for (auto& seg : compile_gate(g, n_qubits, p)) {
    s.items.emplace_back(std::move(seg));
  }
  return s;
}

}  // namespace

TEST_CASE("rz compiles to a detuning on the upper-level pendulums") {
  auto segs = compile_gate(GateOp::rz(0, kPi), 1, kParams);
  REQUIRE(segs.size() == 1);
  const ControlSegment& s = segs[0];
  CHECK(s.duration ==
        doctest::Approx(kPi / kParams.delta_omega_budget).epsilon(1e-14));
  CHECK(s.springs.empty());
  REQUIRE(s.detunings.size() == 1);
  CHECK(s.detunings.at(1) == kParams.delta_omega_budget);

  // On qubit 1 of two, the upper-level pendulums are indices 1 and 3.
  auto segs2 = compile_gate(GateOp::rz(1, kPi / 2), 2, kParams);
  REQUIRE(segs2.size() == 1);
  CHECK(segs2[0].detunings.size() == 2);
  CHECK(segs2[0].detunings.count(1) == 1);
  CHECK(segs2[0].detunings.count(3) == 1);
}

TEST_CASE("rx compiles to springs pairing lower with upper") {
  auto segs = compile_gate(GateOp::rx(1, kPi / 2), 2, kParams);
  REQUIRE(segs.size() == 1);
  const ControlSegment& s = segs[0];
  CHECK(s.detunings.empty());
  REQUIRE(s.springs.size() == 2);
  CHECK(s.springs[0].i == 0);
  CHECK(s.springs[0].j == 1);
  CHECK(s.springs[1].i == 2);
  CHECK(s.springs[1].j == 3);
  CHECK(s.springs[0].splitting == kParams.delta_omega_budget);
}

TEST_CASE("cnot couples pendulums 3 and 4") {
  auto segs = compile_gate(GateOp::cnot(0, 1), 2, kParams);
  REQUIRE(segs.size() == 1);
  const ControlSegment& s = segs[0];
  CHECK(s.duration ==
        doctest::Approx(kPi / kParams.delta_omega_budget).epsilon(1e-14));
  REQUIRE(s.springs.size() == 1);
  CHECK(s.springs[0].i == 2);
  CHECK(s.springs[0].j == 3);
}

TEST_CASE("swap couples pendulums 2 and 3") {
  auto segs = compile_gate(GateOp::swap(0, 1), 2, kParams);
  REQUIRE(segs.size() == 1);
  REQUIRE(segs[0].springs.size() == 1);
  CHECK(segs[0].springs[0].i == 1);
  CHECK(segs[0].springs[0].j == 2);
}

TEST_CASE("cphase detunes only the doubly excited pendulum") {
  auto segs = compile_gate(GateOp::cphase(0, 1, kPi / 2), 2, kParams);
  REQUIRE(segs.size() == 1);
  REQUIRE(segs[0].detunings.size() == 1);
  CHECK(segs[0].detunings.count(3) == 1);
}

TEST_CASE("angle normalization into (0, 2 pi]") {
  CHECK(compile_gate(GateOp::rz(0, 0.0), 1, kParams).empty());
  CHECK(compile_gate(GateOp::cphase(0, 1, 0.0), 2, kParams).empty());

  // A full turn keeps its full duration.
  auto full = compile_gate(GateOp::rz(0, kTwoPi), 1, kParams);
  REQUIRE(full.size() == 1);
  CHECK(full[0].duration ==
        doctest::Approx(kTwoPi / kParams.delta_omega_budget));

  // Negative angles wrap up by 2 pi.
  auto neg = compile_gate(GateOp::rz(0, -kPi / 2), 1, kParams);
  REQUIRE(neg.size() == 1);
  CHECK(neg[0].duration ==
        doctest::Approx((3 * kPi / 2) / kParams.delta_omega_budget)
            .epsilon(1e-12));

  // Beyond a full turn reduces.
  auto wrapped = compile_gate(GateOp::rz(0, kTwoPi + kPi), 1, kParams);
  REQUIRE(wrapped.size() == 1);
  CHECK(wrapped[0].duration ==
        doctest::Approx(kPi / kParams.delta_omega_budget).epsilon(1e-12));
}

TEST_CASE("h expands to three segments") {
  auto segs = compile_gate(GateOp::h(0), 1, kParams);
  REQUIRE(segs.size() == 3);
  CHECK(segs[0].springs.empty());
  CHECK_FALSE(segs[1].springs.empty());
  CHECK(segs[2].springs.empty());
}

TEST_CASE("spring constant for splitting") {
  PhysicalParams p;
  p.omega0 = 3.0;
  p.mass = 2.0;
  const double dw = 0.25;
  // kappa = m ((w0+dw)^2 - w0^2)/2 computed by hand.
  const double expect = 2.0 * ((3.25 * 3.25) - 9.0) / 2.0;
  CHECK(spring_constant_for_splitting(dw, p) ==
        doctest::Approx(expect).epsilon(1e-14));
  CHECK(spring_constant_for_splitting(0.0, p) == 0.0);
  CHECK(splitting_of_spring_constant(spring_constant_for_splitting(dw, p),
                                     p) == doctest::Approx(dw).epsilon(1e-12));
  // Linear in mass.
  PhysicalParams p2 = p;
  p2.mass = 4.0;
  CHECK(spring_constant_for_splitting(dw, p2) ==
        doctest::Approx(2.0 * expect).epsilon(1e-14));
}

TEST_CASE("segment generator structure") {
  ControlSegment seg;
  seg.duration = 1.0;
  seg.detunings[1] = 0.3;
  Eigen::MatrixXd g = segment_generator(seg, 1);
  CHECK(g(0, 0) == 0.0);
  CHECK(g(1, 1) == 0.3);
  CHECK(g(0, 1) == 0.0);

  ControlSegment spring;
  spring.duration = 1.0;
  spring.springs.push_back({0, 1, 0.4});
  Eigen::MatrixXd gs = segment_generator(spring, 1);
  CHECK(gs(0, 0) == doctest::Approx(0.2));
  CHECK(gs(1, 1) == doctest::Approx(0.2));
  CHECK(gs(0, 1) == doctest::Approx(-0.2));
  CHECK(gs(1, 0) == doctest::Approx(-0.2));

  ControlSegment empty;
  empty.duration = 2.0;
  CHECK(segment_generator(empty, 2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("segment validation") {
  ControlSegment s;
  s.duration = 0.0;
  CHECK_THROWS_AS(validate_segment(s, 1), std::invalid_argument);
  s.duration = 1.0;
  s.springs.push_back({1, 0, 0.1});
  CHECK_THROWS_AS(validate_segment(s, 1), std::invalid_argument);
  s.springs = {{0, 1, 0.1}, {1, 2, 0.1}};
  CHECK_THROWS_AS(validate_segment(s, 2), std::invalid_argument);
  s.springs = {{0, 1, 0.1}};
  s.detunings[1] = 0.2;
  CHECK_THROWS_AS(validate_segment(s, 2), std::invalid_argument);
  s.detunings.clear();
  s.detunings[7] = 0.2;
  CHECK_THROWS_AS(validate_segment(s, 2), std::invalid_argument);
  s.detunings.clear();
  CHECK_NOTHROW(validate_segment(s, 2));
}

TEST_CASE("schedule unitary of compiled gates") {
  MatrixXc u_rz = schedule_unitary(schedule_of(GateOp::rz(0, kPi / 2), 1));
  MatrixXc expect(2, 2);
  expect << 1.0, 0.0, 0.0, Complex(0.0, 1.0);
  CHECK((u_rz - expect).cwiseAbs().maxCoeff() < 1e-10);

  MatrixXc u_cnot = schedule_unitary(schedule_of(GateOp::cnot(0, 1), 2));
  CHECK(phase_aligned_error(u_cnot,
                            unitary_of_gate(GateOp::cnot(0, 1), 2)) < 1e-10);
}

TEST_CASE("compiled schedules reproduce the gate unitaries") {
  std::mt19937_64 gen(17);
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i < 25; ++i) {
      GateOp g = testutil::random_gate(n, gen);
      CAPTURE(n);
      MatrixXc u = schedule_unitary(schedule_of(g, n));
      CHECK(phase_aligned_error(u, unitary_of_gate(g, n)) < 1e-9);
    }
  }
}

TEST_CASE("compiled segments always validate and stay disjoint") {
  std::mt19937_64 gen(18);
  for (int n = 1; n <= 4; ++n) {
    for (int i = 0; i < 30; ++i) {
      GateOp g = testutil::random_gate(n, gen);
      for (const ControlSegment& s : compile_gate(g, n, kParams)) {
        CHECK_NOTHROW(validate_segment(s, n));
        for (const Spring& sp : s.springs) {
          CHECK(sp.splitting == kParams.delta_omega_budget);
        }
        for (const auto& [k, d] : s.detunings) {
          CHECK(d == kParams.delta_omega_budget);
        }
      }
    }
  }
}

TEST_CASE("halving the budget doubles durations, unitary unchanged") {
  PhysicalParams half = kParams;
  half.delta_omega_budget /= 2.0;
  auto fast = compile_gate(GateOp::rx(0, 1.1), 1, kParams);
  auto slow = compile_gate(GateOp::rx(0, 1.1), 1, half);
  REQUIRE(fast.size() == 1);
  REQUIRE(slow.size() == 1);
  CHECK(slow[0].duration ==
        doctest::Approx(2.0 * fast[0].duration).epsilon(1e-14));

  MatrixXc u_fast = schedule_unitary(schedule_of(GateOp::rx(0, 1.1), 1));
  MatrixXc u_slow =
      schedule_unitary(schedule_of(GateOp::rx(0, 1.1), 1, half));
  CHECK((u_fast - u_slow).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("rescale_schedule preserves segment unitaries") {
  Circuit c;
  c.n_qubits = 2;
  c.ops = {GateOp::h(0), GateOp::cnot(0, 1), GateOp::rz(1, 0.7)};
  ControlSchedule sched = compile_circuit(c, kParams);
  ControlSchedule rescaled =
      rescale_schedule(sched, kParams.delta_omega_budget / 3.0);
  CHECK(rescaled.params.delta_omega_budget ==
        doctest::Approx(kParams.delta_omega_budget / 3.0));
  CHECK(rescaled.total_duration() ==
        doctest::Approx(3.0 * sched.total_duration()).epsilon(1e-12));
  CHECK((schedule_unitary(rescaled) - schedule_unitary(sched))
            .cwiseAbs()
            .maxCoeff() < 1e-11);
}

TEST_CASE("compile_circuit carries measurements as markers") {
  Circuit c;
  c.n_qubits = 2;
  c.ops = {GateOp::h(0), GateOp::measure(0), GateOp::measure_all()};
  ControlSchedule sched = compile_circuit(c, kParams);
  CHECK(sched.has_measurements());
  int markers = 0;
  for (const ScheduleItem& it : sched.items) {
    if (const auto* m = std::get_if<MeasureMarker>(&it)) {
      ++markers;
      if (markers == 1) CHECK(m->qubit == 0);
      if (markers == 2) CHECK(m->qubit == -1);
    }
  }
  CHECK(markers == 2);
  CHECK_THROWS_AS(schedule_unitary(sched), std::invalid_argument);
  CHECK_THROWS_AS(compile_gate(GateOp::measure(0), 2, kParams),
                  std::invalid_argument);
}

TEST_CASE("zero-angle gates compile away inside circuits") {
  Circuit c;
  c.n_qubits = 1;
  c.ops = {GateOp::rz(0, 0.0), GateOp::rx(0, 0.0)};
  ControlSchedule sched = compile_circuit(c, kParams);
  CHECK(sched.items.empty());
}

TEST_CASE("parameter validation") {
  PhysicalParams p;
  p.omega0 = -1.0;
  CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
  p = PhysicalParams{};
  p.mass = 0.0;
  CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
  p = PhysicalParams{};
  p.delta_omega_budget = p.omega0;  // must stay below the carrier
  CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
  CHECK_THROWS_AS(params_for_ratio(0.0), std::invalid_argument);
  CHECK_NOTHROW(params_for_ratio(0.01));
}
