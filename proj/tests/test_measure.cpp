// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qpend/envelope.hpp"
#include "qpend/measure.hpp"
#include "test_util.hpp"

using namespace qpend;

TEST_CASE("branch selection rules") {
  CHECK(choose_binary(0.5, 0.25) == 0);
  CHECK(choose_binary(0.5, 0.5) == 1);
  CHECK(choose_binary(0.5, 0.75) == 1);
  CHECK(choose_binary(1.0, 0.999999) == 0);
  CHECK(choose_binary(0.0, 0.0) == 1);

  Eigen::VectorXd p(4);
  p << 0.1, 0.0, 0.4, 0.5;
  CHECK(choose_categorical(p, 0.05) == 0);
  CHECK(choose_categorical(p, 0.1) == 2);   // zero branch is skipped
  CHECK(choose_categorical(p, 0.49) == 2);
  CHECK(choose_categorical(p, 0.51) == 3);
  CHECK(choose_categorical(p, 0.999999) == 3);
}

TEST_CASE("zero-probability branches are never drawn") {
  Eigen::VectorXd p(3);
  p << 0.5, 0.0, 0.5;
  ShotRng rng(99);
  for (int i = 0; i < 2000; ++i) {
    CHECK(choose_categorical(p, rng.uniform()) != 1);
  }
}

TEST_CASE("eigenstate measurement is deterministic") {
  VectorXc a = VectorXc::Zero(4);
  a(2) = std::polar(1.0, 0.9);
  EnvelopeState s = make_state(2, a);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ShotRng rng(seed);
    QubitMeasurement m = measure_qubit(s, 0, rng);
    CHECK(m.outcome == 1);
    CHECK(m.record.energy_unit_factor == doctest::Approx(1.0));
    // The phase survives collapse untouched.
    CHECK(std::abs(m.state.amplitudes(2) - a(2)) < 1e-15);
  }
}

TEST_CASE("singlet collapse branches") {
  EnvelopeState s = prepare_singlet();
  bool saw0 = false;
  bool saw1 = false;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    ShotRng rng(shot_stream_seed(3, seed));
    QubitMeasurement m = measure_qubit(s, 0, rng);
    CHECK(m.record.pre_probabilities[0] == doctest::Approx(0.5));
    CHECK(m.record.energy_unit_factor == doctest::Approx(0.5));
    CHECK(norm_error(m.state) < 1e-12);
    if (m.outcome == 0) {
      saw0 = true;
      CHECK(std::abs(m.state.amplitudes(1) - Complex(1.0, 0.0)) < 1e-12);
      CHECK(std::abs(m.state.amplitudes(2)) == 0.0);
    } else {
      saw1 = true;
      CHECK(std::abs(m.state.amplitudes(2) - Complex(-1.0, 0.0)) < 1e-12);
      CHECK(std::abs(m.state.amplitudes(1)) == 0.0);
    }
  }
  CHECK(saw0);
  CHECK(saw1);
}

TEST_CASE("measurement frequencies match probabilities") {
  VectorXc a(2);
  a << Complex(0.6, 0.0), Complex(0.0, 0.8);
  EnvelopeState s = make_state(1, a);
  const int shots = 20000;
  int zeros = 0;
  for (int i = 0; i < shots; ++i) {
    ShotRng rng(shot_stream_seed(77, std::uint64_t(i)));
    if (measure_qubit(s, 0, rng).outcome == 0) ++zeros;
  }
  // p0 = 0.36; allow 5 sigma.
  const double sigma = std::sqrt(0.36 * 0.64 * shots);
  CHECK(std::abs(zeros - 0.36 * shots) < 5 * sigma);
}

TEST_CASE("measure_all on the uniform register") {
  EnvelopeState s = init_ground(2);
  s = apply_gate(s, GateOp::h(0));
  s = apply_gate(s, GateOp::h(1));
  const int shots = 20000;
  std::array<int, 4> counts{};
  for (int i = 0; i < shots; ++i) {
    ShotRng rng(shot_stream_seed(78, std::uint64_t(i)));
    RegisterMeasurement m = measure_all(s, rng);
    counts[m.index]++;
    if (i == 0) {
      CHECK(m.record.pre_probabilities.size() == 4);
      CHECK(m.record.pre_probabilities[0] == doctest::Approx(0.25));
      CHECK(norm_error(m.state) < 1e-12);
      CHECK(m.bits.size() == 2);
    }
  }
  const double sigma = std::sqrt(0.25 * 0.75 * shots);
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(counts[k] - shots / 4.0) < 5 * sigma);
  }
}

TEST_CASE("sequential measurements compose like a joint one") {
  // Measuring qubit 0 then qubit 1 must reproduce the joint distribution.
  std::mt19937_64 gen(55);
  EnvelopeState s = testutil::random_state(2, gen);
  Eigen::VectorXd joint = probabilities(s);

  const int shots = 40000;
  std::array<int, 4> counts{};
  for (int i = 0; i < shots; ++i) {
    ShotRng rng(shot_stream_seed(79, std::uint64_t(i)));
    QubitMeasurement m0 = measure_qubit(s, 0, rng);
    QubitMeasurement m1 = measure_qubit(m0.state, 1, rng);
    counts[2 * m0.outcome + m1.outcome]++;
    // Chain rule: the two branch factors multiply to the joint probability.
    const double product =
        m0.record.energy_unit_factor * m1.record.energy_unit_factor;
    const int idx = 2 * m0.outcome + m1.outcome;
    CHECK(product == doctest::Approx(joint(idx)).epsilon(1e-10));
  }
  for (int k = 0; k < 4; ++k) {
    const double expect = joint(k) * shots;
    const double sigma = std::sqrt(std::max(1.0, expect));
    CHECK(std::abs(counts[k] - expect) < 6 * sigma);
  }
}

TEST_CASE("collapse is idempotent") {
  std::mt19937_64 gen(56);
  for (int i = 0; i < 40; ++i) {
    EnvelopeState s = testutil::random_state(3, gen);
    ShotRng rng(shot_stream_seed(80, std::uint64_t(i)));
    QubitMeasurement first = measure_qubit(s, 1, rng);
    QubitMeasurement second = measure_qubit(first.state, 1, rng);
    CHECK(second.outcome == first.outcome);
    CHECK(second.record.energy_unit_factor == doctest::Approx(1.0));
    CHECK((second.state.amplitudes - first.state.amplitudes)
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("energy bookkeeping across interleaved gates and measurements") {
  // The product of branch factors equals the probability of the measured
  // record computed independently with projectors and full matrices.
  std::mt19937_64 gen(57);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2;
    Circuit pre = testutil::random_unitary_circuit(n, 4, gen);
    Circuit mid = testutil::random_unitary_circuit(n, 3, gen);

    ShotRng rng(shot_stream_seed(81, std::uint64_t(trial)));
    EnvelopeState s = init_ground(n);
    for (const GateOp& g : pre.ops) s = apply_gate(s, g);
    QubitMeasurement m0 = measure_qubit(s, 0, rng);
    s = m0.state;
    for (const GateOp& g : mid.ops) s = apply_gate(s, g);
    QubitMeasurement m1 = measure_qubit(s, 1, rng);
    const double product =
        m0.record.energy_unit_factor * m1.record.energy_unit_factor;

    // Independent route: || P1 U_mid P0 U_pre |0> ||^2.
    MatrixXc u_pre = circuit_unitary(pre);
    MatrixXc u_mid = circuit_unitary(mid);
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    v(0) = 1.0;
    VectorXc w = u_pre * v;
    for (int k = 0; k < 4; ++k) {
      if (bit_of_index(std::size_t(k), 0, n) != m0.outcome) w(k) = 0.0;
    }
    w = u_mid * w;
    for (int k = 0; k < 4; ++k) {
      if (bit_of_index(std::size_t(k), 1, n) != m1.outcome) w(k) = 0.0;
    }
    CHECK(product == doctest::Approx(w.squaredNorm()).epsilon(1e-9));
  }
}

TEST_CASE("measurement input validation") {
  ShotRng rng(1);
  CHECK_THROWS_AS(measure_qubit(init_ground(2), 2, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(measure_qubit(init_ground(2), -1, rng),
                  std::invalid_argument);
}
