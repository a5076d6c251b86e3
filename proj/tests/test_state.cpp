// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qpend/state.hpp"
#include "test_util.hpp"

using namespace qpend;

TEST_CASE("ground state puts everything in pendulum 1") {
  for (int n : {1, 2, 3}) {
    EnvelopeState s = init_ground(n);
    CHECK(s.dim() == (1 << n));
    CHECK(s.amplitudes(0) == Complex(1.0, 0.0));
    CHECK(probabilities(s).sum() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(norm_error(s) < kNormTol);
  }
}

TEST_CASE("qubit count limits") {
  CHECK_THROWS_AS(init_ground(0), std::invalid_argument);
  CHECK_THROWS_AS(init_ground(-1), std::invalid_argument);
  CHECK_THROWS_AS(init_ground(kMaxQubits + 1), std::invalid_argument);
}

TEST_CASE("make_state validates shape and norm") {
  VectorXc good(2);
  good << Complex(0.6, 0.0), Complex(0.0, 0.8);
  CHECK_NOTHROW(make_state(1, good));

  VectorXc wrong_size(3);
  wrong_size << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(make_state(1, wrong_size), std::invalid_argument);

  VectorXc unnormalized(2);
  unnormalized << 0.6, 0.7;
  CHECK_THROWS_AS(make_state(1, unnormalized), std::invalid_argument);
}

TEST_CASE("probabilities are squared magnitudes") {
  VectorXc a(4);
  const double r = 1.0 / std::sqrt(2.0);
  a << 0.0, r, -r, 0.0;
  EnvelopeState s = make_state(2, a);
  Eigen::VectorXd p = probabilities(s);
  CHECK(p(0) == 0.0);
  CHECK(p(1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p(2) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p(3) == 0.0);
}

TEST_CASE("bloch angles at the poles") {
  VectorXc up(2), down(2);
  up << 0.0, 1.0;
  down << 1.0, 0.0;
  BlochPoint top = bloch_from_state(make_state(1, up));
  CHECK(top.theta == doctest::Approx(0.0));
  CHECK(top.phi == 0.0);
  BlochPoint bottom = bloch_from_state(make_state(1, down));
  CHECK(bottom.theta == doctest::Approx(kPi));
  CHECK(bottom.phi == 0.0);
}

TEST_CASE("bloch angles of the lateral state (1, -i)/sqrt 2") {
  VectorXc a(2);
  const double r = 1.0 / std::sqrt(2.0);
  a << Complex(r, 0.0), Complex(0.0, -r);
  BlochPoint p = bloch_from_state(make_state(1, a));
  CHECK(p.theta == doctest::Approx(kPi / 2).epsilon(1e-14));
  CHECK(p.phi == doctest::Approx(kPi / 2).epsilon(1e-14));
}

TEST_CASE("bloch round trip") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> ut(0.05, kPi - 0.05);
  std::uniform_real_distribution<double> up(-kPi, kPi - 1e-6);
  for (int i = 0; i < 200; ++i) {
    const double theta = ut(gen);
    const double phi = up(gen);
    BlochPoint p = bloch_from_state(state_from_bloch(theta, phi));
    CHECK(p.theta == doctest::Approx(theta).epsilon(1e-12));
    CHECK(p.phi == doctest::Approx(phi).epsilon(1e-12));
  }
}

TEST_CASE("bloch needs one qubit") {
  CHECK_THROWS_AS(bloch_from_state(init_ground(2)), std::invalid_argument);
}

TEST_CASE("product check on basis and entangled states") {
  CHECK(is_product_two_qubit(init_ground(2)).is_product);
  CHECK(is_product_two_qubit(init_ground(2)).residual == 0.0);

  VectorXc singlet(4);
  const double r = 1.0 / std::sqrt(2.0);
  singlet << 0.0, r, -r, 0.0;
  ProductCheck c = is_product_two_qubit(make_state(2, singlet));
  CHECK_FALSE(c.is_product);
  CHECK(c.residual == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("product states have tiny residual") {
  std::mt19937_64 gen(22);
  for (int i = 0; i < 100; ++i) {
    EnvelopeState a = testutil::random_state(1, gen);
    EnvelopeState b = testutil::random_state(1, gen);
    VectorXc prod(4);
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        prod(2 * x + y) = a.amplitudes(x) * b.amplitudes(y);
      }
    }
    ProductCheck c = is_product_two_qubit(make_state(2, prod));
    CHECK(c.is_product);
    CHECK(c.residual < 1e-12);
  }
}

TEST_CASE("fidelity basics") {
  EnvelopeState g = init_ground(2);
  CHECK(fidelity(g, g) == doctest::Approx(1.0).epsilon(1e-14));

  std::mt19937_64 gen(33);
  for (int i = 0; i < 50; ++i) {
    EnvelopeState a = testutil::random_state(2, gen);
    EnvelopeState b = testutil::random_state(2, gen);
    const double f = fidelity(a, b);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0 + 1e-12);
    CHECK(fidelity(b, a) == doctest::Approx(f).epsilon(1e-12));
    // Global phase drops out.
    EnvelopeState c = a;
    c.amplitudes *= std::polar(1.0, 1.234);
    CHECK(fidelity(c, b) == doctest::Approx(f).epsilon(1e-12));
  }
}

TEST_CASE("fidelity input validation") {
  VectorXc a(2), b(4), z(2);
  a << 1.0, 0.0;
  b << 1.0, 0.0, 0.0, 0.0;
  z << 0.0, 0.0;
  CHECK_THROWS_AS(fidelity(a, b), std::invalid_argument);
  CHECK_THROWS_AS(fidelity(a, z), std::invalid_argument);
}

TEST_CASE("index bit helpers follow the digit convention") {
  // Qubit 0 is the most significant digit.
  CHECK(bit_of_index(0b10, 0, 2) == 1);
  CHECK(bit_of_index(0b10, 1, 2) == 0);
  CHECK(bit_of_index(0b01, 0, 2) == 0);
  CHECK(bit_of_index(0b01, 1, 2) == 1);
  CHECK(bits_of_index(0b110, 3) == "110");
  CHECK(bits_of_index(0, 3) == "000");
  CHECK(bits_of_index(5, 3) == "101");
}
