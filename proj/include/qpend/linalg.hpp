// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>

namespace qpend {

using Complex = std::complex<double>;
using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Wraps an angle to [-pi, pi).
inline double wrap_angle(double x) {
  double y = std::remainder(x, kTwoPi);
  if (y >= kPi) y -= kTwoPi;
  if (y < -kPi) y += kTwoPi;
  return y;
}

// exp(i * t * G) for real symmetric G, via eigendecomposition. Unitary by
// construction up to rounding.
MatrixXc expi_symmetric(const Eigen::MatrixXd& G, double t);

// ||U^H U - I||, max absolute entry.
inline double unitarity_error(const MatrixXc& U) {
  MatrixXc r = U.adjoint() * U;
  r -= MatrixXc::Identity(U.rows(), U.cols());
  return r.cwiseAbs().maxCoeff();
}

// Max entrywise |A - e^{i phi} B| minimized over the global phase phi.
// For A ~ e^{i phi} B the optimal phi is arg tr(B^H A).
double phase_aligned_error(const MatrixXc& A, const MatrixXc& B);
double phase_aligned_error(const VectorXc& a, const VectorXc& b);

}  // namespace qpend
