// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "qpend/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace qpend {

MatrixXc expi_symmetric(const Eigen::MatrixXd& G, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Eigen::MatrixXd& V = es.eigenvectors();
  VectorXc phases(lam.size());
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    phases(k) = std::polar(1.0, lam(k) * t);
  }
  return V.cast<Complex>() * phases.asDiagonal() *
         V.transpose().cast<Complex>();
}

double phase_aligned_error(const MatrixXc& A, const MatrixXc& B) {
  Complex tr = (B.adjoint() * A).trace();
  Complex phase = std::abs(tr) > 0.0 ? tr / std::abs(tr) : Complex(1.0, 0.0);
  return (A - phase * B).cwiseAbs().maxCoeff();
}

double phase_aligned_error(const VectorXc& a, const VectorXc& b) {
  Complex ip = b.dot(a);
  Complex phase = std::abs(ip) > 0.0 ? ip / std::abs(ip) : Complex(1.0, 0.0);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace qpend
