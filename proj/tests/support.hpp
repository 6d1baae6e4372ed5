#pragma once

#include <Eigen/Dense>

#include "ompred/linalg.hpp"
#include "ompred/rng.hpp"

namespace testing_support {

inline Eigen::MatrixXd to_eigen(const ompred::Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline Eigen::MatrixXd to_eigen(const ompred::SymMatrix& m) { return to_eigen(m.to_matrix()); }

inline ompred::SymMatrix from_eigen(const Eigen::MatrixXd& e) {
  ompred::SymMatrix s(static_cast<int>(e.rows()));
  for (int i = 0; i < e.rows(); ++i)
    for (int j = i; j < e.cols(); ++j) s.set(i, j, 0.5 * (e(i, j) + e(j, i)));
  return s;
}

// Eigen-based spectral function, independent of the library's solver.
template <class F>
Eigen::MatrixXd spectral(const Eigen::MatrixXd& m, F f) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  Eigen::VectorXd d = es.eigenvalues().unaryExpr(f);
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

inline Eigen::VectorXd singular_values(const ompred::Matrix& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(to_eigen(m)).singularValues();
}

inline ompred::Matrix random_matrix(ompred::SplitMix64& rng, int rows, int cols, double scale = 1.0) {
  ompred::Matrix w(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) w(i, j) = rng.uniform(-scale, scale);
  return w;
}

inline ompred::SymMatrix random_sym(ompred::SplitMix64& rng, int d, double scale = 1.0) {
  ompred::SymMatrix s(d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) s.set(i, j, rng.uniform(-scale, scale));
  return s;
}

inline ompred::SymMatrix random_pd(ompred::SplitMix64& rng, int d, double trace) {
  ompred::SymMatrix y = ompred::matrix_exp(random_sym(rng, d, 1.5));
  y *= trace / y.trace();
  return y;
}

}  // namespace testing_support
