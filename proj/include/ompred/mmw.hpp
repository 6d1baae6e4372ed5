#pragma once

// Matrix multiplicative weights over a set {X : A_j . X <= b_j} with quantum
// relative entropy projections computed through the low-dimensional dual
//
//   max_{alpha >= 0}  -Tr exp(log Y - sum_j alpha_j A_j) - sum_j alpha_j b_j,
//
// whose maximiser gives the projection X* = exp(log Y - sum_j alpha_j* A_j).

#include <string>
#include <vector>

#include "ompred/linalg.hpp"

namespace ompred {

/// A(row, col) = A(col, row) = value. A diagonal entry appears once.
struct SparseEntry {
  int row;
  int col;
  double value;
};

struct LinConstraint {
  std::vector<SparseEntry> entries;
  double bound = 0.0;
  std::string label;
};

/// A . X for a sparse symmetric A.
double apply(const LinConstraint& c, const SymMatrix& x);
SymMatrix to_dense(const LinConstraint& c, int order);

/// Ordered constraints over matrices of one order. `tau` is the trace scale
/// used for the dual box: [0, s] with s = 3 tau for bounds b >= 1, widened
/// to [0, s + log(s * order)] for homogeneous constraints (b = 0). When the
/// point being projected has trace above 3 tau, s grows to Tr(Y) / max(b, 1).
/// Bounds strictly between 0 and 1, or negative, are rejected.
class ConstraintSet {
 public:
  ConstraintSet(int order, double tau);

  void add(LinConstraint c);

  int order() const { return order_; }
  double tau() const { return tau_; }
  std::size_t size() const { return constraints_.size(); }
  const LinConstraint& operator[](std::size_t j) const { return constraints_[j]; }
  const std::vector<LinConstraint>& constraints() const { return constraints_; }

  double dual_upper(std::size_t j, double trace_y = 0.0) const;

  /// max_j max(0, A_j . X - b_j)
  double max_violation(const SymMatrix& x) const;

 private:
  int order_;
  double tau_;
  std::vector<LinConstraint> constraints_;
};

/// Trace ball {Tr X <= tau} as a constraint set.
ConstraintSet trace_ball(int order, double tau);

struct OloState {
  SymMatrix X;
  SymMatrix log_X;  // exact logarithm of X, kept so steps need no matrix log
  double eta = 0.0;
  double tau = 0.0;
  int N = 0;
  int round = 1;
};

/// X_1 = (tau / N) I.
OloState init_state(double tau, int N, double eta);

/// log X - eta L, the logarithm of the unprojected next iterate.
SymMatrix log_step(const OloState& state, const SymMatrix& L);
/// exp(log X - eta L).
SymMatrix exp_step(const OloState& state, const SymMatrix& L);

struct ProjectionResult {
  SymMatrix X;
  SymMatrix log_X;
  std::vector<double> duals;
  double max_violation = 0.0;  // max_j max(0, A_j . X - b_j)
  double max_slackness = 0.0;  // max_j alpha_j |b_j - A_j . X| / (1 + |b_j|)
  int sweeps = 0;
  int evaluations = 0;
};

inline constexpr double kDefaultProjectionTol = 1e-7;

/// argmin_{X in cs} qre(X, Y). Y must be positive definite after eigenvalue
/// flooring. Cyclic coordinate ascent on the dual; each coordinate is solved
/// by Newton steps safeguarded by bisection inside its dual box. Throws
/// ConvergenceError with the final residuals if 200 sweeps do not bring the
/// KKT residual below `tol`.
ProjectionResult project_qre(const SymMatrix& Y, const ConstraintSet& cs,
                             double tol = kDefaultProjectionTol);
/// Same, given log Y directly.
ProjectionResult project_qre_log(const SymMatrix& log_Y, const ConstraintSet& cs,
                                 double tol = kDefaultProjectionTol);

/// -Tr exp(log Y - sum alpha_j A_j) - sum alpha_j b_j.
double dual_objective(const SymMatrix& Y, const ConstraintSet& cs,
                      const std::vector<double>& alpha);
/// d/d alpha_j of the dual: A_j . X(alpha) - b_j.
std::vector<double> dual_gradient(const SymMatrix& Y, const ConstraintSet& cs,
                                  const std::vector<double>& alpha);
/// exp(log Y - sum alpha_j A_j).
SymMatrix dual_primal(const SymMatrix& Y, const ConstraintSet& cs,
                      const std::vector<double>& alpha);

struct OloRound {
  double loss = 0.0;      // X_t . L_t
  double eta_norm = 0.0;  // eta * ||L_t||, the step-size precondition monitor
  OloState next;
  ProjectionResult projection;
};

/// Plays X_t, charges X_t . L, and moves to the projection of exp_step.
OloRound olo_round(const OloState& state, const SymMatrix& L, const ConstraintSet& cs,
                   double tol = kDefaultProjectionTol);

}  // namespace ompred
