#include "ompred/mmw.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "ompred/error.hpp"

namespace ompred {

double apply(const LinConstraint& c, const SymMatrix& x) {
  double s = 0.0;
  for (const SparseEntry& e : c.entries) s += (e.row == e.col ? 1.0 : 2.0) * e.value * x(e.row, e.col);
  return s;
}

SymMatrix to_dense(const LinConstraint& c, int order) {
  SymMatrix a(order);
  for (const SparseEntry& e : c.entries) a.add(e.row, e.col, e.value);
  return a;
}

ConstraintSet::ConstraintSet(int order, double tau) : order_(order), tau_(tau) {
  if (order < 1) throw DimensionError("constraint set order must be positive");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("constraint set tau must be positive");
}

void ConstraintSet::add(LinConstraint c) {
  for (const SparseEntry& e : c.entries) {
    if (e.row < 0 || e.row >= order_ || e.col < 0 || e.col >= order_) {
      throw DimensionError("constraint entry (" + std::to_string(e.row) + ", " +
                           std::to_string(e.col) + ") outside order " + std::to_string(order_));
    }
    if (!std::isfinite(e.value)) throw DomainError("non-finite constraint coefficient");
  }
  if (!(c.bound >= 1.0 || c.bound == 0.0) || !std::isfinite(c.bound)) {
    throw DomainError("constraint bound must be 0 or at least 1, got " + std::to_string(c.bound));
  }
  constraints_.push_back(std::move(c));
}

double ConstraintSet::dual_upper(std::size_t j, double trace_y) const {
  const double b = constraints_.at(j).bound;
  const double box = std::max(3.0 * tau_, trace_y / std::max(b, 1.0));
  if (b == 0.0) return box + std::log(box * order_);
  return box;
}

double ConstraintSet::max_violation(const SymMatrix& x) const {
  double v = 0.0;
  for (const LinConstraint& c : constraints_) v = std::max(v, apply(c, x) - c.bound);
  return v;
}

ConstraintSet trace_ball(int order, double tau) {
  ConstraintSet cs(order, tau);
  LinConstraint tr;
  tr.label = "trace";
  tr.bound = tau;
  for (int i = 0; i < order; ++i) tr.entries.push_back({i, i, 1.0});
  cs.add(std::move(tr));
  return cs;
}

OloState init_state(double tau, int N, double eta) {
  if (!(tau > 0.0)) throw DomainError("init_state: tau must be positive");
  if (N < 1) throw DomainError("init_state: N must be at least 1");
  if (!(eta > 0.0)) throw DomainError("init_state: eta must be positive");
  OloState s;
  s.X = SymMatrix::identity(N, tau / N);
  s.log_X = SymMatrix::identity(N, std::log(tau / N));
  s.eta = eta;
  s.tau = tau;
  s.N = N;
  s.round = 1;
  return s;
}

SymMatrix log_step(const OloState& state, const SymMatrix& L) {
  if (L.order() != state.N) throw DimensionError("loss matrix order differs from the iterate");
  SymMatrix h = state.log_X;
  h -= state.eta * L;
  return h;
}

SymMatrix exp_step(const OloState& state, const SymMatrix& L) {
  return matrix_exp(log_step(state, L));
}

// ---------------------------------------------------------------------------
// Dual solver

namespace {

SymMatrix shifted(const SymMatrix& log_y, const ConstraintSet& cs, const std::vector<double>& alpha) {
  SymMatrix m = log_y;
  for (std::size_t j = 0; j < cs.size(); ++j) {
    if (alpha[j] == 0.0) continue;
    for (const SparseEntry& e : cs[j].entries) m.add(e.row, e.col, -alpha[j] * e.value);
  }
  return m;
}

// exp(a) - exp(b) over a - b, continuous at a = b.
double exp_divided_difference(double a, double b) {
  const double hi = std::max(a, b);
  const double d = std::min(a, b) - hi;
  if (d == 0.0) return std::exp(hi);
  return std::exp(hi) * std::expm1(d) / d;
}

struct Point {
  EigenDecomp eig;
  std::vector<double> expvals;
  std::vector<double> grad;  // A_j . X - b_j
};

class DualSolver {
 public:
  DualSolver(const SymMatrix& log_y, const ConstraintSet& cs) : log_y_(log_y), cs_(cs) {
    if (log_y.order() != cs.order()) throw DimensionError("projection: matrix and constraint orders differ");
  }

  Point evaluate(const std::vector<double>& alpha) {
    ++evaluations;
    Point pt;
    pt.eig = eig_sym(shifted(log_y_, cs_, alpha));
    pt.expvals.resize(pt.eig.values.size());
    for (std::size_t k = 0; k < pt.expvals.size(); ++k) pt.expvals[k] = std::exp(pt.eig.values[k]);
    pt.grad.resize(cs_.size());
    for (std::size_t j = 0; j < cs_.size(); ++j) pt.grad[j] = entry_product(pt, j) - cs_[j].bound;
    return pt;
  }

  // d/d alpha_j of (A_j . X(alpha)), always <= 0.
  double slope(const Point& pt, std::size_t j) const {
    const int d = cs_.order();
    const Matrix& v = pt.eig.vectors;
    Matrix at(d, d);
    for (const SparseEntry& e : cs_[j].entries) {
      for (int k = 0; k < d; ++k) {
        const double vrk = v(e.row, k);
        const double vck = v(e.col, k);
        for (int l = k; l < d; ++l) {
          double add = vrk * v(e.col, l);
          if (e.row != e.col) add += vck * v(e.row, l);
          at(k, l) += e.value * add;
        }
      }
    }
    double s = 0.0;
    for (int k = 0; k < d; ++k) {
      for (int l = k; l < d; ++l) {
        const double w = at(k, l) * at(k, l) *
                         exp_divided_difference(pt.eig.values[k], pt.eig.values[l]);
        s += (k == l) ? w : 2.0 * w;
      }
    }
    return -s;
  }

  SymMatrix primal(const Point& pt) const { return matrix_fn(pt.eig, [](double l) { return std::exp(l); }); }

  int evaluations = 0;

 private:
  double entry_product(const Point& pt, std::size_t j) const {
    const int d = cs_.order();
    const Matrix& v = pt.eig.vectors;
    double s = 0.0;
    for (const SparseEntry& e : cs_[j].entries) {
      double x = 0.0;
      for (int k = 0; k < d; ++k) x += v(e.row, k) * v(e.col, k) * pt.expvals[static_cast<std::size_t>(k)];
      s += (e.row == e.col ? 1.0 : 2.0) * e.value * x;
    }
    return s;
  }

  const SymMatrix& log_y_;
  const ConstraintSet& cs_;
};

constexpr int kMaxSweeps = 200;
constexpr int kMaxCoordinateSteps = 100;

}  // namespace

ProjectionResult project_qre_log(const SymMatrix& log_y, const ConstraintSet& cs, double tol) {
  if (!(tol > 0.0)) throw DomainError("projection tolerance must be positive");
  DualSolver solver(log_y, cs);
  const std::size_t m = cs.size();
  std::vector<double> alpha(m, 0.0);
  Point pt = solver.evaluate(alpha);
  double trace_y = 0.0;
  for (double e : pt.expvals) trace_y += e;

  auto slack_of = [&](std::size_t j) {
    return alpha[j] * std::fabs(pt.grad[j]) / (1.0 + std::fabs(cs[j].bound));
  };
  auto converged = [&] {
    for (std::size_t j = 0; j < m; ++j)
      if (pt.grad[j] > tol || slack_of(j) > tol) return false;
    return true;
  };

  int sweeps = 0;
  while (!converged()) {
    if (sweeps == kMaxSweeps) {
      double viol = 0.0, slack = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        viol = std::max(viol, pt.grad[j]);
        slack = std::max(slack, slack_of(j));
      }
      char buf[200];
      std::snprintf(buf, sizeof buf,
                    "QRE projection did not converge in %d sweeps: violation %.3e, slackness %.3e",
                    kMaxSweeps, viol, slack);
      throw ConvergenceError(buf);
    }
    ++sweeps;
    for (std::size_t j = 0; j < m; ++j) {
      const double box = cs.dual_upper(j, trace_y);
      const double target =
          std::max(1e-3 * tol * (1.0 + std::fabs(cs[j].bound)) / (1.0 + box),
                   1e-13 * (1.0 + std::fabs(cs[j].bound)));
      double a = alpha[j];
      double g = pt.grad[j];
      if (a == 0.0 && g <= target) continue;
      if (std::fabs(g) <= target) continue;
      double lo = g > 0.0 ? a : 0.0;
      double hi = g > 0.0 ? box : a;
      bool zero_tried = false;
      for (int step = 0; step < kMaxCoordinateSteps; ++step) {
        const double s = solver.slope(pt, j);
        double next = s < 0.0 ? a - g / s : -1.0;
        if (!(next > lo && next < hi)) {
          if (g < 0.0 && lo == 0.0 && !zero_tried) {
            next = 0.0;
          } else {
            next = 0.5 * (lo + hi);
          }
        }
        if (next == 0.0) zero_tried = true;
        a = next;
        alpha[j] = a;
        pt = solver.evaluate(alpha);
        g = pt.grad[j];
        if (g > 0.0) {
          lo = a;
        } else {
          hi = a;
        }
        if (a == 0.0 && g <= target) break;
        if (std::fabs(g) <= target) break;
        if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
      }
    }
  }

  ProjectionResult r;
  r.X = solver.primal(pt);
  r.log_X = shifted(log_y, cs, alpha);
  r.duals = alpha;
  for (std::size_t j = 0; j < m; ++j) {
    r.max_violation = std::max(r.max_violation, pt.grad[j]);
    r.max_slackness = std::max(r.max_slackness, slack_of(j));
  }
  r.sweeps = sweeps;
  r.evaluations = solver.evaluations;
  return r;
}

ProjectionResult project_qre(const SymMatrix& Y, const ConstraintSet& cs, double tol) {
  return project_qre_log(matrix_log(Y), cs, tol);
}

double dual_objective(const SymMatrix& Y, const ConstraintSet& cs, const std::vector<double>& alpha) {
  if (alpha.size() != cs.size()) throw DimensionError("dual point has the wrong length");
  const EigenDecomp eig = eig_sym(shifted(matrix_log(Y), cs, alpha));
  double v = 0.0;
  for (double l : eig.values) v -= std::exp(l);
  for (std::size_t j = 0; j < cs.size(); ++j) v -= alpha[j] * cs[j].bound;
  return v;
}

std::vector<double> dual_gradient(const SymMatrix& Y, const ConstraintSet& cs,
                                  const std::vector<double>& alpha) {
  if (alpha.size() != cs.size()) throw DimensionError("dual point has the wrong length");
  const SymMatrix log_y = matrix_log(Y);
  DualSolver solver(log_y, cs);
  return solver.evaluate(alpha).grad;
}

SymMatrix dual_primal(const SymMatrix& Y, const ConstraintSet& cs, const std::vector<double>& alpha) {
  if (alpha.size() != cs.size()) throw DimensionError("dual point has the wrong length");
  return matrix_exp(shifted(matrix_log(Y), cs, alpha));
}

OloRound olo_round(const OloState& state, const SymMatrix& L, const ConstraintSet& cs, double tol) {
  OloRound out;
  out.loss = inner(state.X, L);
  out.eta_norm = state.eta * spectral_norm(L);
  out.projection = project_qre_log(log_step(state, L), cs, tol);
  out.next = state;
  out.next.X = out.projection.X;
  out.next.log_X = out.projection.log_X;
  out.next.round = state.round + 1;
  return out;
}

}  // namespace ompred
