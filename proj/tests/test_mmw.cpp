#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "ompred/error.hpp"
#include "ompred/mmw.hpp"
#include "ompred/reduction.hpp"
#include "support.hpp"

using namespace ompred;
using namespace testing_support;

namespace {

OmpConfig small_config(SplitMix64& rng, int p, bool unit) {
  const int m = p / 2;
  return OmpConfig::make(m, p - m, false, 1.0 + rng.uniform(0.0, 2.0), 1.0 + rng.uniform(0.0, p), 1.0, 100,
                         unit ? kUnitRange : kSignedRange);
}

ConstraintSet random_kt(SplitMix64& rng, const OmpConfig& cfg) {
  return constraints_Kt(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.m))),
                        1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.n))), cfg);
}

}  // namespace

TEST(ConstraintSet, BoundRule) {
  ConstraintSet cs(2, 1.0);
  EXPECT_THROW(cs.add(LinConstraint{{{0, 0, 1.0}}, 0.5, ""}), DomainError);
  EXPECT_THROW(cs.add(LinConstraint{{{0, 0, 1.0}}, -1.0, ""}), DomainError);
  EXPECT_THROW(cs.add(LinConstraint{{{0, 2, 1.0}}, 1.0, ""}), DimensionError);
  cs.add(LinConstraint{{{0, 0, 1.0}}, 0.0, ""});
  cs.add(LinConstraint{{{0, 1, 1.0}}, 1.0, ""});
  EXPECT_EQ(cs.dual_upper(1), 3.0);
  EXPECT_NEAR(cs.dual_upper(0), 3.0 + std::log(6.0), 1e-15);
}

TEST(ConstraintSet, SparseApplyMatchesDense) {
  SplitMix64 rng(71);
  const SymMatrix x = random_sym(rng, 4);
  const LinConstraint c{{{0, 1, 0.5}, {2, 2, 1.0}, {3, 1, -2.0}}, 1.0, ""};
  EXPECT_NEAR(apply(c, x), inner(to_dense(c, 4), x), 1e-14);
}

TEST(InitState, Basics) {
  const OloState s = init_state(2.0, 4, 0.1);
  EXPECT_EQ(s.X, SymMatrix::identity(4, 0.5));
  EXPECT_EQ(s.X.trace(), 2.0);
  EXPECT_EQ(s.round, 1);
  EXPECT_EQ(s.eta, 0.1);
  EXPECT_THROW(init_state(0.0, 4, 0.1), DomainError);
  EXPECT_THROW(init_state(1.0, 0, 0.1), DomainError);
  EXPECT_THROW(init_state(1.0, 4, 0.0), DomainError);
}

TEST(ExpStep, ZeroLossIsIdentity) {
  const OloState s = init_state(3.0, 3, 0.5);
  EXPECT_LE(max_abs(exp_step(s, SymMatrix(3)) - s.X), 1e-15);
}

TEST(ExpStep, CommutingDiagonal) {
  OloState s = init_state(2.0, 2, 0.5);  // X = I
  const std::vector<double> d{1.0, -1.0};
  const SymMatrix y = exp_step(s, SymMatrix::diagonal(d));
  EXPECT_NEAR(y(0, 0), 0.6065306597126334, 1e-14);
  EXPECT_NEAR(y(1, 1), 1.6487212707001282, 1e-14);
}

TEST(ExpStep, TraceAtMostThreeTau) {
  SplitMix64 rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(10));
    const double tau = rng.uniform(1.0, 10.0);
    OloState s = init_state(tau, d, 1.0);
    s.X = random_pd(rng, d, tau * rng.uniform(0.1, 1.0));
    s.log_X = matrix_log(s.X);
    SymMatrix L = random_sym(rng, d);
    L *= 1.0 / spectral_norm(L);
    EXPECT_LE(exp_step(s, L).trace(), 3.0 * tau);
  }
}

TEST(Projection, FeasiblePointIsFixed) {
  const SymMatrix y = SymMatrix::identity(3, 0.2);
  const ProjectionResult r = project_qre(y, trace_ball(3, 1.0));
  EXPECT_LE(max_abs(r.X - y), 1e-14);
  EXPECT_EQ(r.duals, std::vector<double>{0.0});
}

TEST(Projection, ScalarTraceBall) {
  const ProjectionResult r = project_qre(SymMatrix::identity(2, 2.0), trace_ball(2, 1.0));
  EXPECT_LE(max_abs(r.X - SymMatrix::identity(2, 0.5)), 1e-9);
  EXPECT_NEAR(r.duals[0], std::log(4.0), 1e-9);
}

TEST(Projection, KktOnRandomKt) {
  SplitMix64 rng(79);
  for (int trial = 0; trial < 150; ++trial) {
    const int p = 2 << rng.below(3);
    const OmpConfig cfg = small_config(rng, p, rng.below(2) == 0);
    const ConstraintSet cs = random_kt(rng, cfg);
    const SymMatrix y = random_pd(rng, cfg.N(), cfg.tau * rng.uniform(0.3, 3.0));
    const ProjectionResult r = project_qre(y, cs);
    EXPECT_GE(min_eigenvalue(r.X), -1e-8);
    EXPECT_LE(cs.max_violation(r.X), 1e-6);
    for (std::size_t j = 0; j < cs.size(); ++j) {
      EXPECT_GE(r.duals[j], 0.0);
      EXPECT_LE(r.duals[j], cs.dual_upper(j) + 1e-9);
      EXPECT_LE(r.duals[j] * std::fabs(cs[j].bound - apply(cs[j], r.X)), 1e-7 * (1 + std::fabs(cs[j].bound)));
    }
    // The returned logarithm is exact.
    EXPECT_LE(max_abs(matrix_exp(r.log_X) - r.X), 1e-10 * (1 + max_abs(r.X)));
  }
}

TEST(Projection, RobustWhenTraceExceedsThreeTau) {
  SplitMix64 rng(83);
  const OmpConfig cfg = OmpConfig::make(2, 2, false, 1.2, 1.3, 1.0, 10, kSignedRange);
  const ConstraintSet cs = constraints_Kt(1, 2, cfg);
  const SymMatrix y = random_pd(rng, 8, 60.0);
  const ProjectionResult r = project_qre(y, cs);
  EXPECT_LE(cs.max_violation(r.X), 1e-6);
}

TEST(Projection, PythagoreanInequality) {
  // Bregman projections satisfy D(Z, X*) + D(X*, Y) <= D(Z, Y) for feasible Z.
  SplitMix64 rng(89);
  for (int trial = 0; trial < 30; ++trial) {
    const OmpConfig cfg = small_config(rng, 4, false);
    const ConstraintSet cs = random_kt(rng, cfg);
    const SymMatrix y = random_pd(rng, cfg.N(), cfg.tau * 2.5);
    const ProjectionResult r = project_qre(y, cs);
    const SymMatrix z = SymMatrix::identity(cfg.N(), cfg.tau / cfg.N());
    ASSERT_LE(cs.max_violation(z), 1e-12);
    EXPECT_LE(qre(z, r.X) + qre(r.X, y), qre(z, y) + 1e-6);
  }
}

TEST(Dual, AtZeroIsMinusTrace) {
  SplitMix64 rng(97);
  const OmpConfig cfg = small_config(rng, 4, false);
  const ConstraintSet cs = random_kt(rng, cfg);
  const SymMatrix y = random_pd(rng, cfg.N(), 3.0);
  EXPECT_NEAR(dual_objective(y, cs, std::vector<double>(4, 0.0)), -3.0, 1e-12);
}

TEST(Dual, ConcaveAlongSegments) {
  SplitMix64 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const OmpConfig cfg = small_config(rng, 2 << rng.below(2), rng.below(2) == 0);
    const ConstraintSet cs = random_kt(rng, cfg);
    const SymMatrix y = random_pd(rng, cfg.N(), cfg.tau);
    std::vector<double> a(4), b(4), mid(4);
    for (int j = 0; j < 4; ++j) {
      a[j] = rng.uniform(0, 3);
      b[j] = rng.uniform(0, 3);
      mid[j] = 0.5 * (a[j] + b[j]);
    }
    EXPECT_GE(dual_objective(y, cs, mid),
              0.5 * (dual_objective(y, cs, a) + dual_objective(y, cs, b)) - 1e-9);
  }
}

TEST(Dual, GradientMatchesFiniteDifferences) {
  SplitMix64 rng(103);
  for (int trial = 0; trial < 30; ++trial) {
    const OmpConfig cfg = small_config(rng, 4, rng.below(2) == 0);
    const ConstraintSet cs = random_kt(rng, cfg);
    const SymMatrix y = random_pd(rng, cfg.N(), cfg.tau);
    std::vector<double> a(4);
    for (double& v : a) v = rng.uniform(0.1, 2.0);
    const std::vector<double> g = dual_gradient(y, cs, a);
    for (std::size_t j = 0; j < 4; ++j) {
      std::vector<double> up = a, dn = a;
      up[j] += 1e-5;
      dn[j] -= 1e-5;
      EXPECT_NEAR((dual_objective(y, cs, up) - dual_objective(y, cs, dn)) / 2e-5, g[j], 1e-5);
    }
  }
}

TEST(Dual, StrongDualityWithProjection) {
  // min D(X, Y) over the set = Tr Y + max of the dual.
  SplitMix64 rng(107);
  for (int trial = 0; trial < 30; ++trial) {
    const OmpConfig cfg = small_config(rng, 4, rng.below(2) == 0);
    const ConstraintSet cs = random_kt(rng, cfg);
    const SymMatrix y = random_pd(rng, cfg.N(), cfg.tau * 2.0);
    const ProjectionResult r = project_qre(y, cs);
    EXPECT_NEAR(qre(r.X, y), y.trace() + dual_objective(y, cs, r.duals), 1e-7);
  }
}

TEST(OloRound, ZeroLossKeepsState) {
  const OloState s = init_state(4.0, 4, 0.3);
  const OloRound r = olo_round(s, SymMatrix(4), trace_ball(4, 4.0));
  EXPECT_EQ(r.loss, 0.0);
  EXPECT_LE(max_abs(r.next.X - s.X), 1e-12);
  EXPECT_EQ(r.next.round, 2);
}

TEST(OloRound, TraceBallRunStaysFeasible) {
  SplitMix64 rng(109);
  const double tau = 3.0;
  OloState s = init_state(tau, 5, 0.2);
  const ConstraintSet cs = trace_ball(5, tau);
  for (int t = 0; t < 100; ++t) {
    SymMatrix L = random_sym(rng, 5);
    L *= 1.0 / spectral_norm(L);
    const OloRound r = olo_round(s, L, cs);
    EXPECT_LE(r.eta_norm, 0.2 + 1e-12);
    s = r.next;
    ASSERT_LE(s.X.trace(), tau + 1e-6);
    ASSERT_GE(min_eigenvalue(s.X), -1e-8);
  }
}

TEST(OloRound, RegretWithinLocalNormBound) {
  // Diagonal instances: every X_t is diagonal, the comparator set is the
  // simplex scaled by tau, so the best fixed point puts all mass on one
  // coordinate.
  SplitMix64 rng(113);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(6));
    const double tau = rng.uniform(1.0, 5.0);
    const int T = 200;
    const double eta = std::sqrt(tau * std::log(d) / (4.0 * T));
    OloState s = init_state(tau, d, eta);
    const ConstraintSet cs = trace_ball(d, tau);
    std::vector<double> total(static_cast<std::size_t>(d), 0.0);
    double learner = 0.0, local = 0.0;
    for (int t = 0; t < T; ++t) {
      std::vector<double> l(static_cast<std::size_t>(d));
      for (double& v : l) v = rng.uniform(-1.0, 1.0);
      const SymMatrix L = SymMatrix::diagonal(l);
      local += inner(s.X, square(L));
      const OloRound r = olo_round(s, L, cs);
      learner += r.loss;
      for (int k = 0; k < d; ++k) total[k] += l[k];
      s = r.next;
    }
    // With nonnegative trace slack the best point is tau e_k or 0.
    double best = 0.0;
    for (double v : total) best = std::min(best, tau * v);
    EXPECT_LE(learner - best, eta * local + std::max(tau * std::log(d), tau) / eta + 1e-9);
  }
}

TEST(OloRound, DimensionMismatch) {
  const OloState s = init_state(1.0, 3, 0.1);
  EXPECT_THROW(olo_round(s, SymMatrix(2), trace_ball(3, 1.0)), DimensionError);
}
