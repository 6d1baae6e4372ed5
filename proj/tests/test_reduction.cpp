#include <cmath>

#include <gtest/gtest.h>

#include "ompred/decompose.hpp"
#include "ompred/error.hpp"
#include "ompred/problems.hpp"
#include "ompred/reduction.hpp"
#include "support.hpp"

using namespace ompred;
using namespace testing_support;

TEST(Config, DerivedShape) {
  const OmpConfig sym = OmpConfig::make(5, 5, true, 1.0, 5.0, 0.5, 10, kSignedRange);
  EXPECT_EQ(sym.q, 0);
  EXPECT_EQ(sym.p, 5);
  EXPECT_EQ(sym.N(), 10);
  const OmpConfig rect = OmpConfig::make(3, 4, false, 2.0, 5.0, 1.0, 10, kUnitRange);
  EXPECT_EQ(rect.q, 3);
  EXPECT_EQ(rect.p, 7);
}

TEST(Config, RejectsInvalid) {
  EXPECT_THROW(OmpConfig::make(3, 4, true, 1, 2, 1, 10, kSignedRange), DomainError);
  EXPECT_THROW(OmpConfig::make(2, 2, false, 0.5, 2, 1, 10, kSignedRange), DomainError);
  EXPECT_THROW(OmpConfig::make(2, 2, false, 1, 0.5, 1, 10, kSignedRange), DomainError);
  EXPECT_THROW(OmpConfig::make(2, 2, false, 1, 8.5, 1, 10, kSignedRange), DomainError);
  EXPECT_NO_THROW(OmpConfig::make(2, 2, false, 1, 8.0, 1, 10, kSignedRange));
  EXPECT_THROW(OmpConfig::make(2, 2, false, 1, 2, 0, 10, kSignedRange), DomainError);
  EXPECT_THROW(OmpConfig::make(2, 2, false, 1, 2, 1, 0, kSignedRange), DomainError);
  EXPECT_THROW(OmpConfig::make(2, 2, false, 1, 2, 1, 10, PredictionRange{-2, 2}), DomainError);
  EXPECT_THROW(OmpConfig::make(2, 2, false, 1, 2, 1, 10, kSignedRange, 0.0), DomainError);
}

TEST(Eta, DefaultValue) {
  // tau = 4, p = 4, beta = 1, G = 1/2, T = 100: sqrt(4 log 8 / 100)
  const OmpConfig cfg = OmpConfig::make(4, 4, true, 1.0, 4.0, 0.5, 100, kSignedRange);
  EXPECT_NEAR(cfg.eta, 0.28840537732017657, 1e-14);
  EXPECT_NEAR(eta_default(cfg), std::sqrt(4.0 * std::log(8.0) / 100.0), 1e-15);
}

TEST(Eta, ExampleValue) {
  OmpConfig cfg;
  cfg.tau = 4.0;
  cfg.p = 1;
  cfg.beta = 1.0;
  cfg.G = 0.5;
  cfg.T = 100;
  EXPECT_NEAR(eta_default(cfg), 0.16651092223153954, 1e-14);
  EXPECT_NEAR(maxcut_config(8, 800).eta, 0.16651092223153954, 1e-14);
}

TEST(Eta, ScalesWithHorizon) {
  const OmpConfig a = maxcut_config(6, 500);
  const OmpConfig b = maxcut_config(6, 1000);
  EXPECT_NEAR(a.eta / b.eta, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(regret_bound(b) / regret_bound(a), std::sqrt(2.0), 1e-12);
}

TEST(Predict, ZeroAtStart) {
  const OmpConfig cfg = OmpConfig::make(3, 4, false, 2.0, 5.0, 1.0, 10, kSignedRange);
  const OmpSession s = start_session(cfg);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 4; ++j) EXPECT_EQ(predict(s.olo.X, i, j, cfg), 0.0);
}

TEST(Predict, ReadsBothBlocks) {
  const OmpConfig cfg = OmpConfig::make(2, 3, false, 1.0, 2.0, 1.0, 10, kSignedRange);
  SymMatrix x(cfg.N());
  x.set(1, 2 + 2, 0.7);                      // (i=2, j=3) in the first block
  x.set(cfg.p + 1, cfg.p + 2 + 2, 0.2);       // and its mirror block
  EXPECT_NEAR(predict(x, 2, 3, cfg), 0.5, 1e-15);
  EXPECT_THROW(predict(x, 3, 1, cfg), DomainError);
  EXPECT_THROW(predict(SymMatrix(4), 1, 1, cfg), DimensionError);
}

TEST(LossMatrix, Structure) {
  const OmpConfig cfg = OmpConfig::make(4, 4, true, 1.0, 4.0, 0.5, 10, kSignedRange);
  const SymMatrix L = loss_matrix(0.5, 1, 3, cfg);
  EXPECT_EQ(L(0, 2), 0.5);
  EXPECT_EQ(L(2, 0), 0.5);
  EXPECT_EQ(L(4, 6), -0.5);
  EXPECT_EQ(L(6, 4), -0.5);
  EXPECT_EQ(L.trace(), 0.0);
  EXPECT_NEAR(inner(L, L), 4 * 0.25, 1e-15);
  EXPECT_NEAR(spectral_norm(L), 0.5, 1e-14);
  EXPECT_THROW(loss_matrix(0.6, 1, 3, cfg), DomainError);
  EXPECT_THROW(loss_matrix(0.5, 2, 2, cfg), DomainError);
}

TEST(LossMatrix, InnerIsTwiceGTimesPrediction) {
  SplitMix64 rng(201);
  const OmpConfig cfg = OmpConfig::make(3, 4, false, 2.0, 5.0, 1.0, 10, kSignedRange);
  for (int trial = 0; trial < 20; ++trial) {
    const SymMatrix x = random_sym(rng, cfg.N());
    const int i = 1 + static_cast<int>(rng.below(3));
    const int j = 1 + static_cast<int>(rng.below(4));
    const double g = rng.uniform(-1, 1);
    EXPECT_NEAR(inner(x, loss_matrix(g, i, j, cfg)), 2.0 * g * predict(x, i, j, cfg), 1e-12);
  }
}

TEST(Kt, Bounds) {
  const OmpConfig s = OmpConfig::make(4, 4, true, 1.5, 4.0, 0.5, 10, kSignedRange);
  const ConstraintSet a = constraints_Kt(1, 2, s);
  ASSERT_EQ(a.size(), 4u);
  EXPECT_EQ(a[0].bound, 6.0);
  EXPECT_EQ(a[1].bound, 1.0);
  EXPECT_EQ(a[2].bound, 1.0);
  EXPECT_EQ(a[3].bound, 4.0);
  const OmpConfig u = OmpConfig::make(4, 4, false, 3.0, 48.0, 1.0, 10, kUnitRange);
  const ConstraintSet b = constraints_Kt(1, 2, u);
  EXPECT_EQ(b[0].bound, 12.0);
  EXPECT_EQ(b[1].bound, 1.0);
  EXPECT_EQ(b[2].bound, 0.0);
  EXPECT_EQ(b[3].bound, 48.0);
}

TEST(Kt, ConstraintsReadThePrediction) {
  SplitMix64 rng(203);
  const OmpConfig cfg = OmpConfig::make(3, 3, false, 1.0, 3.0, 1.0, 10, kSignedRange);
  const SymMatrix x = random_sym(rng, cfg.N());
  const ConstraintSet cs = constraints_Kt(2, 3, cfg);
  const double y = predict(x, 2, 3, cfg);
  EXPECT_NEAR(apply(cs[1], x), y, 1e-14);
  EXPECT_NEAR(apply(cs[2], x), -y, 1e-14);
  EXPECT_NEAR(apply(cs[3], x), x.trace(), 1e-14);
  EXPECT_NEAR(apply(cs[0], x), x(1, 1) + x(5, 5) + x(7, 7) + x(11, 11), 1e-14);
}

TEST(Phi, InnerWithLossMatrix) {
  SplitMix64 rng(205);
  const int m = 3, n = 4;
  const Matrix w = random_matrix(rng, m, n, 0.5);
  const Decomposition d = decompose_trace_norm(w, Embedding::Block);
  const OmpConfig cfg = OmpConfig::make(m, n, false, std::max(1.0, d.beta), std::max(1.0, d.tau), 1.0,
                                        10, kSignedRange);
  const SymMatrix phi = embed_phi(d);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j) EXPECT_NEAR(inner(phi, loss_matrix(0.3, i, j, cfg)), 0.6 * w(i - 1, j - 1), 1e-12);
}

TEST(Phi, CutDecompositionFeasibleInEveryKt) {
  SplitMix64 rng(207);
  const int n = 6;
  const OmpConfig cfg = maxcut_config(n, 10);
  for (int trial = 0; trial < 20; ++trial) {
    const CutSet c(n, rng.below(1u << n));
    const SymMatrix phi = embed_phi(decompose_cut(c));
    EXPECT_GE(min_eigenvalue(phi), -1e-12);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        EXPECT_LE(constraints_Kt(i, j, cfg).max_violation(phi), 1e-12);
      }
  }
}

TEST(Round, FirstRoundMaxcut) {
  const OmpConfig cfg = maxcut_config(4, 10);
  OmpSession s = start_session(cfg);
  const LossEvent& e = omp_round(s, 1, 2, LossFn{LossKind::AbsoluteHalved, 1.0});
  EXPECT_EQ(e.t, 1);
  EXPECT_NEAR(e.yhat, 0.0, 1e-12);
  EXPECT_NEAR(e.loss, 0.5, 1e-12);
  EXPECT_EQ(e.g, -0.5);
  EXPECT_EQ(s.round(), 2);
  EXPECT_NEAR(s.max_eta_norm, cfg.eta * 0.5, 1e-15);
  // The next iterate leans toward the label.
  const LossEvent& f = omp_round(s, 1, 2, LossFn{LossKind::AbsoluteHalved, 1.0});
  EXPECT_GT(f.yhat, 0.0);
}

TEST(Round, RejectsBadInput) {
  const OmpConfig cfg = maxcut_config(4, 2);
  OmpSession s = start_session(cfg);
  EXPECT_THROW(omp_round(s, 1, 1, LossFn{LossKind::AbsoluteHalved, 1.0}), DomainError);
  EXPECT_THROW(omp_round(s, 1, 2, LossFn{LossKind::Absolute, 1.0}), DomainError);
  omp_round(s, 1, 2, LossFn{LossKind::AbsoluteHalved, 1.0});
  omp_round(s, 1, 2, LossFn{LossKind::AbsoluteHalved, 1.0});
  EXPECT_THROW(omp_round(s, 1, 2, LossFn{LossKind::AbsoluteHalved, 1.0}), DomainError);
}

TEST(Round, ReductionInequalityPerRound) {
  // loss(yhat) - loss(W_ij) <= (X_t . L_t - phi(W) . L_t) / 2 for the cut class.
  SplitMix64 rng(211);
  const int n = 6;
  const OmpConfig cfg = maxcut_config(n, 200);
  OmpSession s = start_session(cfg);
  std::vector<SymMatrix> phis;
  std::vector<Matrix> ws;
  for (int k = 0; k < 8; ++k) {
    const CutSet c(n, rng.below(1u << n));
    phis.push_back(embed_phi(decompose_cut(c)));
    ws.push_back(cut_matrix(c).to_matrix());
  }
  for (int t = 0; t < 200; ++t) {
    int i = 1 + static_cast<int>(rng.below(n));
    int j = 1 + static_cast<int>(rng.below(n - 1));
    if (j >= i) ++j;
    const LossFn fn{LossKind::AbsoluteHalved, static_cast<double>(rng.rademacher())};
    const LossEvent e = omp_round(s, i, j, fn);
    const SymMatrix L = loss_matrix(e.g, i, j, cfg);
    const double played = inner(s.olo.X, L);
    for (std::size_t k = 0; k < phis.size(); ++k) {
      const double gap = e.loss - fn.value(ws[k](i - 1, j - 1));
      EXPECT_LE(gap, 0.5 * (played - inner(phis[k], L)) + 1e-6);
    }
    ASSERT_LE(constraints_Kt(i, j, cfg).max_violation(s.olo.X), 1e-6);
  }
  EXPECT_LE(s.max_violation, 1e-6);
}

TEST(Round, IteratesStayPsdOverLongRun) {
  SplitMix64 rng(213);
  const int n = 4;
  const int T = 10000;
  const OmpConfig cfg = maxcut_config(n, T);
  OmpSession s = start_session(cfg);
  double worst = 0.0;
  for (int t = 0; t < T; ++t) {
    int i = 1 + static_cast<int>(rng.below(n));
    int j = 1 + static_cast<int>(rng.below(n - 1));
    if (j >= i) ++j;
    omp_round(s, i, j, LossFn{LossKind::AbsoluteHalved, static_cast<double>(rng.rademacher())});
    if (t % 500 == 0 || t == T - 1) worst = std::min(worst, min_eigenvalue(s.olo.X));
  }
  EXPECT_GE(worst, -1e-9);
  EXPECT_LE(s.max_eta_norm, 1.0);
}

TEST(Round, ClampPolicy) {
  const OmpConfig cfg = maxcut_config(4, 10);
  const LossFn fn{LossKind::AbsoluteHalved, 1.0};
  // exp of the 2x2 block [[l, c], [c, l]] has off-diagonal e^l sinh c with e^l = tau / N = 1/2.
  {
    OmpSession s = start_session(cfg);
    s.pending_log_Y.add(0, 1, std::asinh(2.0 * (1.0 + 5e-7)));
    const LossEvent& e = omp_round(s, 1, 2, fn, 10.0);
    EXPECT_EQ(e.yhat, 1.0);
    EXPECT_EQ(s.clamps, 1);
  }
  {
    OmpSession s = start_session(cfg);
    s.pending_log_Y.add(0, 1, 3.0);
    EXPECT_THROW(omp_round(s, 1, 2, fn, 10.0), InvariantViolation);
  }
}
