#pragma once

// Online matrix prediction reduced to online linear optimisation over the
// 2p x 2p embedding: index bookkeeping, predictions, sparse loss matrices and
// the per-round four-constraint polytope.

#include <optional>
#include <vector>

#include "ompred/decompose.hpp"
#include "ompred/loss.hpp"
#include "ompred/mmw.hpp"

namespace ompred {

struct PredictionRange {
  double lo = -1.0;
  double hi = 1.0;

  bool contains(double y, double slack = 0.0) const { return y >= lo - slack && y <= hi + slack; }
};

inline constexpr PredictionRange kSignedRange{-1.0, 1.0};
inline constexpr PredictionRange kUnitRange{0.0, 1.0};

struct OmpConfig {
  int m = 0;
  int n = 0;
  bool symmetric_class = false;
  int q = 0;
  int p = 0;
  double beta = 1.0;
  double tau = 0.0;
  double G = 1.0;
  int T = 1;
  PredictionRange range = kSignedRange;
  double eta = 0.0;

  int N() const { return 2 * p; }

  /// Derives q and p from the shape and class, checks every invariant
  /// (DomainError on failure) and fills eta from eta_default unless given.
  static OmpConfig make(int m, int n, bool symmetric_class, double beta, double tau, double G,
                        int T, PredictionRange range, std::optional<double> eta = std::nullopt);
};

/// sqrt(tau log(2p) / (beta 4 G^2 T)).
double eta_default(const OmpConfig& cfg);

/// 2 G sqrt(tau beta log(2p) T).
double regret_bound(const OmpConfig& cfg);

/// X(i, j + q) - X(p + i, p + j + q) for 1-based (i, j).
double predict(const SymMatrix& X, int i, int j, const OmpConfig& cfg);

/// g at (i, j+q) and its mirror, -g at (p+i, p+j+q) and its mirror.
SymMatrix loss_matrix(double g, int i, int j, const OmpConfig& cfg);

/// Diagonal sum <= 4 beta, prediction <= hi, -prediction <= -lo, trace <= tau.
ConstraintSet constraints_Kt(int i, int j, const OmpConfig& cfg);

/// diag(P, N).
SymMatrix embed_phi(const Decomposition& d);

struct LossEvent {
  int t = 0;
  int i = 0;
  int j = 0;
  double yhat = 0.0;
  double g = 0.0;
  double loss = 0.0;
  LossFn fn;
};

struct OmpSession {
  OmpConfig config;
  OloState olo;             // olo.X is the most recently played X_t
  SymMatrix pending_log_Y;  // log Y_t for the next round
  std::vector<LossEvent> history;
  double cumulative_loss = 0.0;
  double linear_loss = 0.0;  // sum of X_t . L_t
  double max_eta_norm = 0.0;
  double max_violation = 0.0;
  double max_slackness = 0.0;
  int clamps = 0;

  int round() const { return olo.round; }
};

OmpSession start_session(const OmpConfig& cfg);

/// One round: project Y_t onto K_t(i, j), predict, charge the loss, stash the
/// exponentiated step. Predictions up to 1e-6 outside the range are clamped;
/// beyond that InvariantViolation. A loss whose Lipschitz constant exceeds G
/// is a DomainError.
const LossEvent& omp_round(OmpSession& s, int i, int j, const LossFn& loss,
                           double tol = kDefaultProjectionTol);

}  // namespace ompred
