#include "ompred/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "ompred/error.hpp"

namespace ompred {

namespace {

constexpr double kClampSlack = 1e-6;

struct Slots {
  int a;  // row of the first block
  int b;  // column of the first block
};

Slots slots(int i, int j, const OmpConfig& cfg) {
  if (i < 1 || i > cfg.m || j < 1 || j > cfg.n) {
    throw DomainError("index (" + std::to_string(i) + ", " + std::to_string(j) +
                      ") outside the " + std::to_string(cfg.m) + "x" + std::to_string(cfg.n) +
                      " shape");
  }
  Slots s{i - 1, j - 1 + cfg.q};
  if (s.a == s.b) throw DomainError("self-pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  return s;
}

}  // namespace

OmpConfig OmpConfig::make(int m, int n, bool symmetric_class, double beta, double tau, double G,
                          int T, PredictionRange range, std::optional<double> eta) {
  if (m < 1 || n < 1) throw DomainError("shape must be positive");
  if (symmetric_class && m != n) throw DomainError("a symmetric class needs a square shape");
  if (!(beta >= 1.0)) throw DomainError("beta must be at least 1");
  if (!(G > 0.0)) throw DomainError("G must be positive");
  if (T < 1) throw DomainError("T must be at least 1");
  const bool signed_range = range.lo == -1.0 && range.hi == 1.0;
  const bool unit_range = range.lo == 0.0 && range.hi == 1.0;
  if (!signed_range && !unit_range) throw DomainError("prediction range must be [-1, 1] or [0, 1]");

  OmpConfig c;
  c.m = m;
  c.n = n;
  c.symmetric_class = symmetric_class;
  c.q = symmetric_class ? 0 : m;
  c.p = symmetric_class ? n : m + n;
  c.beta = beta;
  c.tau = tau;
  c.G = G;
  c.T = T;
  c.range = range;
  if (!(tau >= 1.0)) throw DomainError("tau must be at least 1");
  if (tau > 2.0 * c.p * beta * (1.0 + 1e-12)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "tau = %g exceeds 2 p beta = %g", tau, 2.0 * c.p * beta);
    throw DomainError(buf);
  }
  if (eta) {
    if (!(*eta > 0.0) || !std::isfinite(*eta)) throw DomainError("eta must be positive");
    c.eta = *eta;
  } else {
    c.eta = eta_default(c);
  }
  return c;
}

double eta_default(const OmpConfig& cfg) {
  if (cfg.T < 1) throw DomainError("T must be at least 1");
  const double gamma = 4.0 * cfg.G * cfg.G;
  return std::sqrt(cfg.tau * std::log(2.0 * cfg.p) / (cfg.beta * gamma * cfg.T));
}

double regret_bound(const OmpConfig& cfg) {
  return 2.0 * cfg.G * std::sqrt(cfg.tau * cfg.beta * std::log(2.0 * cfg.p) * cfg.T);
}

double predict(const SymMatrix& X, int i, int j, const OmpConfig& cfg) {
  if (X.order() != cfg.N()) throw DimensionError("iterate order differs from 2p");
  const Slots s = slots(i, j, cfg);
  return X(s.a, s.b) - X(cfg.p + s.a, cfg.p + s.b);
}

SymMatrix loss_matrix(double g, int i, int j, const OmpConfig& cfg) {
  if (std::fabs(g) > cfg.G + 1e-12) throw DomainError("|g| exceeds G");
  const Slots s = slots(i, j, cfg);
  SymMatrix L(cfg.N());
  L.set(s.a, s.b, g);
  L.set(cfg.p + s.a, cfg.p + s.b, -g);
  return L;
}

ConstraintSet constraints_Kt(int i, int j, const OmpConfig& cfg) {
  const Slots s = slots(i, j, cfg);
  const int p = cfg.p;
  ConstraintSet cs(cfg.N(), cfg.tau);

  LinConstraint diag;
  diag.label = "diagonal";
  diag.bound = 4.0 * cfg.beta;
  for (int r : {s.a, s.b, p + s.a, p + s.b}) diag.entries.push_back({r, r, 1.0});
  cs.add(std::move(diag));

  LinConstraint upper;
  upper.label = "upper";
  upper.bound = cfg.range.hi;
  upper.entries = {{s.a, s.b, 0.5}, {p + s.a, p + s.b, -0.5}};
  cs.add(std::move(upper));

  LinConstraint lower;
  lower.label = "lower";
  lower.bound = cfg.range.lo == 0.0 ? 0.0 : -cfg.range.lo;
  lower.entries = {{s.a, s.b, -0.5}, {p + s.a, p + s.b, 0.5}};
  cs.add(std::move(lower));

  LinConstraint trace;
  trace.label = "trace";
  trace.bound = cfg.tau;
  for (int r = 0; r < cfg.N(); ++r) trace.entries.push_back({r, r, 1.0});
  cs.add(std::move(trace));
  return cs;
}

SymMatrix embed_phi(const Decomposition& d) {
  const int p = d.order();
  if (d.N.order() != p) throw DimensionError("embed_phi: P and N orders differ");
  SymMatrix phi(2 * p);
  for (int r = 0; r < p; ++r)
    for (int c = r; c < p; ++c) {
      phi.set(r, c, d.P(r, c));
      phi.set(p + r, p + c, d.N(r, c));
    }
  return phi;
}

OmpSession start_session(const OmpConfig& cfg) {
  OmpSession s;
  s.config = cfg;
  s.olo = init_state(cfg.tau, cfg.N(), cfg.eta);
  s.pending_log_Y = s.olo.log_X;
  s.history.reserve(static_cast<std::size_t>(cfg.T));
  return s;
}

const LossEvent& omp_round(OmpSession& s, int i, int j, const LossFn& loss, double tol) {
  const OmpConfig& cfg = s.config;
  if (s.olo.round > cfg.T) throw DomainError("session already played T rounds");
  if (loss.lipschitz() > cfg.G + 1e-12) throw DomainError("loss is not G-Lipschitz");
  const Slots slot = slots(i, j, cfg);

  ProjectionResult proj = project_qre_log(s.pending_log_Y, constraints_Kt(i, j, cfg), tol);
  s.max_violation = std::max(s.max_violation, proj.max_violation);
  s.max_slackness = std::max(s.max_slackness, proj.max_slackness);
  s.olo.X = std::move(proj.X);
  s.olo.log_X = std::move(proj.log_X);

  const double raw = predict(s.olo.X, i, j, cfg);
  double yhat = raw;
  if (!cfg.range.contains(raw)) {
    if (!cfg.range.contains(raw, kClampSlack)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "prediction %.9g at round %d outside [%g, %g]", raw,
                    s.olo.round, cfg.range.lo, cfg.range.hi);
      throw InvariantViolation(buf);
    }
    yhat = std::clamp(raw, cfg.range.lo, cfg.range.hi);
    ++s.clamps;
  }

  const double g = loss.subderivative(yhat);
  if (std::fabs(g) > cfg.G + 1e-12) throw InvariantViolation("subderivative exceeds G");
  const double value = loss.value(yhat);
  s.cumulative_loss += value;
  s.linear_loss += 2.0 * g * raw;
  s.max_eta_norm = std::max(s.max_eta_norm, s.olo.eta * std::fabs(g));

  s.pending_log_Y = s.olo.log_X;
  s.pending_log_Y.add(slot.a, slot.b, -s.olo.eta * g);
  s.pending_log_Y.add(cfg.p + slot.a, cfg.p + slot.b, s.olo.eta * g);

  s.history.push_back(LossEvent{s.olo.round, i, j, yhat, g, value, loss});
  ++s.olo.round;
  return s.history.back();
}

}  // namespace ompred
