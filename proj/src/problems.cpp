#include "ompred/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ompred/error.hpp"
#include "ompred/search.hpp"

namespace ompred {

OmpConfig maxcut_config(int n, int T, std::optional<double> eta) {
  if (n < 2) throw DomainError("max-cut needs n >= 2");
  return OmpConfig::make(n, n, true, 1.0, static_cast<double>(n), 0.5, T, kSignedRange, eta);
}

OmpConfig gambling_config(int n, int T, std::optional<double> eta) {
  if (n < 2) throw DomainError("gambling needs n >= 2");
  // The learner runs on the padded n' x n' shape; the adversary only uses [n].
  const int k = ceil_log2(n);
  const int padded = 1 << k;
  const double beta = k + 1.0;
  return OmpConfig::make(padded, padded, false, beta, 4.0 * padded * beta, 1.0, T, kUnitRange, eta);
}

OmpConfig cf_config(int m, int n, double tau0, double G, int T, std::optional<double> eta) {
  if (m < 1 || n < 1) throw DomainError("shape must be positive");
  const double cap = m * std::sqrt(static_cast<double>(n));
  if (tau0 > cap * (1.0 + 1e-12)) {
    throw DomainError("trace bound " + std::to_string(tau0) + " exceeds m sqrt(n) = " + std::to_string(cap));
  }
  if (!(tau0 >= 0.5)) throw DomainError("trace bound must be at least 1/2");
  return OmpConfig::make(m, n, false, std::sqrt(static_cast<double>(m + n)), 2.0 * tau0, G, T,
                         kSignedRange, eta);
}

// ---------------------------------------------------------------------------
// Cuts

CutResult best_cut_bruteforce(std::span<const Round> rounds, int n, bool parallel) {
  if (n < 1 || n > 20) throw DomainError("brute-force cut search needs 1 <= n <= 20");
  const CutCosts c = compile_cut_costs(rounds, n);
  const SearchResult r = parallel ? search_cuts_parallel(c) : search_cuts_serial(c);
  return CutResult{CutSet(n, r.index), r.loss};
}

std::vector<std::uint64_t> best_cut_tie_set(std::span<const Round> rounds, int n) {
  if (n < 1 || n > 20) throw DomainError("brute-force cut search needs 1 <= n <= 20");
  return optimal_cuts(compile_cut_costs(rounds, n));
}

SymMatrix maxcut_weights(std::span<const Round> rounds, int n) {
  SymMatrix w(n);
  for (const Round& r : rounds) {
    if (r.i < 1 || r.i > n || r.j < 1 || r.j > n) throw DomainError("round index outside [1, n]");
    if (r.i == r.j) throw DomainError("self-pair in a max-cut sequence");
    w.add(r.i - 1, r.j - 1, r.fn.param);
  }
  return w;
}

WeightedCut max_weight_cut(const SymMatrix& w) {
  const int n = w.order();
  if (n < 1 || n > 20) throw DomainError("max-weight cut enumeration needs 1 <= n <= 20");
  WeightedCut out{-std::numeric_limits<double>::infinity(), {}};
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    double s = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (((mask >> a) ^ (mask >> b)) & 1U) s += w(a, b);
    if (s > out.weight) {
      out.weight = s;
      out.ties.clear();
    }
    if (s == out.weight) out.ties.push_back(mask);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Permutations

PermutationResult best_permutation_bruteforce(std::span<const Round> rounds, int n, bool parallel) {
  if (n < 1 || n > 8) throw DomainError("brute-force permutation search needs 1 <= n <= 8");
  const PermCosts c = compile_perm_costs(rounds, n);
  const SearchResult r = parallel ? search_perms_parallel(c) : search_perms_serial(c);
  std::vector<int> mapping = permutation_of_rank(n, r.index);
  for (int& v : mapping) ++v;
  return PermutationResult{Permutation(std::move(mapping)), r.loss};
}

// ---------------------------------------------------------------------------
// Collaborative filtering

double comparator_loss(std::span<const Round> rounds, const Matrix& w) {
  double s = 0.0;
  for (const Round& r : rounds) s += r.fn.value(w(r.i - 1, r.j - 1));
  return s;
}

Matrix cap_trace_norm(const Matrix& w, double tau0) {
  const SingularTriplets svd = singular_triplets(w);
  double total = 0.0;
  for (double s : svd.sigma) total += s;
  if (total <= tau0) return w;
  // Largest theta with sum (sigma - theta)_+ = tau0; sigma is descending.
  double theta = 0.0;
  double prefix = 0.0;
  for (std::size_t k = 0; k < svd.sigma.size(); ++k) {
    prefix += svd.sigma[k];
    const double cand = (prefix - tau0) / static_cast<double>(k + 1);
    if (k + 1 == svd.sigma.size() || cand >= svd.sigma[k + 1]) {
      theta = cand;
      break;
    }
  }
  Matrix out(w.rows(), w.cols());
  for (std::size_t k = 0; k < svd.sigma.size(); ++k) {
    const double s = svd.sigma[k] - theta;
    if (s <= 0.0) break;
    const int kk = static_cast<int>(k);
    for (int i = 0; i < w.rows(); ++i)
      for (int j = 0; j < w.cols(); ++j) out(i, j) += s * svd.u(i, kk) * svd.v(j, kk);
  }
  return out;
}

namespace {

struct EntryLosses {
  int m;
  int n;
  std::vector<double> linear;               // aggregated linear coefficients
  std::vector<std::vector<LossFn>> others;  // non-linear losses per entry

  double value(const Matrix& w) const {
    double s = 0.0;
    for (int e = 0; e < m * n; ++e) {
      const double x = w(e / n, e % n);
      s += linear[static_cast<std::size_t>(e)] * x;
      for (const LossFn& f : others[static_cast<std::size_t>(e)]) s += f.value(x);
    }
    return s;
  }

  Matrix subgradient(const Matrix& w) const {
    Matrix g(m, n);
    for (int e = 0; e < m * n; ++e) {
      const double x = w(e / n, e % n);
      double d = linear[static_cast<std::size_t>(e)];
      for (const LossFn& f : others[static_cast<std::size_t>(e)]) d += f.subderivative(x);
      g(e / n, e % n) = d;
    }
    return g;
  }
};

double frob(const Matrix& a, const Matrix& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) s += a.data()[k] * b.data()[k];
  return s;
}

Matrix clip(Matrix w) {
  for (int i = 0; i < w.rows(); ++i)
    for (int j = 0; j < w.cols(); ++j) w(i, j) = std::clamp(w(i, j), -1.0, 1.0);
  return w;
}

// Alternates the two projections, then clips and rescales so the result is
// exactly feasible.
Matrix make_feasible(Matrix w, double tau0) {
  for (int pass = 0; pass < 8; ++pass) w = cap_trace_norm(clip(std::move(w)), tau0);
  w = clip(std::move(w));
  const double tn = trace_norm(w);
  if (tn > tau0) {
    const double s = tau0 / tn;
    for (int i = 0; i < w.rows(); ++i)
      for (int j = 0; j < w.cols(); ++j) w(i, j) *= s;
  }
  return w;
}

}  // namespace

CfComparator best_cf_subgradient(std::span<const Round> rounds, int m, int n, double tau0, int iters) {
  if (m < 1 || n < 1) throw DomainError("shape must be positive");
  if (!(tau0 > 0.0)) throw DomainError("trace bound must be positive");
  if (iters < 1) throw DomainError("iteration count must be positive");
  EntryLosses f{m, n, std::vector<double>(static_cast<std::size_t>(m * n), 0.0),
                std::vector<std::vector<LossFn>>(static_cast<std::size_t>(m * n))};
  for (const Round& r : rounds) {
    if (r.i < 1 || r.i > m || r.j < 1 || r.j > n) throw DomainError("round index outside the shape");
    const auto e = static_cast<std::size_t>((r.i - 1) * n + (r.j - 1));
    if (r.fn.kind == LossKind::Linear) {
      f.linear[e] += r.fn.param;
    } else {
      f.others[e].push_back(r.fn);
    }
  }

  Matrix w(m, n);
  double fw = f.value(w);
  CfComparator best{w, fw, -std::numeric_limits<double>::infinity()};
  for (int k = 1; k <= iters; ++k) {
    const Matrix g = f.subgradient(w);
    const double ginf = max_abs(g);
    double l1 = 0.0;
    for (double v : g.data()) l1 += std::fabs(v);
    const SingularTriplets svd = singular_triplets(g);
    const double op = svd.sigma.empty() ? 0.0 : svd.sigma.front();
    // f(W*) >= f(W) + min_C <g, V> - <g, W>, and min_C <g, V> is at least
    // both -||g||_1 (box) and -tau0 ||g||_op (ball).
    best.lower_bound = std::max(best.lower_bound, fw - frob(g, w) + std::max(-l1, -tau0 * op));
    if (ginf == 0.0) break;

    Matrix y(m, n);
    const double step = 1.0 / (std::sqrt(static_cast<double>(k)) * ginf);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) y(i, j) = w(i, j) - step * g(i, j);
    w = make_feasible(std::move(y), tau0);
    fw = f.value(w);
    if (fw < best.loss) {
      best.W = w;
      best.loss = fw;
    }
  }
  best.lower_bound = std::min(best.lower_bound, best.loss);
  return best;
}

RegretReport evaluate_run(double learner_loss, double comparator_loss, double bound) {
  RegretReport r;
  r.learner_loss = learner_loss;
  r.comparator_loss = comparator_loss;
  r.regret = learner_loss - comparator_loss;
  r.bound = bound;
  r.within_bound = r.regret <= bound;
  return r;
}

}  // namespace ompred
