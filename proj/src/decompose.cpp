#include "ompred/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ompred/error.hpp"

namespace ompred {

bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

int ceil_log2(long n) {
  if (n < 1) throw DomainError("ceil_log2 requires n >= 1");
  int k = 0;
  while ((1L << k) < n) ++k;
  return k;
}

// ---------------------------------------------------------------------------
// CutSet / Permutation

CutSet::CutSet(int n, std::uint64_t mask) : n_(n), mask_(mask) {
  if (n < 1 || n > 64) throw DomainError("cut set size must be in [1, 64]");
  if (n < 64 && (mask >> n) != 0) throw DomainError("cut set has members outside [1, n]");
}

CutSet CutSet::from_members(int n, const std::vector<int>& members) {
  std::uint64_t mask = 0;
  for (int node : members) {
    if (node < 1 || node > n) {
      throw DomainError("cut member " + std::to_string(node) + " outside [1, " +
                        std::to_string(n) + "]");
    }
    mask |= std::uint64_t{1} << (node - 1);
  }
  return CutSet(n, mask);
}

std::vector<int> CutSet::members() const {
  std::vector<int> out;
  for (int node = 1; node <= n_; ++node)
    if (contains(node)) out.push_back(node);
  return out;
}

Permutation::Permutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
  const int n = static_cast<int>(mapping_.size());
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int v : mapping_) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
      throw DomainError("permutation mapping is not a bijection on {1..n}");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> m(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = i + 1;
  return Permutation(std::move(m));
}

// ---------------------------------------------------------------------------
// Cuts

std::vector<double> cut_vector(const CutSet& c) {
  std::vector<double> w(static_cast<std::size_t>(c.n()));
  for (int i = 1; i <= c.n(); ++i) w[static_cast<std::size_t>(i - 1)] = c.contains(i) ? 1.0 : -1.0;
  return w;
}

SymMatrix cut_matrix(const CutSet& c) {
  SymMatrix w(c.n());
  for (int i = 1; i <= c.n(); ++i)
    for (int j = i; j <= c.n(); ++j)
      w.set(i - 1, j - 1, c.contains(i) != c.contains(j) ? 1.0 : -1.0);
  return w;
}

Decomposition decompose_cut(const CutSet& c) {
  const std::vector<double> w = cut_vector(c);
  SymMatrix outer(c.n());
  for (int i = 0; i < c.n(); ++i)
    for (int j = i; j < c.n(); ++j) outer.set(i, j, w[i] * w[j]);
  return Decomposition{SymMatrix(c.n()), std::move(outer), 1.0, static_cast<double>(c.n())};
}

// ---------------------------------------------------------------------------
// Trace-norm class

Decomposition decompose_trace_norm(const Matrix& w, Embedding how) {
  for (double v : w.data()) {
    if (v < -1.0 || v > 1.0) throw ValidationError("decompose_trace_norm: entry outside [-1, 1]");
  }
  const SymMatrix y = symmetrize(w, how);
  const EigenDecomp eig = eig_sym(y);
  SymMatrix pos = matrix_fn(eig, [](double l) { return l >= 0.0 ? l : 0.0; });
  SymMatrix neg = matrix_fn(eig, [](double l) { return l < 0.0 ? -l : 0.0; });
  double trace = 0.0;
  for (double l : eig.values) trace += std::fabs(l);
  const double beta = std::max(1.0, std::sqrt(static_cast<double>(y.order())));
  return Decomposition{std::move(pos), std::move(neg), beta, trace};
}

// ---------------------------------------------------------------------------
// Triangular / permutation class

Matrix triangular(int n) {
  if (n < 1) throw DomainError("triangular(n) requires n >= 1");
  Matrix t(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) t(i, j) = 1.0;
  return t;
}

std::vector<double> singular_values_T(int n) {
  if (n < 1) throw DomainError("singular_values_T(n) requires n >= 1");
  std::vector<double> s(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    s[static_cast<std::size_t>(k - 1)] =
        1.0 / (2.0 * std::cos(k * std::numbers::pi / (2.0 * n + 1.0)));
  }
  return s;
}

namespace {

// One recursion step: from the decomposition of sym(T_{k-1}) (order 2h) to
// that of sym(T_k) (order 4h). The old matrix is cut into contiguous h x h
// blocks [[A, B], [C, D]]; new block b in {0,1,2,3} carries old block b / 2 in
// copy b % 2, and blocks of different copies do not interact. The corner
// part adds all-ones blocks J at (0,0), (0,3), (3,0), (3,3) to P and at
// (0,0), (3,3) to N.
SymMatrix interleave(const SymMatrix& old, int h, bool positive) {
  const int order = 4 * h;
  SymMatrix out(order);
  for (int r = 0; r < order; ++r) {
    const int rb = r / h;
    const int old_r = (rb / 2) * h + r % h;
    for (int c = r; c < order; ++c) {
      const int cb = c / h;
      double v = 0.0;
      if (rb % 2 == cb % 2) v = old((cb / 2) * h + c % h, old_r);
      const bool corner_r = (rb == 0 || rb == 3);
      const bool corner_c = (cb == 0 || cb == 3);
      if (positive) {
        if (corner_r && corner_c) v += 1.0;
      } else if (corner_r && rb == cb) {
        v += 1.0;
      }
      out.set(r, c, v);
    }
  }
  return out;
}

}  // namespace

Decomposition decompose_triangular(int k) {
  if (k < 0) throw DomainError("decompose_triangular(k) requires k >= 0");
  if (k > 20) throw DomainError("decompose_triangular(k): k too large for a dense matrix");
  SymMatrix P{{1.0, 1.0}, {1.0, 1.0}};
  SymMatrix N = SymMatrix::identity(2);
  for (int level = 1; level <= k; ++level) {
    const int h = 1 << (level - 1);
    P = interleave(P, h, true);
    N = interleave(N, h, false);
  }
  const double n = static_cast<double>(1L << k);
  return Decomposition{std::move(P), std::move(N), static_cast<double>(k + 1),
                       4.0 * n * (k + 1)};
}

Matrix perm_matrix(const Permutation& pi) {
  const int n = pi.n();
  Matrix w(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) w(i - 1, j - 1) = pi(i) <= pi(j) ? 1.0 : 0.0;
  return w;
}

Matrix block_permutation(const Permutation& pi) {
  const int n = pi.n();
  Matrix q(2 * n, 2 * n);
  for (int i = 1; i <= n; ++i) {
    q(i - 1, pi(i) - 1) = 1.0;
    q(n + i - 1, n + pi(i) - 1) = 1.0;
  }
  return q;
}

Decomposition decompose_permutation(const Permutation& pi) {
  const int n = pi.n();
  if (n < 1) throw DomainError("empty permutation");
  const int k = ceil_log2(n);
  const int padded = 1 << k;
  const Decomposition full = decompose_triangular(k);

  // Row indices of T_n and its columns inside sym(T_{n'}).
  std::vector<int> principal(static_cast<std::size_t>(2 * n));
  for (int a = 0; a < n; ++a) {
    principal[static_cast<std::size_t>(a)] = a;
    principal[static_cast<std::size_t>(n + a)] = padded + a;
  }
  // (Q S Q^T)(a, b) = S(pi'(a), pi'(b)).
  std::vector<int> source(static_cast<std::size_t>(2 * n));
  for (int a = 0; a < n; ++a) {
    source[static_cast<std::size_t>(a)] = principal[static_cast<std::size_t>(pi(a + 1) - 1)];
    source[static_cast<std::size_t>(n + a)] =
        principal[static_cast<std::size_t>(n + pi(a + 1) - 1)];
  }
  SymMatrix P(2 * n), N(2 * n);
  for (int a = 0; a < 2 * n; ++a)
    for (int b = a; b < 2 * n; ++b) {
      P.set(a, b, full.P(source[a], source[b]));
      N.set(a, b, full.N(source[a], source[b]));
    }
  return Decomposition{std::move(P), std::move(N), full.beta, full.tau};
}

// ---------------------------------------------------------------------------

ValidationReport validate(const Decomposition& d, const Matrix& w, double tol) {
  const int p = d.order();
  if (d.N.order() != p) throw DimensionError("validate: P and N orders differ");
  SymMatrix target;
  if (p == w.rows() + w.cols()) {
    target = symmetrize(w, Embedding::Block);
  } else if (w.square() && p == w.rows()) {
    if (!w.exactly_symmetric()) {
      throw DimensionError("validate: square-order decomposition of a non-symmetric matrix");
    }
    target = SymMatrix(w);
  } else {
    throw DimensionError("validate: decomposition order " + std::to_string(p) +
                         " does not match a " + std::to_string(w.rows()) + "x" +
                         std::to_string(w.cols()) + " matrix");
  }

  ValidationReport r;
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      r.symmetry_violation = std::max({r.symmetry_violation, std::fabs(d.P(i, j) - d.P(j, i)),
                                       std::fabs(d.N(i, j) - d.N(j, i))});
    }
  r.min_eig_P = min_eigenvalue(d.P);
  r.min_eig_N = min_eigenvalue(d.N);
  for (int i = 0; i < p; ++i) r.max_diag = std::max({r.max_diag, d.P(i, i), d.N(i, i)});
  r.diag_excess = r.max_diag - d.beta;
  r.realized_trace = d.P.trace() + d.N.trace();
  r.trace_excess = r.realized_trace - d.tau;
  r.reconstruction = max_abs(d.P - d.N - target);

  const double psd_tol_P = tol * std::max(1.0, max_abs(d.P));
  const double psd_tol_N = tol * std::max(1.0, max_abs(d.N));
  r.passed = r.symmetry_violation <= tol && -r.min_eig_P <= psd_tol_P &&
             -r.min_eig_N <= psd_tol_N && r.diag_excess <= tol && r.trace_excess <= tol &&
             r.reconstruction <= tol;
  return r;
}

Matrix hadamard(int n) {
  if (!is_power_of_two(n)) throw DomainError("hadamard(n) requires a power of two");
  Matrix h{{1.0}};
  for (int size = 1; size < n; size *= 2) {
    Matrix next(2 * size, 2 * size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) {
        next(i, j) = h(i, j);
        next(i, size + j) = h(i, j);
        next(size + i, j) = h(i, j);
        next(size + i, size + j) = -h(i, j);
      }
    h = std::move(next);
  }
  return h;
}

}  // namespace ompred
