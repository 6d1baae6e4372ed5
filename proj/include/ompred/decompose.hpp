#pragma once

// (beta, tau)-decompositions sym(W) = P - N of the three comparison classes,
// the structured matrices themselves, and a numerical validator.

#include <cstdint>
#include <vector>

#include "ompred/linalg.hpp"

namespace ompred {

struct Decomposition {
  SymMatrix P;
  SymMatrix N;
  double beta = 1.0;
  double tau = 0.0;

  int order() const { return P.order(); }
};

/// Subset A of [n], n <= 64. Members are 1-based at the API surface; bit k of
/// `mask()` corresponds to node k + 1.
class CutSet {
 public:
  CutSet(int n, std::uint64_t mask);
  static CutSet from_members(int n, const std::vector<int>& members);

  int n() const { return n_; }
  std::uint64_t mask() const { return mask_; }
  bool contains(int node) const { return (mask_ >> (node - 1)) & 1U; }
  std::vector<int> members() const;

  friend bool operator==(const CutSet&, const CutSet&) = default;

 private:
  int n_;
  std::uint64_t mask_;
};

/// Bijection on {1..n}: mapping()[i - 1] = pi(i).
class Permutation {
 public:
  explicit Permutation(std::vector<int> mapping);
  static Permutation identity(int n);

  int n() const { return static_cast<int>(mapping_.size()); }
  int operator()(int i) const { return mapping_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& mapping() const { return mapping_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> mapping_;
};

/// w_A(i) = +1 if i in A else -1.
std::vector<double> cut_vector(const CutSet& c);
/// W_A(i, j) = 1 iff exactly one of i, j is in A, else -1.
SymMatrix cut_matrix(const CutSet& c);
/// P = 0, N = w_A w_A^T; beta = 1, tau = n.
Decomposition decompose_cut(const CutSet& c);

/// Eigen-split of sym(W) into positive and negated negative parts. Requires
/// entries in [-1, 1] (ValidationError otherwise). beta = sqrt(p) for p the
/// order of sym(W); tau is the realised trace sum, i.e. the trace norm of
/// sym(W).
Decomposition decompose_trace_norm(const Matrix& w, Embedding how = Embedding::Auto);

/// T(i, j) = 1 if i <= j else 0.
Matrix triangular(int n);
/// 1 / (2 cos(k pi / (2n + 1))) for k = 1..n, ascending.
std::vector<double> singular_values_T(int n);
/// Recursive decomposition of sym(T_{2^k}) (order 2^{k+1}); beta = k + 1,
/// tau = 4 * 2^k * (k + 1).
Decomposition decompose_triangular(int k);

/// W_pi(i, j) = 1 if pi(i) <= pi(j) else 0.
Matrix perm_matrix(const Permutation& pi);
/// The 2n x 2n block permutation matrix Q_pi = diag(P_pi, P_pi).
Matrix block_permutation(const Permutation& pi);
/// Pads to n' = 2^k >= n, restricts decompose_triangular(k) to the principal
/// submatrix of sym(T_n) and conjugates by Q_pi. beta = k + 1, tau = 4 n' (k + 1).
Decomposition decompose_permutation(const Permutation& pi);

struct ValidationReport {
  double symmetry_violation = 0.0;
  double min_eig_P = 0.0;
  double min_eig_N = 0.0;
  double diag_excess = 0.0;   // max(P_ii, N_ii) - beta, may be negative
  double trace_excess = 0.0;  // Tr P + Tr N - tau, may be negative
  double realized_trace = 0.0;
  double max_diag = 0.0;
  double reconstruction = 0.0;  // ||P - N - sym(W)||_inf
  bool passed = false;
};

/// sym(W) is taken in the block form when the decomposition's order is
/// rows + cols and as W itself when the order equals a square W's size.
/// DimensionError if neither applies.
ValidationReport validate(const Decomposition& d, const Matrix& w, double tol = 1e-8);

/// Sylvester construction; n must be a power of two (DomainError otherwise).
Matrix hadamard(int n);

bool is_power_of_two(long n);
/// Smallest k with 2^k >= n.
int ceil_log2(long n);

}  // namespace ompred
