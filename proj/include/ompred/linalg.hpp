#pragma once

// Dense real linear algebra for the small symmetric matrices the learner
// works with (order up to a few hundred).

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace ompred {

/// Dense m x n matrix, row-major, finite entries.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0);
  /// Takes ownership of `entries` (row-major). Throws DimensionError on a size
  /// mismatch and DomainError on a non-finite entry.
  Matrix(int rows, int cols, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double operator()(int i, int j) const { return data_[index(i, j)]; }
  double& operator()(int i, int j) { return data_[index(i, j)]; }

  std::span<const double> data() const { return data_; }

  Matrix transpose() const;
  bool exactly_symmetric() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(j);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// Real symmetric matrix. The constructor from a general square matrix stores
/// (M + M^T) / 2, and every mutator writes both mirrored entries, so the
/// stored matrix is always exactly symmetric.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int order, double fill = 0.0);
  explicit SymMatrix(const Matrix& m);
  SymMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static SymMatrix identity(int order, double scale = 1.0);
  static SymMatrix diagonal(std::span<const double> diag);

  int order() const { return order_; }

  double operator()(int i, int j) const { return data_[index(i, j)]; }

  /// Sets entry (i, j) and its mirror.
  void set(int i, int j, double value);
  /// Adds `value` to (i, j) and to its mirror; a diagonal entry is updated once.
  void add(int i, int j, double value);

  std::span<const double> data() const { return data_; }
  Matrix to_matrix() const;

  double trace() const;

  SymMatrix& operator+=(const SymMatrix& other);
  SymMatrix& operator-=(const SymMatrix& other);
  SymMatrix& operator*=(double s);

  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }
  friend bool operator==(const SymMatrix& a, const SymMatrix& b) {
    return a.order_ == b.order_ && a.data_ == b.data_;
  }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(order_) +
           static_cast<std::size_t>(j);
  }

  int order_ = 0;
  std::vector<double> data_;
};

/// Eigenvalues sorted descending; eigenvector k is column k of `vectors`.
struct EigenDecomp {
  std::vector<double> values;
  Matrix vectors;
};

/// How a rectangular matrix is lifted to a symmetric one.
enum class Embedding {
  Auto,   // W itself when W is square and exactly symmetric, else the block form
  Block,  // always [[0, W], [W^T, 0]]
};

SymMatrix symmetrize(const Matrix& w, Embedding how = Embedding::Auto);

/// Householder tridiagonalisation followed by implicit QL. Throws
/// ConvergenceError if the QL sweep exceeds 100 * d^2 iterations.
EigenDecomp eig_sym(const SymMatrix& m);

/// V diag(f(lambda)) V^T.
SymMatrix matrix_fn(const SymMatrix& m, const std::function<double(double)>& f);
SymMatrix matrix_fn(const EigenDecomp& eig, const std::function<double(double)>& f);

SymMatrix matrix_exp(const SymMatrix& m);

/// Eigenvalues below 1e-12 * max(1, lambda_max) are raised to that floor.
/// With `floor_eigenvalues` false such an eigenvalue raises DomainError.
SymMatrix matrix_log(const SymMatrix& m, bool floor_eigenvalues = true);

double eigenvalue_floor(double lambda_max);

/// Sum of singular values, computed as half the absolute spectrum of the
/// block symmetrisation.
double trace_norm(const Matrix& w);

/// Quantum relative entropy Tr(X log X - X log A - X + A), with 0 log 0 = 0.
double qre(const SymMatrix& x, const SymMatrix& a);

/// Frobenius inner product.
double inner(const SymMatrix& a, const SymMatrix& b);

SymMatrix square(const SymMatrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);

double max_abs(std::span<const double> values);
inline double max_abs(const Matrix& m) { return max_abs(m.data()); }
inline double max_abs(const SymMatrix& m) { return max_abs(m.data()); }

double min_eigenvalue(const SymMatrix& m);
double spectral_norm(const SymMatrix& m);

/// Thin SVD read off the positive spectrum of the block symmetrisation:
/// w = sum_k sigma_k u_k v_k^T over the returned triplets (sigma_k > 0).
struct SingularTriplets {
  std::vector<double> sigma;  // descending
  Matrix u;                   // rows(w) x r
  Matrix v;                   // cols(w) x r
};
SingularTriplets singular_triplets(const Matrix& w, double rel_cutoff = 1e-13);

}  // namespace ompred
