#include "ompred/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ompred/error.hpp"

namespace ompred {

namespace {

void require_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("matrix entry is not finite");
  }
}

std::size_t area(int rows, int cols) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
  return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
}

void require_same_order(const SymMatrix& a, const SymMatrix& b, const char* what) {
  if (a.order() != b.order()) {
    throw DimensionError(std::string(what) + ": order mismatch (" +
                         std::to_string(a.order()) + " vs " +
                         std::to_string(b.order()) + ")");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), data_(area(rows, cols), fill) {}

Matrix::Matrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != area(rows, cols)) {
    throw DimensionError("entry count does not equal rows * cols");
  }
  require_finite(data_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  data_.reserve(area(rows_, cols_));
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_);
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::exactly_symmetric() const {
  if (!square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// SymMatrix

SymMatrix::SymMatrix(int order, double fill) : order_(order), data_(area(order, order), fill) {
  require_finite(std::span<const double>(&fill, 1));
}

SymMatrix::SymMatrix(const Matrix& m) : order_(m.rows()), data_(area(m.rows(), m.rows())) {
  if (!m.square()) throw DimensionError("symmetric matrix requires a square source");
  for (int i = 0; i < order_; ++i) {
    data_[index(i, i)] = m(i, i);
    for (int j = i + 1; j < order_; ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      data_[index(i, j)] = v;
      data_[index(j, i)] = v;
    }
  }
}

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : SymMatrix(Matrix(rows)) {}

SymMatrix SymMatrix::identity(int order, double scale) {
  SymMatrix s(order);
  for (int i = 0; i < order; ++i) s.data_[s.index(i, i)] = scale;
  return s;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  SymMatrix s(static_cast<int>(diag.size()));
  require_finite(diag);
  for (int i = 0; i < s.order_; ++i) s.data_[s.index(i, i)] = diag[static_cast<std::size_t>(i)];
  return s;
}

void SymMatrix::set(int i, int j, double value) {
  data_[index(i, j)] = value;
  data_[index(j, i)] = value;
}

void SymMatrix::add(int i, int j, double value) {
  data_[index(i, j)] += value;
  if (i != j) data_[index(j, i)] += value;
}

Matrix SymMatrix::to_matrix() const { return Matrix(order_, order_, data_); }

double SymMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < order_; ++i) t += data_[index(i, i)];
  return t;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  require_same_order(*this, other, "sum");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& other) {
  require_same_order(*this, other, "difference");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

// ---------------------------------------------------------------------------

SymMatrix symmetrize(const Matrix& w, Embedding how) {
  if (how == Embedding::Auto && w.exactly_symmetric()) return SymMatrix(w);
  const int m = w.rows();
  const int n = w.cols();
  SymMatrix s(m + n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) s.set(i, m + j, w(i, j));
  return s;
}

// Householder reduction to tridiagonal form (accumulating the transform in v)
// followed by the implicit QL iteration with Wilkinson-style shifts.
EigenDecomp eig_sym(const SymMatrix& m) {
  const int n = m.order();
  EigenDecomp out;
  if (n == 0) return out;

  std::vector<double> v(m.data().begin(), m.data().end());
  auto V = [&](int r, int c) -> double& { return v[static_cast<std::size_t>(r) * n + c]; };
  std::vector<double> d(n), e(n);

  for (int j = 0; j < n; ++j) d[j] = V(n - 1, j);

  for (int i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (int k = 0; k < i; ++k) scale += std::fabs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (int j = 0; j < i; ++j) {
        d[j] = V(i - 1, j);
        V(i, j) = 0.0;
        V(j, i) = 0.0;
      }
    } else {
      for (int k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (int j = 0; j < i; ++j) e[j] = 0.0;

      for (int j = 0; j < i; ++j) {
        f = d[j];
        V(j, i) = f;
        g = e[j] + V(j, j) * f;
        for (int k = j + 1; k <= i - 1; ++k) {
          g += V(k, j) * d[k];
          e[k] += V(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (int j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (int j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (int j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (int k = j; k <= i - 1; ++k) V(k, j) -= (f * e[k] + g * d[k]);
        d[j] = V(i - 1, j);
        V(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  for (int i = 0; i < n - 1; ++i) {
    V(n - 1, i) = V(i, i);
    V(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (int k = 0; k <= i; ++k) d[k] = V(k, i + 1) / h;
      for (int j = 0; j <= i; ++j) {
        double g = 0.0;
        for (int k = 0; k <= i; ++k) g += V(k, i + 1) * V(k, j);
        for (int k = 0; k <= i; ++k) V(k, j) -= g * d[k];
      }
    }
    for (int k = 0; k <= i; ++k) V(k, i + 1) = 0.0;
  }
  for (int j = 0; j < n; ++j) {
    d[j] = V(n - 1, j);
    V(n - 1, j) = 0.0;
  }
  V(n - 1, n - 1) = 1.0;
  e[0] = 0.0;

  // QL iteration on the tridiagonal (d, e).
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  const double eps = std::numeric_limits<double>::epsilon();
  const long iteration_cap = 100L * n * n;
  long iterations = 0;
  double f = 0.0;
  double tst1 = 0.0;
  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::fabs(d[l]) + std::fabs(e[l]));
    int mm = l;
    while (mm < n && std::fabs(e[mm]) > eps * tst1) ++mm;
    if (mm > l) {
      do {
        if (++iterations > iteration_cap) {
          throw ConvergenceError("eig_sym: QL iteration cap of " + std::to_string(iteration_cap) +
                                 " reached at index " + std::to_string(l) +
                                 ", residual off-diagonal " + std::to_string(std::fabs(e[l])));
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (int i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[mm];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (int i = mm - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          for (int k = 0; k < n; ++k) {
            h = V(k, i + 1);
            V(k, i + 1) = s * V(k, i) + c * h;
            V(k, i) = c * V(k, i) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::fabs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d[a] > d[b]; });

  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = d[order[k]];
    for (int r = 0; r < n; ++r) out.vectors(r, k) = V(r, order[k]);
  }
  return out;
}

SymMatrix matrix_fn(const EigenDecomp& eig, const std::function<double(double)>& f) {
  const int n = static_cast<int>(eig.values.size());
  std::vector<double> fl(n);
  for (int k = 0; k < n; ++k) fl[k] = f(eig.values[k]);
  const Matrix& V = eig.vectors;
  SymMatrix out(n);
  std::vector<double> scaled(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) scaled[k] = V(i, k) * fl[k];
    for (int j = i; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += scaled[k] * V(j, k);
      out.set(i, j, acc);
    }
  }
  return out;
}

SymMatrix matrix_fn(const SymMatrix& m, const std::function<double(double)>& f) {
  return matrix_fn(eig_sym(m), f);
}

SymMatrix matrix_exp(const SymMatrix& m) {
  return matrix_fn(m, [](double x) { return std::exp(x); });
}

double eigenvalue_floor(double lambda_max) { return 1e-12 * std::max(1.0, lambda_max); }

SymMatrix matrix_log(const SymMatrix& m, bool floor_eigenvalues) {
  EigenDecomp eig = eig_sym(m);
  if (eig.values.empty()) return SymMatrix(0);
  const double floor = eigenvalue_floor(eig.values.front());
  for (double& lambda : eig.values) {
    if (lambda < floor) {
      if (!floor_eigenvalues) {
        throw DomainError("matrix_log: eigenvalue " + std::to_string(lambda) +
                          " is below the floor " + std::to_string(floor));
      }
      lambda = floor;
    }
  }
  return matrix_fn(eig, [](double x) { return std::log(x); });
}

double trace_norm(const Matrix& w) {
  const EigenDecomp eig = eig_sym(symmetrize(w, Embedding::Block));
  double total = 0.0;
  for (double lambda : eig.values) total += std::fabs(lambda);
  return 0.5 * total;
}

double qre(const SymMatrix& x, const SymMatrix& a) {
  require_same_order(x, a, "qre");
  const EigenDecomp ex = eig_sym(x);
  EigenDecomp ea = eig_sym(a);
  const int n = x.order();
  if (n == 0) return 0.0;

  double x_log_x = 0.0;
  for (double lambda : ex.values) {
    if (lambda > 0.0) x_log_x += lambda * std::log(lambda);
  }

  const double floor = eigenvalue_floor(ea.values.front());
  double x_log_a = 0.0;
  std::vector<double> col(n);
  for (int l = 0; l < n; ++l) {
    const double mu = std::max(ea.values[l], floor);
    // u_l^T X u_l
    double quad = 0.0;
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) row += x(i, j) * ea.vectors(j, l);
      quad += ea.vectors(i, l) * row;
    }
    x_log_a += std::log(mu) * quad;
  }
  return x_log_x - x_log_a - x.trace() + a.trace();
}

double inner(const SymMatrix& a, const SymMatrix& b) {
  require_same_order(a, b, "inner");
  double acc = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) acc += a.data()[k] * b.data()[k];
  return acc;
}

SymMatrix square(const SymMatrix& a) {
  const int n = a.order();
  SymMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += a(i, k) * a(k, j);
      out.set(i, j, acc);
    }
  return out;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

double max_abs(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::fabs(v));
  return m;
}

double min_eigenvalue(const SymMatrix& m) {
  const EigenDecomp eig = eig_sym(m);
  return eig.values.empty() ? 0.0 : eig.values.back();
}

double spectral_norm(const SymMatrix& m) {
  const EigenDecomp eig = eig_sym(m);
  if (eig.values.empty()) return 0.0;
  return std::max(std::fabs(eig.values.front()), std::fabs(eig.values.back()));
}

SingularTriplets singular_triplets(const Matrix& w, double rel_cutoff) {
  const int m = w.rows();
  const int n = w.cols();
  const EigenDecomp eig = eig_sym(symmetrize(w, Embedding::Block));
  SingularTriplets out;
  const double top = eig.values.empty() ? 0.0 : eig.values.front();
  const double cutoff = rel_cutoff * std::max(1.0, top);
  int r = 0;
  while (r < std::min(m, n) && eig.values[r] > cutoff) ++r;
  out.sigma.assign(eig.values.begin(), eig.values.begin() + r);
  out.u = Matrix(m, r);
  out.v = Matrix(n, r);
  const double root2 = std::sqrt(2.0);
  for (int k = 0; k < r; ++k) {
    for (int i = 0; i < m; ++i) out.u(i, k) = root2 * eig.vectors(i, k);
    for (int j = 0; j < n; ++j) out.v(j, k) = root2 * eig.vectors(m + j, k);
  }
  return out;
}

}  // namespace ompred
