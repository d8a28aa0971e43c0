#pragma once

// Dense real vectors and small matrices, plus a cyclic Jacobi eigensolver for
// symmetric matrices. Everything here is sized for the tiny problems the rest
// of the library builds (dimension up to a few dozen).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace porth {

/// Raised for malformed arguments: dimension mismatches, non-finite data,
/// violated preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation is asked for on a space family it does not cover.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Vector = std::vector<double>;

/// A linear functional, stored by its coordinates. The pairing with a Vector
/// is the plain dot product of the flattened coordinates; for symmetric
/// matrices stored row-major this is exactly trace(F X).
using Functional = Vector;

inline void require_same_dim(const Vector& a, const Vector& b, const char* what) {
  if (a.size() != b.size()) {
    throw InputError(std::string(what) + ": dimension mismatch (" + std::to_string(a.size()) +
                     " vs " + std::to_string(b.size()) + ")");
  }
}

inline void require_finite(const Vector& a, const char* what) {
  for (double v : a) {
    if (!std::isfinite(v)) throw InputError(std::string(what) + ": non-finite entry");
  }
}

inline double dot(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double pairing(const Functional& f, const Vector& x) { return dot(f, x); }

inline Vector operator+(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "vector add");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vector operator-(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "vector subtract");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vector operator-(const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline Vector operator*(double s, const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

/// r = a + s * b
inline Vector axpy(const Vector& a, double s, const Vector& b) {
  require_same_dim(a, b, "axpy");
  Vector r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += s * b[i];
  return r;
}

inline double norm_max(const Vector& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline double norm_two(const Vector& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

inline bool is_zero(const Vector& a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; });
}

inline Vector unit_vector(std::size_t n, std::size_t i) {
  Vector e(n, 0.0);
  e.at(i) = 1.0;
  return e;
}

/// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix from_rows(const std::vector<Vector>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw InputError("Matrix::from_rows: ragged rows");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * m.cols_);
    }
    return m;
  }

  /// Interprets a flat row-major vector of length n*n as an n x n matrix.
  static Matrix from_flat(const Vector& flat) {
    auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
    if (n * n != flat.size()) throw InputError("Matrix::from_flat: length is not a perfect square");
    Matrix m(n, n);
    m.data_ = flat;
    return m;
  }

  static Matrix diagonal(const Vector& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] const Vector& flat() const { return data_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] Vector row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  [[nodiscard]] Vector col(std::size_t j) const {
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  [[nodiscard]] double max_abs() const { return norm_max(data_); }

  [[nodiscard]] double frobenius() const { return norm_two(data_); }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InputError("Matrix product: inner dimension mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const double aik = a(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend Vector operator*(const Matrix& a, const Vector& x) {
    if (a.cols_ != x.size()) throw InputError("Matrix-vector product: dimension mismatch");
    Vector r(a.rows_, 0.0);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < a.cols_; ++j) s += a(i, j) * x[j];
      r[i] = s;
    }
    return r;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("Matrix add: shape mismatch");
    Matrix r(a);
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
    return r;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("Matrix subtract: shape mismatch");
    Matrix r(a);
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
    return r;
  }

  friend Matrix operator*(double s, const Matrix& a) {
    Matrix r(a);
    for (double& v : r.data_) v *= s;
    return r;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vector data_;
};

/// Matrix whose columns are the given vectors.
inline Matrix columns_matrix(const std::vector<Vector>& cols) {
  if (cols.empty()) return {};
  Matrix m(cols.front().size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != m.rows()) throw InputError("columns_matrix: ragged columns");
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = cols[j][i];
  }
  return m;
}

/// Numerical rank by Gaussian elimination with full pivoting. The tolerance
/// is relative to the largest entry.
inline std::size_t rank(Matrix m, double rel_tol = 1e-10) {
  const double scale = std::max(m.max_abs(), 1e-300);
  std::size_t r = 0;
  std::vector<bool> col_used(m.cols(), false);
  std::vector<bool> row_used(m.rows(), false);
  for (;;) {
    double best = 0.0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (row_used[i]) continue;
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (col_used[j]) continue;
        if (std::abs(m(i, j)) > best) {
          best = std::abs(m(i, j));
          bi = i;
          bj = j;
        }
      }
    }
    if (best <= rel_tol * scale) break;
    row_used[bi] = true;
    col_used[bj] = true;
    ++r;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (row_used[i]) continue;
      const double f = m(i, bj) / m(bi, bj);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(bi, j);
    }
  }
  return r;
}

inline std::size_t rank_of(const std::vector<Vector>& vectors, double rel_tol = 1e-10) {
  if (vectors.empty()) return 0;
  return rank(Matrix::from_rows(vectors), rel_tol);
}

/// Solves the square system A x = b by Gaussian elimination with partial
/// pivoting. Throws InputError on a (numerically) singular matrix.
inline Vector solve_square(Matrix a, Vector b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw InputError("solve_square: shape mismatch");
  const double scale = std::max(a.max_abs(), 1e-300);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (std::abs(a(p, k)) <= 1e-13 * scale) throw InputError("solve_square: singular matrix");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(b[k], b[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  Vector x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a(k, j) * x[j];
    x[k] = s / a(k, k);
  }
  return x;
}

/// Coefficients c minimising |B c - x|_2 where B has the given columns,
/// via the normal equations. The columns must be linearly independent.
inline Vector least_squares_coefficients(const std::vector<Vector>& columns, const Vector& x) {
  const std::size_t m = columns.size();
  Matrix gram(m, m);
  Vector rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    rhs[i] = dot(columns[i], x);
    for (std::size_t j = 0; j < m; ++j) gram(i, j) = dot(columns[i], columns[j]);
  }
  return solve_square(std::move(gram), std::move(rhs));
}

inline double determinant(Matrix a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw InputError("determinant: matrix is not square");
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (a(p, k) == 0.0) return 0.0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

// ---------------------------------------------------------------------------
// Symmetric eigensolver

struct SpectralDecomposition {
  Vector eigenvalues;                // descending
  std::vector<Vector> eigenvectors;  // orthonormal, eigenvectors[i] pairs with eigenvalues[i]

  /// Sum of lambda_i v_i v_i^T.
  [[nodiscard]] Matrix reconstruct() const {
    const std::size_t n = eigenvalues.size();
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const Vector& v = eigenvectors[k];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) += eigenvalues[k] * v[i] * v[j];
    }
    return m;
  }
};

struct EigenOptions {
  double symmetry_tol = 1e-12;   // relative to 1 + max|M_ij|
  double off_diag_tol = 1e-12;   // stop when off-diagonal Frobenius mass <= tol * |M|_F
  int max_sweeps = 100;
};

inline void require_symmetric(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols()) throw InputError("matrix is not square");
  const double scale = 1.0 + m.max_abs();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - m(j, i)) > rel_tol * scale) throw InputError("matrix is not symmetric");
}

/// Cyclic Jacobi rotations. Eigenvalues are returned in descending order.
inline SpectralDecomposition eigen_sym(const Matrix& input, const EigenOptions& opt = {}) {
  require_symmetric(input, opt.symmetry_tol);
  const std::size_t n = input.rows();
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (input(i, j) + input(j, i));
  Matrix v = Matrix::identity(n);

  const double target = opt.off_diag_tol * a.frobenius();
  for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
    if (std::sqrt(off) <= target || off == 0.0) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
  SpectralDecomposition out;
  out.eigenvalues.reserve(n);
  out.eigenvectors.reserve(n);
  for (std::size_t k : order) {
    out.eigenvalues.push_back(a(k, k));
    out.eigenvectors.push_back(v.col(k));
  }
  return out;
}

inline SpectralDecomposition eigen_sym_rows(const std::vector<Vector>& rows, const EigenOptions& opt = {}) {
  return eigen_sym(Matrix::from_rows(rows), opt);
}

/// f(M) for symmetric M, applying f to each eigenvalue.
template <class F>
Matrix spectral_map(const SpectralDecomposition& sd, F&& f) {
  const std::size_t n = sd.eigenvalues.size();
  Matrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(sd.eigenvalues[k]);
    if (fk == 0.0) continue;
    const Vector& v = sd.eigenvectors[k];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) += fk * v[i] * v[j];
  }
  return m;
}

inline double spectral_radius(const Matrix& m) {
  const auto sd = eigen_sym(m);
  return std::max(std::abs(sd.eigenvalues.front()), std::abs(sd.eigenvalues.back()));
}

inline double trace_norm(const Matrix& m) {
  double s = 0.0;
  for (double l : eigen_sym(m).eigenvalues) s += std::abs(l);
  return s;
}

inline double min_eigenvalue(const Matrix& m) { return eigen_sym(m).eigenvalues.back(); }

/// Rank-one matrix v v^T flattened row-major.
inline Vector outer_flat(const Vector& v) {
  Vector r(v.size() * v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i * v.size() + j] = v[i] * v[j];
  return r;
}

}  // namespace porth
