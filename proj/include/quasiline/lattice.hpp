#pragma once

// Exact integer/rational linear algebra: dense matrices, Smith normal form,
// sublattice indices and rational linear solving. Everything here is exact;
// there is no floating point anywhere in the kernel.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace quasiline {

using Integer = boost::multiprecision::cpp_int;
// cpp_rational keeps numerator/denominator reduced with a positive
// denominator, so equality is structural.
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroVectorError : public LatticeError {
 public:
  ZeroVectorError() : LatticeError("zero vector has no primitive representative") {}
};

class DimensionMismatch : public LatticeError {
 public:
  using LatticeError::LatticeError;
};

inline IntVector make_int_vector(std::initializer_list<long long> xs) {
  IntVector v;
  v.reserve(xs.size());
  for (long long x : xs) v.emplace_back(x);
  return v;
}

inline Integer floor_of(const Rational& q) {
  Integer n = boost::multiprecision::numerator(q);
  Integer d = boost::multiprecision::denominator(q);
  Integer r = n / d;  // truncates toward zero
  if (n < 0 && r * d != n) r -= 1;
  return r;
}

inline Integer ceil_of(const Rational& q) { return -floor_of(-q); }

inline bool is_integral(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  /// Rows must all have the same length.
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return Matrix();
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != m.cols_) throw DimensionMismatch("ragged row list");
      for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<std::vector<T>> tmp;
    for (const auto& row : rows) {
      std::vector<T> r;
      for (long long x : row) r.emplace_back(x);
      tmp.push_back(std::move(r));
    }
    return from_rows(tmp);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  std::vector<T> col(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  // row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const T& k) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
  }

  void add_col_multiple(std::size_t dst, std::size_t src, const T& k) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
  }

  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& x) {
    if (a.cols_ != x.size()) throw DimensionMismatch("matrix-vector shape mismatch");
    std::vector<T> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * x[j];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

inline RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
  return out;
}

inline RationalVector to_rational(const IntVector& v) { return RationalVector(v.begin(), v.end()); }

inline IntMatrix matrix_from_vectors(const std::vector<IntVector>& rows) {
  return IntMatrix::from_rows(rows);
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot product length mismatch");
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational dot(const RationalVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot product length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

inline Integer vector_gcd(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
  return abs(g);
}

/// v divided by the gcd of its coordinates.
inline IntVector primitive(const IntVector& v) {
  if (is_zero(v)) throw ZeroVectorError();
  Integer g = vector_gcd(v);
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

inline bool is_primitive(const IntVector& v) { return !is_zero(v) && vector_gcd(v) == 1; }

inline std::string to_string(const Integer& x) { return x.str(); }

inline std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

template <class T>
std::string to_string(const std::vector<T>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Smith normal form

struct SmithForm {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix S;  // rows x cols, diagonal with s1 | s2 | ...
  IntMatrix V;  // cols x cols, unimodular

  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
  }

  std::size_t rank() const {
    std::size_t r = 0;
    for (const auto& x : diagonal())
      if (x != 0) ++r;
    return r;
  }
};

/// Returns (U, S, V) with U*A*V = S.
inline SmithForm smith_normal_form(const IntMatrix& A) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  IntMatrix S = A;
  IntMatrix U = IntMatrix::identity(m);
  IntMatrix V = IntMatrix::identity(n);

  auto row_op = [&](std::size_t dst, std::size_t src, const Integer& k) {
    S.add_row_multiple(dst, src, k);
    U.add_row_multiple(dst, src, k);
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const Integer& k) {
    S.add_col_multiple(dst, src, k);
    V.add_col_multiple(dst, src, k);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // smallest nonzero |entry| in the trailing block becomes the pivot
      bool found = false;
      std::size_t pr = t, pc = t;
      Integer best;
      for (std::size_t r = t; r < m; ++r)
        for (std::size_t c = t; c < n; ++c) {
          if (S(r, c) == 0) continue;
          Integer a = abs(S(r, c));
          if (!found || a < best) {
            found = true;
            best = a;
            pr = r;
            pc = c;
          }
        }
      if (!found) return {U, S, V};
      S.swap_rows(t, pr);
      U.swap_rows(t, pr);
      S.swap_cols(t, pc);
      V.swap_cols(t, pc);

      bool dirty = false;
      for (std::size_t r = t + 1; r < m; ++r) {
        if (S(r, t) == 0) continue;
        Integer q = S(r, t) / S(t, t);
        row_op(r, t, -q);
        if (S(r, t) != 0) dirty = true;
      }
      for (std::size_t c = t + 1; c < n; ++c) {
        if (S(t, c) == 0) continue;
        Integer q = S(t, c) / S(t, t);
        col_op(c, t, -q);
        if (S(t, c) != 0) dirty = true;
      }
      if (dirty) continue;

      // enforce the divisibility chain
      bool fixed = true;
      for (std::size_t r = t + 1; r < m && fixed; ++r)
        for (std::size_t c = t + 1; c < n; ++c)
          if (S(r, c) % S(t, t) != 0) {
            row_op(t, r, Integer(1));
            fixed = false;
            break;
          }
      if (fixed) break;
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      U.negate_row(t);
    }
  }
  return {U, S, V};
}

/// Index of the lattice spanned by the rows of a square basis matrix;
/// nullopt when the rows are linearly dependent (infinite index).
inline std::optional<Integer> sublattice_index(const IntMatrix& basis) {
  if (basis.rows() != basis.cols()) throw DimensionMismatch("sublattice_index needs a square basis");
  SmithForm snf = smith_normal_form(basis);
  Integer prod = 1;
  for (const auto& s : snf.diagonal()) {
    if (s == 0) return std::nullopt;
    prod *= s;
  }
  return prod;
}

/// Product of the nonzero invariant factors: the index of the row lattice in
/// its saturation. Equals |det| for a nonsingular square matrix.
inline Integer saturation_index(const IntMatrix& rows) {
  Integer prod = 1;
  for (const auto& s : smith_normal_form(rows).diagonal())
    if (s != 0) prod *= s;
  return prod;
}

/// Fraction-free (Bareiss) determinant.
inline Integer determinant(const IntMatrix& A) {
  if (A.rows() != A.cols()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  IntMatrix M = A;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && M(p, k) == 0) ++p;
      if (p == n) return 0;
      M.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Rational elimination

struct RowEchelon {
  RationalMatrix reduced;            // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

inline RowEchelon row_reduce(RationalMatrix M) {
  RowEchelon out;
  std::size_t row = 0;
  for (std::size_t c = 0; c < M.cols() && row < M.rows(); ++c) {
    std::size_t p = row;
    while (p < M.rows() && M(p, c) == 0) ++p;
    if (p == M.rows()) continue;
    M.swap_rows(row, p);
    Rational inv = 1 / M(row, c);
    for (std::size_t j = 0; j < M.cols(); ++j) M(row, j) *= inv;
    for (std::size_t r = 0; r < M.rows(); ++r) {
      if (r == row || M(r, c) == 0) continue;
      Rational k = -M(r, c);
      M.add_row_multiple(r, row, k);
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.reduced = std::move(M);
  return out;
}

inline std::size_t rank(const RationalMatrix& M) { return row_reduce(M).pivots.size(); }
inline std::size_t rank(const IntMatrix& M) { return rank(to_rational(M)); }

/// Basis of {x : M x = 0}.
inline std::vector<RationalVector> nullspace(const RationalMatrix& M) {
  RowEchelon e = row_reduce(M);
  std::vector<bool> is_pivot(M.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < M.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector x(M.cols());
    x[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Clears denominators and divides by the content.
inline IntVector primitive_integer_multiple(const RationalVector& v) {
  Integer l = 1;
  for (const auto& q : v) {
    Integer d = boost::multiprecision::denominator(q);
    l = l / boost::multiprecision::gcd(l, d) * d;
  }
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = boost::multiprecision::numerator(v[i]) * (l / boost::multiprecision::denominator(v[i]));
  if (is_zero(out)) return out;
  return primitive(out);
}

struct LinearSolution {
  RationalVector x;
  bool unique = false;  // A has full column rank
};

/// Exact solution of A x = b, or nullopt when the system is inconsistent.
/// Free variables are set to zero.
inline std::optional<LinearSolution> solve_rational_linear(const RationalMatrix& A, const RationalVector& b) {
  if (A.rows() != b.size()) throw DimensionMismatch("solve_rational_linear: rhs length mismatch");
  RationalMatrix aug(A.rows(), A.cols() + 1);
  for (std::size_t r = 0; r < A.rows(); ++r) {
    for (std::size_t c = 0; c < A.cols(); ++c) aug(r, c) = A(r, c);
    aug(r, A.cols()) = b[r];
  }
  RowEchelon e = row_reduce(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == A.cols()) return std::nullopt;
  LinearSolution sol;
  sol.x.assign(A.cols(), Rational(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) sol.x[e.pivots[r]] = e.reduced(r, A.cols());
  sol.unique = e.pivots.size() == A.cols();
  return sol;
}

inline std::optional<LinearSolution> solve_rational_linear(const IntMatrix& A, const IntVector& b) {
  return solve_rational_linear(to_rational(A), to_rational(b));
}

/// Integral solution of A x = b via the Smith form, if one exists.
inline std::optional<IntVector> solve_integer_linear(const IntMatrix& A, const IntVector& b) {
  if (A.rows() != b.size()) throw DimensionMismatch("solve_integer_linear: rhs length mismatch");
  SmithForm snf = smith_normal_form(A);
  // S y = U b, x = V y
  IntVector ub = snf.U * b;
  IntVector y(A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    Integer s = i < A.cols() ? snf.S(i, i) : Integer(0);
    if (s == 0) {
      if (ub[i] != 0) return std::nullopt;
      continue;
    }
    if (ub[i] % s != 0) return std::nullopt;
    y[i] = ub[i] / s;
  }
  return snf.V * y;
}

/// Inverse of a nonsingular rational matrix.
inline RationalMatrix inverse(const RationalMatrix& A) {
  if (A.rows() != A.cols()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = A.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = A(r, c);
    aug(r, n + r) = 1;
  }
  RowEchelon e = row_reduce(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw LatticeError("matrix is singular");
  RationalMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
  return inv;
}

}  // namespace quasiline
