#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hyperpoly/scalar.hpp"

namespace hyperpoly {

// ---------------------------------------------------------------------------
// C^2 vectors, covectors and endomorphisms
// ---------------------------------------------------------------------------

/// Column vector in C^2.
template <class F>
struct Vec2 {
  F a{}, b{};

  bool is_zero() const { return hyperpoly::is_zero(a) && hyperpoly::is_zero(b); }

  friend Vec2 operator+(const Vec2& x, const Vec2& y) {
    return {x.a + y.a, x.b + y.b};
  }
  friend Vec2 operator-(const Vec2& x, const Vec2& y) {
    return {x.a - y.a, x.b - y.b};
  }
  friend Vec2 operator-(const Vec2& x) { return {-x.a, -x.b}; }
  friend Vec2 operator*(const F& s, const Vec2& x) { return {s * x.a, s * x.b}; }
  friend bool operator==(const Vec2& x, const Vec2& y) {
    return x.a == y.a && x.b == y.b;
  }
};

/// Row covector in (C^2)^*.
template <class F>
struct Cov2 {
  F a{}, b{};

  bool is_zero() const { return hyperpoly::is_zero(a) && hyperpoly::is_zero(b); }

  friend Cov2 operator+(const Cov2& x, const Cov2& y) {
    return {x.a + y.a, x.b + y.b};
  }
  friend Cov2 operator-(const Cov2& x, const Cov2& y) {
    return {x.a - y.a, x.b - y.b};
  }
  friend Cov2 operator-(const Cov2& x) { return {-x.a, -x.b}; }
  friend Cov2 operator*(const F& s, const Cov2& x) { return {s * x.a, s * x.b}; }
  friend bool operator==(const Cov2& x, const Cov2& y) {
    return x.a == y.a && x.b == y.b;
  }
};

/// 2x2 matrix acting on Vec2 from the left and on Cov2 from the right.
template <class F>
struct Mat2 {
  F m00{}, m01{}, m10{}, m11{};

  static Mat2 identity() { return {F(1), F(0), F(0), F(1)}; }

  F trace() const { return m00 + m11; }
  F det() const { return m00 * m11 - m01 * m10; }
  /// adj(M) with M*adj(M) = det(M)*I.
  Mat2 adjugate() const { return {m11, -m01, -m10, m00}; }
  Mat2 inverse() const {
    const F d = det();
    if (hyperpoly::is_zero(d)) throw std::domain_error("singular 2x2 matrix");
    const F inv = F(1) / d;
    return {inv * m11, -(inv * m01), -(inv * m10), inv * m00};
  }
  Vec2<F> col(int j) const {
    return j == 0 ? Vec2<F>{m00, m10} : Vec2<F>{m01, m11};
  }
  bool is_zero() const {
    return hyperpoly::is_zero(m00) && hyperpoly::is_zero(m01) &&
           hyperpoly::is_zero(m10) && hyperpoly::is_zero(m11);
  }

  friend Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.m00 + y.m00, x.m01 + y.m01, x.m10 + y.m10, x.m11 + y.m11};
  }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {x.m00 - y.m00, x.m01 - y.m01, x.m10 - y.m10, x.m11 - y.m11};
  }
  friend Mat2 operator-(const Mat2& x) { return {-x.m00, -x.m01, -x.m10, -x.m11}; }
  friend Mat2 operator*(const F& s, const Mat2& x) {
    return {s * x.m00, s * x.m01, s * x.m10, s * x.m11};
  }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11,
            x.m10 * y.m00 + x.m11 * y.m10, x.m10 * y.m01 + x.m11 * y.m11};
  }
  friend Vec2<F> operator*(const Mat2& m, const Vec2<F>& v) {
    return {m.m00 * v.a + m.m01 * v.b, m.m10 * v.a + m.m11 * v.b};
  }
  friend Cov2<F> operator*(const Cov2<F>& w, const Mat2& m) {
    return {w.a * m.m00 + w.b * m.m10, w.a * m.m01 + w.b * m.m11};
  }
  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.m00 == y.m00 && x.m01 == y.m01 && x.m10 == y.m10 && x.m11 == y.m11;
  }
};

/// Contraction w(v).
template <class F>
F pair(const Cov2<F>& w, const Vec2<F>& v) {
  return w.a * v.a + w.b * v.b;
}

/// Rank-one endomorphism v (x) w, with (v (x) w)(x) = v * w(x).
/// Satisfies trace(outer(v, w)) = pair(w, v).
template <class F>
Mat2<F> outer(const Vec2<F>& v, const Cov2<F>& w) {
  return {v.a * w.a, v.a * w.b, v.b * w.a, v.b * w.b};
}

/// Wedge of two C^2 vectors; zero iff they are proportional.
template <class F>
F wedge(const Vec2<F>& x, const Vec2<F>& y) {
  return x.a * y.b - x.b * y.a;
}

template <class F>
double magnitude(const Vec2<F>& v) {
  return std::max(magnitude(v.a), magnitude(v.b));
}
template <class F>
double magnitude(const Cov2<F>& v) {
  return std::max(magnitude(v.a), magnitude(v.b));
}
template <class F>
double magnitude(const Mat2<F>& m) {
  return std::max(std::max(magnitude(m.m00), magnitude(m.m01)),
                  std::max(magnitude(m.m10), magnitude(m.m11)));
}

// ---------------------------------------------------------------------------
// Dense matrices over the scalar field
// ---------------------------------------------------------------------------

/// Row-major dense matrix; desk scale (dimensions up to a few dozen).
template <class F>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k)
      std::swap((*this)(i, k), (*this)(j, k));
  }

  double max_magnitude() const {
    double best = 0.0;
    for (const F& x : data_) best = std::max(best, magnitude(x));
    return best;
  }

  friend bool operator==(const DenseMatrix& x, const DenseMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<F> data_;
};

template <class F>
std::vector<F> mat_vec(const DenseMatrix<F>& m, const std::vector<F>& x) {
  if (x.size() != m.cols()) throw std::invalid_argument("mat_vec: size mismatch");
  std::vector<F> out(m.rows(), F(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * x[j];
  return out;
}

template <class F>
struct Echelon {
  DenseMatrix<F> rref;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
};

/// Reduced row echelon form.
///
/// Exact mode picks the first nonzero pivot; since the RREF of a matrix is
/// unique, results do not depend on row order. Approx mode uses partial
/// pivoting and treats entries below tolerance() * (largest pivot magnitude)
/// as zero, which yields the numerical rank.
template <class F>
Echelon<F> reduced_row_echelon(DenseMatrix<F> m) {
  Echelon<F> out;
  const std::size_t rows = m.rows(), cols = m.cols();
  const double scale = m.max_magnitude();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot_row = rows;
    if constexpr (is_exact_v<F>) {
      for (std::size_t i = r; i < rows; ++i)
        if (!(m(i, c) == F(0))) {
          pivot_row = i;
          break;
        }
    } else {
      double best = tolerance() * scale;
      for (std::size_t i = r; i < rows; ++i)
        if (magnitude(m(i, c)) > best) {
          best = magnitude(m(i, c));
          pivot_row = i;
        }
    }
    if (pivot_row == rows) continue;
    m.swap_rows(r, pivot_row);
    const F inv = F(1) / m(r, c);
    for (std::size_t k = c; k < cols; ++k) m(r, k) = inv * m(r, k);
    m(r, c) = F(1);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const F factor = m(i, c);
      if (is_zero(factor, scale > 0 ? scale : 1.0)) {
        m(i, c) = F(0);
        continue;
      }
      for (std::size_t k = c; k < cols; ++k) m(i, k) = m(i, k) - factor * m(r, k);
      m(i, c) = F(0);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rank = r;
  out.rref = std::move(m);
  return out;
}

template <class F>
std::size_t rank(const DenseMatrix<F>& m) {
  return reduced_row_echelon(m).rank;
}

/// Basis of the right kernel, one vector per free column, in reduced column
/// echelon form (deterministic given the input).
template <class F>
std::vector<std::vector<F>> nullspace(const DenseMatrix<F>& m) {
  const Echelon<F> ech = reduced_row_echelon(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : ech.pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<F>> basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<F> v(cols, F(0));
    v[free_col] = F(1);
    for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i)
      v[ech.pivot_cols[i]] = -ech.rref(i, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// A particular solution of M x = b, or nullopt when the system is
/// inconsistent (exact) or the residual exceeds the tolerance bound (approx).
template <class F>
std::optional<std::vector<F>> solve_linear(const DenseMatrix<F>& m,
                                           const std::vector<F>& b) {
  if (b.size() != m.rows())
    throw std::invalid_argument("solve_linear: size mismatch");
  DenseMatrix<F> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const Echelon<F> ech = reduced_row_echelon(std::move(aug));
  for (std::size_t c : ech.pivot_cols)
    if (c == m.cols()) return std::nullopt;  // pivot in the RHS column

  std::vector<F> x(m.cols(), F(0));
  for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i)
    x[ech.pivot_cols[i]] = ech.rref(i, m.cols());

  if constexpr (!is_exact_v<F>) {
    double xnorm = 0.0, bnorm = 0.0, rnorm = 0.0;
    for (const F& v : x) xnorm = std::max(xnorm, magnitude(v));
    for (const F& v : b) bnorm = std::max(bnorm, magnitude(v));
    const std::vector<F> mx = mat_vec(m, x);
    for (std::size_t i = 0; i < b.size(); ++i)
      rnorm = std::max(rnorm, magnitude(mx[i] - b[i]));
    const double bound =
        tolerance() * std::max(1.0, m.max_magnitude() * xnorm + bnorm);
    if (rnorm > bound) return std::nullopt;
  }
  return x;
}

}  // namespace hyperpoly
