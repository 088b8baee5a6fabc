#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hyperpoly/linalg.hpp"
#include "hyperpoly/rng.hpp"
#include "hyperpoly/scalar.hpp"

namespace hyperpoly {

/// Thrown when the level-set sampler exhausts its retry budget.
struct SampleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parabolic weights alpha_1..alpha_n, exact rationals in (0,1), n >= 3.
/// Weights stay exact in both scalar modes: stability verdicts compare
/// parabolic degrees exactly.
class WeightVector {
 public:
  explicit WeightVector(std::vector<Rational> alpha) : alpha_(std::move(alpha)) {
    if (alpha_.size() < 3)
      throw std::invalid_argument("weight vector needs n >= 3");
    for (const Rational& a : alpha_)
      if (!(a > 0 && a < 1))
        throw std::invalid_argument("weights must lie in (0,1)");
  }

  static WeightVector uniform(std::size_t n, const Rational& value) {
    return WeightVector(std::vector<Rational>(n, value));
  }

  std::size_t size() const { return alpha_.size(); }
  const Rational& operator[](std::size_t i) const { return alpha_[i]; }
  const std::vector<Rational>& values() const { return alpha_; }

  Rational sum() const {
    Rational s = 0;
    for (const Rational& a : alpha_) s += a;
    return s;
  }

 private:
  std::vector<Rational> alpha_;
};

/// A point of ((C^2)^n)^* x U: covectors y_i and nonzero vectors z_i.
template <class F>
struct HyperpolygonPoint {
  std::vector<Cov2<F>> y;
  std::vector<Vec2<F>> z;

  HyperpolygonPoint(std::vector<Cov2<F>> y_in, std::vector<Vec2<F>> z_in)
      : y(std::move(y_in)), z(std::move(z_in)) {
    if (y.size() != z.size() || z.empty())
      throw std::invalid_argument("inconsistent hyperpolygon data");
    for (const auto& zi : z)
      if (zi.a == F(0) && zi.b == F(0))
        throw std::invalid_argument("z_i must be nonzero");
  }

  std::size_t n() const { return z.size(); }
};

/// A tangent direction (u_i, v_i) at a hyperpolygon point. Membership in
/// ker d(moment) is a predicate, not a constructor constraint.
template <class F>
struct TangentVector {
  std::vector<Cov2<F>> u;
  std::vector<Vec2<F>> v;

  static TangentVector zero(std::size_t n) {
    return {std::vector<Cov2<F>>(n), std::vector<Vec2<F>>(n)};
  }
  std::size_t n() const { return v.size(); }

  friend TangentVector operator+(const TangentVector& s, const TangentVector& t) {
    TangentVector out = s;
    for (std::size_t i = 0; i < out.u.size(); ++i) {
      out.u[i] = out.u[i] + t.u[i];
      out.v[i] = out.v[i] + t.v[i];
    }
    return out;
  }
  friend TangentVector operator*(const F& c, const TangentVector& t) {
    TangentVector out = t;
    for (std::size_t i = 0; i < out.u.size(); ++i) {
      out.u[i] = c * out.u[i];
      out.v[i] = c * out.v[i];
    }
    return out;
  }
};

/// Element [A, lambda] of (SL(2,C) x (C^*)^n) / {+-1}. The two representatives
/// (A, lambda) and (-A, -lambda) act identically; equality of group elements
/// is equality of actions, no sign is canonicalized.
template <class F>
struct GroupElement {
  Mat2<F> A;
  std::vector<F> lambda;

  GroupElement(Mat2<F> a, std::vector<F> l) : A(std::move(a)), lambda(std::move(l)) {
    if (!hyperpoly::is_zero(A.det() - F(1), magnitude(A) + 1.0))
      throw std::invalid_argument("group element needs det A = 1");
    for (const F& s : lambda)
      if (hyperpoly::is_zero(s))
        throw std::invalid_argument("group element needs nonzero lambda_i");
  }

  static GroupElement identity(std::size_t n) {
    return {Mat2<F>::identity(), std::vector<F>(n, F(1))};
  }
};

/// Element (a, s) of the Lie algebra sl(2,C) + C^n, a traceless.
template <class F>
struct LieAlgebraElement {
  Mat2<F> a;
  std::vector<F> s;

  LieAlgebraElement(Mat2<F> a_in, std::vector<F> s_in)
      : a(std::move(a_in)), s(std::move(s_in)) {
    if (!hyperpoly::is_zero(a.trace(), magnitude(a) + 1.0))
      throw std::invalid_argument("Lie algebra element needs trace 0");
  }
};

// ---------------------------------------------------------------------------
// Moment map
// ---------------------------------------------------------------------------

/// Matrix part of the complex moment map: sum_i z_i (x) y_i.
template <class F>
Mat2<F> moment_matrix(const HyperpolygonPoint<F>& p) {
  Mat2<F> m{};
  for (std::size_t i = 0; i < p.n(); ++i) m = m + outer(p.z[i], p.y[i]);
  return m;
}

/// Scalar part of the complex moment map: the contractions (y_i(z_i))_i.
template <class F>
std::vector<F> pairings(const HyperpolygonPoint<F>& p) {
  std::vector<F> out(p.n());
  for (std::size_t i = 0; i < p.n(); ++i) out[i] = pair(p.y[i], p.z[i]);
  return out;
}

namespace detail {
template <class F>
double moment_scale(const HyperpolygonPoint<F>& p) {
  if constexpr (is_exact_v<F>) {
    return 1.0;
  } else {
    double s = 0.0;
    for (std::size_t i = 0; i < p.n(); ++i)
      s += magnitude(p.z[i]) * magnitude(p.y[i]);
    return std::max(s, 1.0);
  }
}
}  // namespace detail

/// Membership in the zero level set Z of the complex moment map. The trace
/// of the matrix part equals the sum of the pairings, so on points with all
/// pairings zero the matrix condition has three independent constraints.
template <class F>
bool is_in_level_set(const HyperpolygonPoint<F>& p) {
  const double scale = detail::moment_scale(p);
  const Mat2<F> m = moment_matrix(p);
  if (!is_zero(m.m00, scale) || !is_zero(m.m01, scale) ||
      !is_zero(m.m10, scale) || !is_zero(m.m11, scale))
    return false;
  for (const F& c : pairings(p))
    if (!is_zero(c, scale)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Group action
// ---------------------------------------------------------------------------

/// y_i -> lambda_i^{-1} (y_i A),  z_i -> lambda_i (A^{-1} z_i).
/// Keeps the level set invariant (the moment matrix conjugates by A).
template <class F>
HyperpolygonPoint<F> act(const GroupElement<F>& g, const HyperpolygonPoint<F>& p) {
  if (g.lambda.size() != p.n())
    throw std::invalid_argument("group element size mismatch");
  const Mat2<F> a_inv = g.A.inverse();
  std::vector<Cov2<F>> y(p.n());
  std::vector<Vec2<F>> z(p.n());
  for (std::size_t i = 0; i < p.n(); ++i) {
    y[i] = (F(1) / g.lambda[i]) * (p.y[i] * g.A);
    z[i] = g.lambda[i] * (a_inv * p.z[i]);
  }
  return {std::move(y), std::move(z)};
}

/// Pushforward of a tangent vector under the action of g:
/// u_i -> lambda_i^{-1} (u_i A),  v_i -> lambda_i (A^{-1} v_i).
template <class F>
TangentVector<F> act_tangent(const GroupElement<F>& g, const TangentVector<F>& t) {
  if (g.lambda.size() != t.n())
    throw std::invalid_argument("group element size mismatch");
  const Mat2<F> a_inv = g.A.inverse();
  TangentVector<F> out = TangentVector<F>::zero(t.n());
  for (std::size_t i = 0; i < t.n(); ++i) {
    out.u[i] = (F(1) / g.lambda[i]) * (t.u[i] * g.A);
    out.v[i] = g.lambda[i] * (a_inv * t.v[i]);
  }
  return out;
}

/// Derivative of the action at the identity:
/// u_i = y_i a - s_i y_i,  v_i = s_i z_i - a z_i.
template <class F>
TangentVector<F> infinitesimal_action(const LieAlgebraElement<F>& xi,
                                      const HyperpolygonPoint<F>& p) {
  if (xi.s.size() != p.n())
    throw std::invalid_argument("Lie algebra element size mismatch");
  TangentVector<F> t = TangentVector<F>::zero(p.n());
  for (std::size_t i = 0; i < p.n(); ++i) {
    t.u[i] = p.y[i] * xi.a - xi.s[i] * p.y[i];
    t.v[i] = xi.s[i] * p.z[i] - xi.a * p.z[i];
  }
  return t;
}

/// Linearization of the moment map at p applied to t.
template <class F>
std::pair<Mat2<F>, std::vector<F>> d_moment(const HyperpolygonPoint<F>& p,
                                            const TangentVector<F>& t) {
  if (t.n() != p.n()) throw std::invalid_argument("tangent size mismatch");
  Mat2<F> m{};
  std::vector<F> pairs(p.n());
  for (std::size_t i = 0; i < p.n(); ++i) {
    m = m + outer(t.v[i], p.y[i]) + outer(p.z[i], t.u[i]);
    pairs[i] = pair(t.u[i], p.z[i]) + pair(p.y[i], t.v[i]);
  }
  return {m, std::move(pairs)};
}

template <class F>
bool in_moment_kernel(const HyperpolygonPoint<F>& p, const TangentVector<F>& t) {
  double scale = detail::moment_scale(p);
  if constexpr (!is_exact_v<F>) {
    double tmag = 0.0;
    for (std::size_t i = 0; i < t.n(); ++i)
      tmag += magnitude(t.u[i]) * magnitude(p.z[i]) +
              magnitude(t.v[i]) * magnitude(p.y[i]);
    scale = std::max(scale, tmag);
  }
  const auto [m, pairs] = d_moment(p, t);
  if (!is_zero(m.m00, scale) || !is_zero(m.m01, scale) ||
      !is_zero(m.m10, scale) || !is_zero(m.m11, scale))
    return false;
  for (const F& c : pairs)
    if (!is_zero(c, scale)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Flattened coordinates
// ---------------------------------------------------------------------------
// Tangent vectors are identified with C^{4n}: the u block first (two
// components per index), then the v block. The linearized moment map and all
// rank computations use this layout.

template <class F>
std::vector<F> flatten(const TangentVector<F>& t) {
  const std::size_t n = t.n();
  std::vector<F> out(4 * n);
  for (std::size_t i = 0; i < n; ++i) {
    out[2 * i] = t.u[i].a;
    out[2 * i + 1] = t.u[i].b;
    out[2 * n + 2 * i] = t.v[i].a;
    out[2 * n + 2 * i + 1] = t.v[i].b;
  }
  return out;
}

template <class F>
TangentVector<F> unflatten(const std::vector<F>& flat) {
  if (flat.size() % 4 != 0) throw std::invalid_argument("bad tangent length");
  const std::size_t n = flat.size() / 4;
  TangentVector<F> t = TangentVector<F>::zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.u[i] = {flat[2 * i], flat[2 * i + 1]};
    t.v[i] = {flat[2 * n + 2 * i], flat[2 * n + 2 * i + 1]};
  }
  return t;
}

/// The (n+4) x 4n matrix of d(moment) at p in flattened coordinates.
template <class F>
DenseMatrix<F> moment_linearization(const HyperpolygonPoint<F>& p) {
  const std::size_t n = p.n();
  DenseMatrix<F> m(n + 4, 4 * n);
  // Rows 0..3: entries (a,b) of sum_i [v_i (x) y_i + z_i (x) u_i].
  for (std::size_t i = 0; i < n; ++i) {
    const F za[2] = {p.z[i].a, p.z[i].b};
    const F yb[2] = {p.y[i].a, p.y[i].b};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const std::size_t row = static_cast<std::size_t>(2 * a + b);
        m(row, 2 * i + static_cast<std::size_t>(b)) = za[a];           // u_i[b]
        m(row, 2 * n + 2 * i + static_cast<std::size_t>(a)) = yb[b];   // v_i[a]
      }
    // Row 4+i: u_i(z_i) + y_i(v_i).
    m(4 + i, 2 * i) = p.z[i].a;
    m(4 + i, 2 * i + 1) = p.z[i].b;
    m(4 + i, 2 * n + 2 * i) = p.y[i].a;
    m(4 + i, 2 * n + 2 * i + 1) = p.y[i].b;
  }
  return m;
}

/// Basis of ker d(moment) at a level-set point, i.e. of T_p Z.
template <class F>
std::vector<TangentVector<F>> tangent_basis(const HyperpolygonPoint<F>& p) {
  if (!is_in_level_set(p)) throw std::domain_error("not on moment level set");
  std::vector<TangentVector<F>> out;
  for (auto& v : nullspace(moment_linearization(p)))
    out.push_back(unflatten<F>(v));
  return out;
}

/// Images of the standard Lie algebra basis (three traceless directions and
/// n scaling directions) under the infinitesimal action: a spanning list of
/// T_p(G p), linearly independent at stable points.
template <class F>
std::vector<TangentVector<F>> orbit_basis(const HyperpolygonPoint<F>& p) {
  if (!is_in_level_set(p)) throw std::domain_error("not on moment level set");
  const std::size_t n = p.n();
  std::vector<TangentVector<F>> out;
  const Mat2<F> sl2[3] = {{F(0), F(1), F(0), F(0)},
                          {F(0), F(0), F(1), F(0)},
                          {F(1), F(0), F(0), F(-1)}};
  for (const Mat2<F>& a : sl2)
    out.push_back(infinitesimal_action(LieAlgebraElement<F>{a, std::vector<F>(n, F(0))}, p));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<F> s(n, F(0));
    s[i] = F(1);
    out.push_back(infinitesimal_action(LieAlgebraElement<F>{Mat2<F>{}, std::move(s)}, p));
  }
  return out;
}

/// Matrix whose rows are the flattened vectors; used for rank and span tests.
template <class F>
DenseMatrix<F> rows_matrix(const std::vector<TangentVector<F>>& vectors) {
  if (vectors.empty()) return {};
  const std::size_t cols = 4 * vectors[0].n();
  DenseMatrix<F> m(vectors.size(), cols);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const auto flat = flatten(vectors[i]);
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = flat[j];
  }
  return m;
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

namespace detail {

template <class F>
F random_entry(Rng& rng) {
  if constexpr (is_exact_v<F>) {
    return make_scalar<F>(rng.int_range(-9, 9), rng.int_range(-9, 9));
  } else {
    return Complex(rng.gaussian(), rng.gaussian());
  }
}

template <class F>
Vec2<F> random_direction(Rng& rng) {
  while (true) {
    Vec2<F> v{random_entry<F>(rng), random_entry<F>(rng)};
    if (!(v.a == F(0) && v.b == F(0))) return v;
  }
}

}  // namespace detail

/// Draws a point of the zero level set. The z_i get small random entries and
/// are redrawn until pairwise non-proportional; the conditions on y are
/// linear in y, so y is a random element of their kernel. Needs n >= 4: for
/// n = 3 the kernel is generically trivial.
template <class F>
HyperpolygonPoint<F> sample_level_set(std::size_t n, Rng& rng) {
  if (n < 4) throw std::domain_error("sample_level_set requires n >= 4");
  constexpr int kMaxAttempts = 64;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    // Pairwise non-proportional z_i: a cheap genericity condition.
    std::vector<Vec2<F>> z;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      int tries = 0;
      while (true) {
        Vec2<F> cand = detail::random_direction<F>(rng);
        bool distinct = true;
        for (const auto& zj : z)
          if (hyperpoly::is_zero(wedge(cand, zj),
                                 magnitude(cand) * magnitude(zj) + 1.0)) {
            distinct = false;
            break;
          }
        if (distinct) {
          z.push_back(cand);
          break;
        }
        if (++tries > 32) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;

    // Constraints on y: sum_i z_i (x) y_i = 0 and y_i(z_i) = 0.
    DenseMatrix<F> m(n + 4, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      const F za[2] = {z[i].a, z[i].b};
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          m(static_cast<std::size_t>(2 * a + b), 2 * i + static_cast<std::size_t>(b)) = za[a];
      m(4 + i, 2 * i) = z[i].a;
      m(4 + i, 2 * i + 1) = z[i].b;
    }
    const auto kernel = nullspace(m);
    if (kernel.empty()) continue;

    std::vector<F> flat(2 * n, F(0));
    bool nonzero = false;
    for (const auto& basis_vec : kernel) {
      const F c = detail::random_entry<F>(rng);
      if (!hyperpoly::is_zero(c)) nonzero = true;
      for (std::size_t j = 0; j < flat.size(); ++j) flat[j] += c * basis_vec[j];
    }
    if (!nonzero) continue;

    std::vector<Cov2<F>> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = {flat[2 * i], flat[2 * i + 1]};
    HyperpolygonPoint<F> p{std::move(y), std::move(z)};
    if (is_in_level_set(p)) return p;
  }
  throw SampleError("sampling failed");
}

/// Random tangent vector from a basis, with small random coefficients.
template <class F>
TangentVector<F> random_combination(const std::vector<TangentVector<F>>& basis,
                                    Rng& rng) {
  if (basis.empty()) throw std::invalid_argument("empty basis");
  TangentVector<F> t = TangentVector<F>::zero(basis[0].n());
  for (const auto& b : basis) t = t + detail::random_entry<F>(rng) * b;
  return t;
}

/// Random group element: an SL(2) matrix with small rational entries and
/// nonzero scaling factors.
template <class F>
GroupElement<F> random_group_element(std::size_t n, Rng& rng) {
  while (true) {
    Mat2<F> a{detail::random_entry<F>(rng), detail::random_entry<F>(rng),
              detail::random_entry<F>(rng), detail::random_entry<F>(rng)};
    const F det = a.det();
    if (hyperpoly::is_zero(det, magnitude(a) * magnitude(a) + 1.0)) continue;
    // Scale one row to force det = 1.
    const F inv = F(1) / det;
    a.m10 = inv * a.m10;
    a.m11 = inv * a.m11;
    std::vector<F> lambda(n);
    for (std::size_t i = 0; i < n; ++i) {
      F l = detail::random_entry<F>(rng);
      while (hyperpoly::is_zero(l)) l = detail::random_entry<F>(rng);
      lambda[i] = l;
    }
    return {std::move(a), std::move(lambda)};
  }
}

/// Random traceless direction plus scaling components.
template <class F>
LieAlgebraElement<F> random_lie_element(std::size_t n, Rng& rng) {
  const F d = detail::random_entry<F>(rng);
  Mat2<F> a{d, detail::random_entry<F>(rng), detail::random_entry<F>(rng), -d};
  std::vector<F> s(n);
  for (auto& c : s) c = detail::random_entry<F>(rng);
  return {std::move(a), std::move(s)};
}

}  // namespace hyperpoly
