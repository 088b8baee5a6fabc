#pragma once

#include <algorithm>
#include <initializer_list>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hyperpoly/scalar.hpp"

namespace hyperpoly {

/// degree() of the zero polynomial ("minus infinity").
inline constexpr int kNegInfDegree = std::numeric_limits<int>::min();

/// Univariate polynomial in the affine coordinate x, coefficients stored
/// lowest degree first with trailing zeros stripped. In approx mode a
/// trailing coefficient counts as zero when its magnitude is at most
/// tolerance() times the largest coefficient magnitude.
template <class F>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<F> coeffs) : c_(coeffs) { normalize(); }
  explicit Polynomial(std::vector<F> coeffs) : c_(std::move(coeffs)) {
    normalize();
  }
  explicit Polynomial(const F& constant) : c_{constant} { normalize(); }

  /// The monomial x.
  static Polynomial x() { return Polynomial{F(0), F(1)}; }

  bool is_zero() const { return c_.empty(); }
  int degree() const {
    return c_.empty() ? kNegInfDegree : static_cast<int>(c_.size()) - 1;
  }
  const F& coeff(int k) const {
    static const F zero{F(0)};
    if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
    return c_[static_cast<std::size_t>(k)];
  }
  const F& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero");
    return c_.back();
  }
  const std::vector<F>& coeffs() const { return c_; }

  F eval(const F& x0) const {
    F acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x0 + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<F> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k)
      d[k - 1] = F(static_cast<int>(k)) * c_[k];
    return Polynomial(std::move(d));
  }

  Polynomial monic() const {
    if (is_zero()) throw std::domain_error("monic of zero polynomial");
    return (F(1) / leading()) * *this;
  }

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    std::vector<F> s(std::max(p.c_.size(), q.c_.size()), F(0));
    for (std::size_t k = 0; k < p.c_.size(); ++k) s[k] += p.c_[k];
    for (std::size_t k = 0; k < q.c_.size(); ++k) s[k] += q.c_[k];
    return Polynomial(std::move(s));
  }
  friend Polynomial operator-(const Polynomial& p, const Polynomial& q) {
    std::vector<F> s(std::max(p.c_.size(), q.c_.size()), F(0));
    for (std::size_t k = 0; k < p.c_.size(); ++k) s[k] += p.c_[k];
    for (std::size_t k = 0; k < q.c_.size(); ++k) s[k] -= q.c_[k];
    return Polynomial(std::move(s));
  }
  friend Polynomial operator-(const Polynomial& p) { return F(-1) * p; }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<F> s(p.c_.size() + q.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < p.c_.size(); ++i)
      for (std::size_t j = 0; j < q.c_.size(); ++j) s[i + j] += p.c_[i] * q.c_[j];
    return Polynomial(std::move(s));
  }
  friend Polynomial operator*(const F& s, const Polynomial& p) {
    std::vector<F> out(p.c_);
    for (F& x : out) x = s * x;
    return Polynomial(std::move(out));
  }
  friend bool operator==(const Polynomial& p, const Polynomial& q) {
    return p.c_ == q.c_;
  }

 private:
  void normalize() {
    if constexpr (is_exact_v<F>) {
      while (!c_.empty() && c_.back() == F(0)) c_.pop_back();
    } else {
      double scale = 0.0;
      for (const F& x : c_) scale = std::max(scale, magnitude(x));
      while (!c_.empty() && magnitude(c_.back()) <= tolerance() * scale)
        c_.pop_back();
    }
  }

  std::vector<F> c_;
};

/// Quotient and remainder with deg r < deg b. Field division, so exact in
/// exact mode.
template <class F>
std::pair<Polynomial<F>, Polynomial<F>> divmod(const Polynomial<F>& a,
                                               const Polynomial<F>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {{}, a};
  std::vector<F> rem(a.coeffs());
  const int db = b.degree();
  const F lead_inv = F(1) / b.leading();
  std::vector<F> quot(static_cast<std::size_t>(a.degree() - db) + 1, F(0));
  for (int k = a.degree() - db; k >= 0; --k) {
    const F q = lead_inv * rem[static_cast<std::size_t>(k + db)];
    quot[static_cast<std::size_t>(k)] = q;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(k + j)] -= q * b.coeff(j);
  }
  return {Polynomial<F>(std::move(quot)), Polynomial<F>(std::move(rem))};
}

/// Exact quotient; throws if the division leaves a remainder (exact mode).
template <class F>
Polynomial<F> exact_div(const Polynomial<F>& a, const Polynomial<F>& b) {
  auto [q, r] = divmod(a, b);
  if constexpr (is_exact_v<F>) {
    if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  }
  return q;
}

/// Monic gcd by the Euclidean algorithm. Exact mode only: gcds are
/// discontinuous in the coefficients.
template <class F>
Polynomial<F> poly_gcd(Polynomial<F> a, Polynomial<F> b) {
  require_exact<F>("polynomial gcd requires exact scalars");
  if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd undefined");
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    (void)q;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Squarefree decomposition (Musser): returns pairs (g_i, i) of monic
/// squarefree g_i with p = leading(p) * prod g_i^i. Characteristic zero.
template <class F>
std::vector<std::pair<Polynomial<F>, int>> squarefree_decomposition(
    const Polynomial<F>& p) {
  require_exact<F>("squarefree decomposition requires exact scalars");
  if (p.is_zero()) throw std::domain_error("squarefree of zero polynomial");
  std::vector<std::pair<Polynomial<F>, int>> out;
  const Polynomial<F> pm = p.monic();
  if (pm.degree() == 0) return out;
  Polynomial<F> g = poly_gcd(pm, pm.derivative());
  Polynomial<F> c = exact_div(pm, g);
  int i = 1;
  while (c.degree() > 0) {
    Polynomial<F> y = poly_gcd(c, g);
    Polynomial<F> factor = exact_div(c, y);
    if (factor.degree() > 0) out.emplace_back(factor.monic(), i);
    c = std::move(y);
    g = exact_div(g, c);
    ++i;
  }
  return out;
}

/// Exact polynomial square root, if p is a perfect square: every factor in
/// the squarefree decomposition must have even multiplicity and the leading
/// coefficient must be a square in the field.
template <class F>
std::optional<Polynomial<F>> poly_sqrt(const Polynomial<F>& p) {
  require_exact<F>("square detection requires exact scalars");
  if (p.is_zero()) return Polynomial<F>{};
  if constexpr (is_exact_v<F>) {
    const auto lead_root = exact_sqrt(p.leading());
    if (!lead_root) return std::nullopt;
    Polynomial<F> root{*lead_root};
    for (const auto& [factor, mult] : squarefree_decomposition(p)) {
      if (mult % 2 != 0) return std::nullopt;
      for (int k = 0; k < mult / 2; ++k) root = root * factor;
    }
    if (!(root * root == p)) return std::nullopt;
    return root;
  } else {
    return std::nullopt;  // unreachable
  }
}

/// Multiplicity of x0 as a root of p (0 when p(x0) != 0). Exact mode.
template <class F>
int root_multiplicity(const Polynomial<F>& p, const F& x0) {
  require_exact<F>("root multiplicity requires exact scalars");
  if (p.is_zero()) throw std::domain_error("order of zero function");
  const Polynomial<F> linear{-x0, F(1)};
  Polynomial<F> rest = p;
  int mult = 0;
  while (true) {
    auto [q, r] = divmod(rest, linear);
    if (!r.is_zero()) return mult;
    rest = std::move(q);
    ++mult;
  }
}

}  // namespace hyperpoly
