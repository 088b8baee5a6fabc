#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "hyperpoly/polynomial.hpp"

namespace hyperpoly {

/// Quotient of univariate polynomials. The denominator is always monic and
/// nonzero; in exact mode the fraction is kept gcd-reduced, so equality is
/// structural. Approx mode supports arithmetic and evaluation only.
template <class F>
class RationalFunction {
 public:
  RationalFunction() : den_{F(1)} {}
  explicit RationalFunction(Polynomial<F> num) : num_(std::move(num)), den_{F(1)} {}
  RationalFunction(Polynomial<F> num, Polynomial<F> den)
      : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero())
      throw std::domain_error("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Polynomial<F>{F(1)};
      return;
    }
    if constexpr (is_exact_v<F>) {
      const Polynomial<F> g = poly_gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = exact_div(num_, g);
        den_ = exact_div(den_, g);
      }
    }
    const F lead_inv = F(1) / den_.leading();
    num_ = lead_inv * num_;
    den_ = lead_inv * den_;
  }

  const Polynomial<F>& num() const { return num_; }
  const Polynomial<F>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  F eval(const F& x0) const {
    const F d = den_.eval(x0);
    if (hyperpoly::is_zero(d, eval_scale(den_, x0)))
      throw std::domain_error("evaluation at pole");
    return num_.eval(x0) / d;
  }

  friend RationalFunction operator+(const RationalFunction& f,
                                    const RationalFunction& g) {
    return {f.num_ * g.den_ + g.num_ * f.den_, f.den_ * g.den_};
  }
  friend RationalFunction operator-(const RationalFunction& f,
                                    const RationalFunction& g) {
    return {f.num_ * g.den_ - g.num_ * f.den_, f.den_ * g.den_};
  }
  friend RationalFunction operator-(const RationalFunction& f) {
    RationalFunction out = f;
    out.num_ = -out.num_;
    return out;
  }
  friend RationalFunction operator*(const RationalFunction& f,
                                    const RationalFunction& g) {
    return {f.num_ * g.num_, f.den_ * g.den_};
  }
  friend RationalFunction operator/(const RationalFunction& f,
                                    const RationalFunction& g) {
    if (g.is_zero()) throw std::domain_error("division by zero function");
    return {f.num_ * g.den_, f.den_ * g.num_};
  }
  friend bool operator==(const RationalFunction& f, const RationalFunction& g) {
    return f.num_ == g.num_ && f.den_ == g.den_;
  }

 private:
  static double eval_scale(const Polynomial<F>& p, const F& x0) {
    if constexpr (is_exact_v<F>) {
      (void)p;
      (void)x0;
      return 1.0;
    } else {
      double xmag = std::max(1.0, magnitude(x0));
      double scale = 0.0, power = 1.0;
      for (const F& c : p.coeffs()) {
        scale = std::max(scale, magnitude(c) * power);
        power *= xmag;
      }
      return std::max(scale, 1.0);
    }
  }

  Polynomial<F> num_;
  Polynomial<F> den_;
};

/// Pole order of a nonzero reduced rational function at x0 (negative values
/// are vanishing orders). Exact mode only. Additive under multiplication.
template <class F>
int pole_order(const RationalFunction<F>& f, const F& x0) {
  require_exact<F>("pole order requires exact scalars");
  if (f.is_zero()) throw std::domain_error("order of zero function");
  return root_multiplicity(f.den(), x0) - root_multiplicity(f.num(), x0);
}

/// Exact square root of a rational function, if one exists. With a reduced
/// fraction p/q and q monic, a root r = u/w reduced gives p = u^2 and
/// q = w^2, so it is enough to take polynomial square roots of both ends.
template <class F>
std::optional<RationalFunction<F>> rational_function_sqrt(
    const RationalFunction<F>& f) {
  require_exact<F>("square detection requires exact scalars");
  if (f.is_zero()) return RationalFunction<F>{};
  const auto num_root = poly_sqrt(f.num());
  if (!num_root) return std::nullopt;
  const auto den_root = poly_sqrt(f.den());
  if (!den_root) return std::nullopt;
  RationalFunction<F> root(*num_root, *den_root);
  if (!(root * root == f)) return std::nullopt;
  return root;
}

}  // namespace hyperpoly
