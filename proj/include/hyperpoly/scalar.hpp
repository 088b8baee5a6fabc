#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hyperpoly {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

/// Thrown when an exact-only operation is requested on approximate scalars
/// (or vice versa). The CLI maps this to its own exit code.
struct ModeError : std::logic_error {
  using std::logic_error::logic_error;
};

namespace detail {
inline double& tolerance_storage() {
  static double tol = 1e-9;
  return tol;
}
}  // namespace detail

/// Global tolerance for approximate-mode zero tests. All zero tests are
/// scale-relative: x is treated as zero when |x| <= tolerance() * scale.
inline double tolerance() { return detail::tolerance_storage(); }

inline void set_tolerance(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  detail::tolerance_storage() = tol;
}

// ---------------------------------------------------------------------------
// Rational helpers
// ---------------------------------------------------------------------------

/// Parses "p/q", "p", or a plain decimal like "-1.25" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      const BigInt num(text.substr(0, slash));
      const BigInt den(text.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator");
      return Rational(num, den);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(BigInt(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    BigInt den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    if (digits == "-" || digits == "+" || digits.empty())
      throw std::invalid_argument("bad rational");
    return Rational(BigInt(digits), den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational literal: " + text);
  }
}

/// Canonical "p/q" form: reduced, denominator >= 1, sign on the numerator.
/// The denominator is always printed, so round-trips are byte-exact.
inline std::string format_rational(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
inline std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  const BigInt sn = boost::multiprecision::sqrt(num);
  const BigInt sd = boost::multiprecision::sqrt(den);
  if (sn * sn != num || sd * sd != den) return std::nullopt;
  return Rational(sn, sd);
}

/// Largest integer <= r.
inline BigInt rational_floor(const Rational& r) {
  BigInt q = boost::multiprecision::numerator(r) /
             boost::multiprecision::denominator(r);
  if (r < 0 && q * boost::multiprecision::denominator(r) !=
                   boost::multiprecision::numerator(r))
    --q;
  return q;
}

// ---------------------------------------------------------------------------
// Exact complex scalar: an element of Q(i)
// ---------------------------------------------------------------------------

/// Complex number with exact rational real and imaginary parts. Field
/// arithmetic is closed and division by a nonzero element is exact.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(int value) : re(value) {}  // NOLINT: implicit by design
  GaussianRational(Rational real) : re(std::move(real)) {}
  GaussianRational(Rational real, Rational imag)
      : re(std::move(real)), im(std::move(imag)) {}

  bool is_zero() const { return re == 0 && im == 0; }

  friend GaussianRational operator+(const GaussianRational& a,
                                    const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a,
                                    const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) {
    return {-a.re, -a.im};
  }
  friend GaussianRational operator*(const GaussianRational& a,
                                    const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a,
                                    const GaussianRational& b) {
    const Rational norm = b.re * b.re + b.im * b.im;
    if (norm == 0) throw std::domain_error("division by zero");
    return {(a.re * b.re + a.im * b.im) / norm,
            (a.im * b.re - a.re * b.im) / norm};
  }
  GaussianRational& operator+=(const GaussianRational& o) {
    return *this = *this + o;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    return *this = *this - o;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    return *this = *this * o;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    return *this = *this / o;
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
    return !(a == b);
  }
  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& v) {
    os << format_rational(v.re);
    if (v.im != 0) os << (v.im > 0 ? "+" : "") << format_rational(v.im) << "i";
    return os;
  }
};

/// Exact square root in Q(i), when one exists.
///
/// For w = c + di with w^2 = a + bi we need c^2 - d^2 = a and 2cd = b, hence
/// c^2 = (a + s)/2 and d^2 = (s - a)/2 with s = sqrt(a^2 + b^2). A root exists
/// in Q(i) iff the norm and the resulting c^2 (or d^2) are rational squares.
inline std::optional<GaussianRational> exact_sqrt(const GaussianRational& z) {
  if (z.im == 0) {
    if (z.re == 0) return GaussianRational{};
    if (z.re > 0) {
      if (auto s = rational_sqrt(z.re)) return GaussianRational{*s, 0};
      return std::nullopt;
    }
    if (auto s = rational_sqrt(-z.re)) return GaussianRational{0, *s};
    return std::nullopt;
  }
  const auto norm_root = rational_sqrt(z.re * z.re + z.im * z.im);
  if (!norm_root) return std::nullopt;
  const auto c = rational_sqrt((z.re + *norm_root) / 2);
  if (!c || *c == 0) return std::nullopt;
  const Rational d = z.im / (2 * *c);
  const GaussianRational root{*c, d};
  return root * root == z ? std::optional(root) : std::nullopt;
}

// ---------------------------------------------------------------------------
// Field traits and generic zero tests
// ---------------------------------------------------------------------------

template <class F>
struct field_traits;

template <>
struct field_traits<GaussianRational> {
  static constexpr bool is_exact = true;
  static constexpr const char* mode_name = "exact";
};

template <>
struct field_traits<Complex> {
  static constexpr bool is_exact = false;
  static constexpr const char* mode_name = "approx";
};

template <class F>
inline constexpr bool is_exact_v = field_traits<F>::is_exact;

/// Magnitude estimate; used for pivoting and zero tests in approx mode.
inline double magnitude(const Complex& x) { return std::abs(x); }
inline double magnitude(const GaussianRational& x) {
  return std::abs(static_cast<double>(x.re)) +
         std::abs(static_cast<double>(x.im));
}

/// Scale-relative zero test: exact equality in exact mode,
/// |x| <= tolerance()*scale in approx mode.
template <class F>
bool is_zero(const F& x, double scale = 1.0) {
  if constexpr (is_exact_v<F>) {
    (void)scale;
    return x == F(0);
  } else {
    return magnitude(x) <= tolerance() * scale;
  }
}

template <class F>
void require_exact(const char* message) {
  if constexpr (!is_exact_v<F>) throw ModeError(message);
}

/// Scalar from a small integer pair; exact mode keeps both parts rational.
template <class F>
F make_scalar(std::int64_t real, std::int64_t imag = 0) {
  if constexpr (is_exact_v<F>) {
    return GaussianRational{Rational(real), Rational(imag)};
  } else {
    return Complex(static_cast<double>(real), static_cast<double>(imag));
  }
}

}  // namespace hyperpoly
