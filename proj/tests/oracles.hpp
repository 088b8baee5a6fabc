// Test-only oracles: independent evaluation routes used to cross-check the
// library. Nothing here may share the code path it verifies; only low-level
// scalar and polynomial arithmetic is reused.
#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "hyperpoly/higgs.hpp"
#include "hyperpoly/polynomial.hpp"

namespace hyperpoly::testing {

/// Lagrange interpolation through (xs[i], ys[i]) with distinct xs.
template <class F>
Polynomial<F> lagrange_interpolate(const std::vector<F>& xs,
                                   const std::vector<F>& ys) {
  if (xs.size() != ys.size() || xs.empty())
    throw std::invalid_argument("bad interpolation data");
  Polynomial<F> acc;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Polynomial<F> term{ys[i]};
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      const F denom = xs[i] - xs[j];
      term = term * Polynomial<F>{-(xs[j] / denom), F(1) / denom};
    }
    acc = acc + term;
  }
  return acc;
}

/// Polynomial square root by top-down coefficient matching (long-division
/// style). Independent of the squarefree-factorization route.
template <class F>
std::optional<Polynomial<F>> poly_sqrt_longdiv(const Polynomial<F>& p) {
  if (p.is_zero()) return Polynomial<F>{};
  const int deg = p.degree();
  if (deg % 2 != 0) return std::nullopt;
  const int m = deg / 2;
  const auto lead_root = exact_sqrt(p.leading());
  if (!lead_root) return std::nullopt;
  std::vector<F> r(static_cast<std::size_t>(m) + 1, F(0));
  r[static_cast<std::size_t>(m)] = *lead_root;
  for (int j = m - 1; j >= 0; --j) {
    F acc(0);
    for (int i = j + 1; i <= m - 1; ++i)
      acc += r[static_cast<std::size_t>(i)] *
             r[static_cast<std::size_t>(m + j - i)];
    r[static_cast<std::size_t>(j)] =
        (p.coeff(m + j) - acc) / (F(2) * r[static_cast<std::size_t>(m)]);
  }
  Polynomial<F> root(std::move(r));
  if (!(root * root == p)) return std::nullopt;
  return root;
}

namespace detail {

/// Sample points away from the marked points (and from pole candidates).
template <class F>
std::vector<F> free_samples(const HiggsData<F>& h, std::size_t count,
                            std::int64_t start) {
  std::vector<F> out;
  std::int64_t x = start;
  while (out.size() < count) {
    const F cand = make_scalar<F>(x++);
    bool marked = false;
    for (const F& xi : h.points.x)
      if (cand == xi) marked = true;
    if (!marked) out.push_back(cand);
  }
  return out;
}

template <class F>
F product_q(const HiggsData<F>& h, const F& x) {
  F q(1);
  for (const F& xi : h.points.x) q *= (x - xi);
  return q;
}

}  // namespace detail

/// Exhaustive search for Higgs-invariant line subbundles of degree >= -k_max,
/// by a route disjoint from the library's:
///   - det M is interpolated from pointwise 2x2 determinants of the
///     partial-fraction evaluation (never from the symbolic numerator matrix);
///   - the eigenvalue square root uses long-division coefficient matching
///     (never squarefree factorization);
///   - sections come from the nullspace of pointwise eigen-equations
///     (M(x_j) - c(x_j)) s(x_j) = 0 (never from adjugate columns);
///   - every candidate is confirmed against the bilinear invariance identity
///     (M s) wedge s = 0 sampled at 4k+4 extra points.
template <class F>
InvariantLines<F> oracle_invariant_lines(const HiggsData<F>& h, int k_max) {
  static_assert(is_exact_v<F>);
  const std::size_t n = h.n();

  // M identically zero <=> it vanishes at n distinct non-marked points
  // (the cleared numerator has entry degrees <= n-1).
  {
    const auto zeros = detail::free_samples(h, n, 1000);
    bool all_zero = true;
    for (const F& x : zeros) all_zero = all_zero && evaluate(h, x).is_zero();
    if (all_zero) return {true, {}};
  }

  // Interpolate P = det(M) Q^2, a polynomial of degree <= 2n-2.
  const auto det_samples = detail::free_samples(h, 2 * n - 1, 2000);
  std::vector<F> det_values;
  for (const F& x : det_samples) {
    const F q = detail::product_q(h, x);
    det_values.push_back(evaluate(h, x).det() * q * q);
  }
  const Polynomial<F> det_poly = lagrange_interpolate(det_samples, det_values);

  // Eigenvalue candidates c with c^2 = -det M: zero when det vanishes,
  // otherwise +-sqrt(-P)/Q when -P is a square.
  struct Candidate {
    Polynomial<F> u;  // c = u / Q, with u = 0 for the kernel case
  };
  std::vector<Candidate> candidates;
  if (det_poly.is_zero()) {
    candidates.push_back({Polynomial<F>{}});
  } else {
    const auto root = poly_sqrt_longdiv(-det_poly);
    if (!root) return {false, {}};
    candidates.push_back({*root});
    candidates.push_back({-*root});
  }

  InvariantLines<F> out;
  for (const auto& cand : candidates) {
    for (int k = 0; k <= k_max; ++k) {
      const std::size_t coeffs = 2 * static_cast<std::size_t>(k + 1);
      const auto samples =
          detail::free_samples(h, 2 * n + 2 * static_cast<std::size_t>(k) + 4, 3000);
      DenseMatrix<F> m(2 * samples.size(), coeffs);
      for (std::size_t row = 0; row < samples.size(); ++row) {
        const F& x = samples[row];
        const F c = cand.u.eval(x) / detail::product_q(h, x);
        const Mat2<F> a = evaluate(h, x) - c * Mat2<F>::identity();
        F power(1);
        for (int d = 0; d <= k; ++d) {
          m(2 * row, static_cast<std::size_t>(d)) = a.m00 * power;
          m(2 * row, coeffs / 2 + static_cast<std::size_t>(d)) = a.m01 * power;
          m(2 * row + 1, static_cast<std::size_t>(d)) = a.m10 * power;
          m(2 * row + 1, coeffs / 2 + static_cast<std::size_t>(d)) = a.m11 * power;
          power *= x;
        }
      }
      for (const auto& vec : nullspace(m)) {
        std::vector<F> pc(vec.begin(), vec.begin() + static_cast<long>(coeffs / 2));
        std::vector<F> qc(vec.begin() + static_cast<long>(coeffs / 2), vec.end());
        LineSubbundle<F> line = saturate_section(Polynomial<F>(std::move(pc)),
                                                 Polynomial<F>(std::move(qc)));
        if (line.k > k_max) continue;
        // Confirm the bilinear invariance identity on fresh samples.
        const auto checks = detail::free_samples(
            h, 4 * static_cast<std::size_t>(line.k) + 4, 5000);
        bool invariant = true;
        for (const F& x : checks) {
          const Vec2<F> s{line.p.eval(x), line.q.eval(x)};
          if (!(wedge(evaluate(h, x) * s, s) == F(0))) invariant = false;
        }
        if (!invariant) continue;
        bool seen = false;
        for (const auto& existing : out.lines) seen = seen || existing == line;
        if (!seen) out.lines.push_back(std::move(line));
      }
    }
  }
  return out;
}

}  // namespace hyperpoly::testing
