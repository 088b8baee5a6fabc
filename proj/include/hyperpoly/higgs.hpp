#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hyperpoly/hyperpolygon.hpp"
#include "hyperpoly/linalg.hpp"
#include "hyperpoly/rational_function.hpp"

namespace hyperpoly {

/// n distinct marked points in the affine chart (infinity is never marked;
/// the Higgs field is represented there by boundedness of x^2 M(x)).
template <class F>
struct MarkedPoints {
  std::vector<F> x;

  explicit MarkedPoints(std::vector<F> points) : x(std::move(points)) {
    if (x.size() < 3) throw std::invalid_argument("need n >= 3 marked points");
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = i + 1; j < x.size(); ++j)
        if (hyperpoly::is_zero(x[i] - x[j],
                               magnitude(x[i]) + magnitude(x[j]) + 1.0))
          throw std::invalid_argument("marked points must be distinct");
  }

  /// Default configuration 0, 1, ..., n-1.
  static MarkedPoints consecutive(std::size_t n) {
    std::vector<F> pts(n);
    for (std::size_t i = 0; i < n; ++i)
      pts[i] = make_scalar<F>(static_cast<std::int64_t>(i));
    return MarkedPoints(std::move(pts));
  }

  std::size_t n() const { return x.size(); }
};

/// The parabolic Higgs bundle attached to a hyperpolygon point: trivial rank
/// two bundle, quasiparabolic lines l_i = span(lines[i]) over the marked
/// points, and the Higgs field M(x) = sum_i residues[i]/(x - x_i) (the
/// coefficient of dx in the affine trivialization).
///
/// For data coming from the level set the residues satisfy sum R_i = 0
/// (no pole at infinity), R_i^2 = 0 and R_i l_i = 0, im R_i inside l_i
/// (strong parabolicity); these are checked by predicates, not enforced
/// here, so that diagnostic inputs can be represented.
template <class F>
struct HiggsData {
  MarkedPoints<F> points;
  WeightVector weights;
  std::vector<Vec2<F>> lines;
  std::vector<Mat2<F>> residues;

  HiggsData(MarkedPoints<F> pts, WeightVector w, std::vector<Vec2<F>> l,
            std::vector<Mat2<F>> r)
      : points(std::move(pts)),
        weights(std::move(w)),
        lines(std::move(l)),
        residues(std::move(r)) {
    const std::size_t n = points.n();
    if (weights.size() != n || lines.size() != n || residues.size() != n)
      throw std::invalid_argument("inconsistent Higgs data sizes");
    for (const auto& line : lines)
      if (line.a == F(0) && line.b == F(0))
        throw std::invalid_argument("quasiparabolic line must be nonzero");
  }

  std::size_t n() const { return points.n(); }
};

/// The correspondence map on points: lines[i] = z_i and
/// residues[i] = z_i (x) y_i.
template <class F>
HiggsData<F> to_higgs(const HyperpolygonPoint<F>& p, MarkedPoints<F> points,
                      WeightVector weights) {
  if (points.n() != p.n() || weights.size() != p.n())
    throw std::invalid_argument("marked point / weight count mismatch");
  if (!is_in_level_set(p)) throw std::domain_error("not on moment level set");
  std::vector<Vec2<F>> lines = p.z;
  std::vector<Mat2<F>> residues(p.n());
  for (std::size_t i = 0; i < p.n(); ++i) residues[i] = outer(p.z[i], p.y[i]);
  return {std::move(points), std::move(weights), std::move(lines),
          std::move(residues)};
}

/// Sum of the residues; zero exactly when the Higgs field is regular at
/// infinity.
template <class F>
bool residues_sum_zero(const HiggsData<F>& h) {
  Mat2<F> sum{};
  double scale = 0.0;
  for (const auto& r : h.residues) {
    sum = sum + r;
    scale += magnitude(r);
  }
  scale = std::max(scale, 1.0);
  return is_zero(sum.m00, scale) && is_zero(sum.m01, scale) &&
         is_zero(sum.m10, scale) && is_zero(sum.m11, scale);
}

/// Strong parabolicity: each residue kills its line, maps the fiber into it,
/// and squares to zero.
template <class F>
bool check_strong_parabolicity(const HiggsData<F>& h) {
  for (std::size_t i = 0; i < h.n(); ++i) {
    const Mat2<F>& r = h.residues[i];
    const Vec2<F>& line = h.lines[i];
    const double scale = std::max(magnitude(r) * magnitude(line), 1.0);
    const Vec2<F> killed = r * line;
    if (!is_zero(killed.a, scale) || !is_zero(killed.b, scale)) return false;
    // Image inside the line: both columns proportional to it.
    if (!is_zero(wedge(r.col(0), line), scale) ||
        !is_zero(wedge(r.col(1), line), scale))
      return false;
    const Mat2<F> sq = r * r;
    const double sq_scale = std::max(magnitude(r) * magnitude(r), 1.0);
    if (!is_zero(sq.m00, sq_scale) || !is_zero(sq.m01, sq_scale) ||
        !is_zero(sq.m10, sq_scale) || !is_zero(sq.m11, sq_scale))
      return false;
  }
  return true;
}

/// Value of the Higgs field at a non-marked point of the affine chart.
template <class F>
Mat2<F> evaluate(const HiggsData<F>& h, const F& x0) {
  Mat2<F> out{};
  for (std::size_t i = 0; i < h.n(); ++i) {
    const F diff = x0 - h.points.x[i];
    if (hyperpoly::is_zero(diff, magnitude(x0) + magnitude(h.points.x[i]) + 1.0))
      throw std::domain_error("pole of Higgs field");
    out = out + (F(1) / diff) * h.residues[i];
  }
  return out;
}

/// 2x2 matrix of polynomials.
template <class F>
struct PolyMat2 {
  Polynomial<F> m00, m01, m10, m11;

  Polynomial<F> trace() const { return m00 + m11; }
  Polynomial<F> det() const { return m00 * m11 - m01 * m10; }
  bool is_zero() const {
    return m00.is_zero() && m01.is_zero() && m10.is_zero() && m11.is_zero();
  }
};

/// Clears denominators of the Higgs field: returns (N, Q) with
/// M(x) = N(x)/Q(x), Q = prod (x - x_i) and polynomial matrix
/// N = sum_i R_i prod_{j != i} (x - x_j).
template <class F>
std::pair<PolyMat2<F>, Polynomial<F>> higgs_polynomial_matrix(
    const HiggsData<F>& h) {
  const std::size_t n = h.n();
  Polynomial<F> q{F(1)};
  std::vector<Polynomial<F>> linear(n);
  for (std::size_t i = 0; i < n; ++i) {
    linear[i] = Polynomial<F>{-h.points.x[i], F(1)};
    q = q * linear[i];
  }
  PolyMat2<F> num;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial<F> cofactor{F(1)};
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) cofactor = cofactor * linear[j];
    const Mat2<F>& r = h.residues[i];
    num.m00 = num.m00 + r.m00 * cofactor;
    num.m01 = num.m01 + r.m01 * cofactor;
    num.m10 = num.m10 + r.m10 * cofactor;
    num.m11 = num.m11 + r.m11 * cofactor;
  }
  return {std::move(num), std::move(q)};
}

/// det M(x) as a reduced rational function. Asserts the spectral shape
/// guaranteed by construction: trace M = 0 identically and pole order at
/// most one at every marked point (nilpotent residues cancel the double
/// pole).
template <class F>
RationalFunction<F> det_rational(const HiggsData<F>& h) {
  require_exact<F>("exact mode required");
  const auto [num, q] = higgs_polynomial_matrix(h);
  if (!num.trace().is_zero())
    throw std::domain_error("Higgs field has nonzero trace");
  RationalFunction<F> det(num.det(), q * q);
  if (!det.is_zero())
    for (const F& xi : h.points.x)
      if (pole_order(det, xi) > 1)
        throw std::domain_error("det of Higgs field has a double pole");
  return det;
}

// ---------------------------------------------------------------------------
// Line subbundles and stability
// ---------------------------------------------------------------------------

/// A saturated line subbundle of the trivial rank two bundle, given by a
/// coprime polynomial section (p, q) with k = max(deg p, deg q); the
/// subbundle has degree -k. The section is scaled so that its top-degree
/// component (p on ties) is monic, which makes representations canonical.
template <class F>
struct LineSubbundle {
  int k = 0;
  Polynomial<F> p, q;

  friend bool operator==(const LineSubbundle& a, const LineSubbundle& b) {
    return a.k == b.k && a.p == b.p && a.q == b.q;
  }
};

/// Saturation: divide out the common factor and normalize the scale.
template <class F>
LineSubbundle<F> saturate_section(Polynomial<F> p, Polynomial<F> q) {
  require_exact<F>("exact mode required");
  if (p.is_zero() && q.is_zero())
    throw std::invalid_argument("zero section has no saturation");
  if (!p.is_zero() && !q.is_zero()) {
    const Polynomial<F> g = poly_gcd(p, q);
    if (g.degree() > 0) {
      p = exact_div(p, g);
      q = exact_div(q, g);
    }
  }
  const F lead = p.degree() >= q.degree() ? p.leading() : q.leading();
  const F inv = F(1) / lead;
  p = inv * p;
  q = inv * q;
  return {std::max(p.degree(), q.degree()), std::move(p), std::move(q)};
}

/// Result of the invariant-subbundle search. When the Higgs field vanishes
/// identically every line subbundle is invariant; that case is flagged
/// instead of enumerated.
template <class F>
struct InvariantLines {
  bool all_invariant = false;
  std::vector<LineSubbundle<F>> lines;
};

/// All Higgs-invariant saturated line subbundles of degree >= -k_max.
///
/// A line subbundle is invariant iff its section is a pointwise eigenvector
/// of M(x); the eigenvalue section c satisfies c^2 = -det M over the
/// rational function field. Cases:
///   (a) det M != 0 and -det M not a square: no invariant subbundle;
///   (b) det M = 0, M != 0: the kernel line field of the nilpotent-valued M,
///       read off the columns of N (traceless with det 0 gives N^2 = 0, so
///       columns of N span the kernel), saturated;
///   (c) -det M = r^2 != 0: the two eigen-line fields ker(M -+ r), via the
///       adjugate of the cleared-denominator matrix;
///   (d) M = 0: the all-invariant flag.
template <class F>
InvariantLines<F> invariant_line_subbundles(const HiggsData<F>& h, int k_max) {
  require_exact<F>("exact mode required");
  if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
  const auto [num, q] = higgs_polynomial_matrix(h);
  InvariantLines<F> out;
  if (num.is_zero()) {
    out.all_invariant = true;
    return out;
  }
  const Polynomial<F> det = num.det();
  if (det.is_zero()) {
    // Kernel line field from the first nonzero column of N.
    Polynomial<F> p = num.m00, v = num.m10;
    if (p.is_zero() && v.is_zero()) {
      p = num.m01;
      v = num.m11;
    }
    LineSubbundle<F> line = saturate_section(std::move(p), std::move(v));
    if (line.k <= k_max) out.lines.push_back(std::move(line));
    return out;
  }
  const RationalFunction<F> minus_det(-det, q * q);
  const auto root = rational_function_sqrt(minus_det);
  if (!root) return out;
  // Eigenvalues +-r with r = u/w; clear denominators of M - c and read the
  // kernel off the adjugate columns.
  const Polynomial<F>& u = root->num();
  const Polynomial<F>& w = root->den();
  for (int sign : {+1, -1}) {
    const Polynomial<F> shift = F(sign) * (u * q);
    PolyMat2<F> cleared{num.m00 * w - shift, num.m01 * w, num.m10 * w,
                        num.m11 * w - shift};
    // adj columns: (m11, -m10) and (-m01, m00).
    Polynomial<F> p = cleared.m11, v = -cleared.m10;
    if (p.is_zero() && v.is_zero()) {
      p = -cleared.m01;
      v = cleared.m00;
    }
    LineSubbundle<F> line = saturate_section(std::move(p), std::move(v));
    if (line.k <= k_max) out.lines.push_back(std::move(line));
  }
  return out;
}

/// Parabolic degree -k + sum of the weights at marked points where the
/// section spans the quasiparabolic line.
template <class F>
Rational parabolic_degree(const LineSubbundle<F>& line, const HiggsData<F>& h) {
  Rational degree = -Rational(line.k);
  for (std::size_t i = 0; i < h.n(); ++i) {
    const F& xi = h.points.x[i];
    const F pv = line.p.eval(xi);
    const F qv = line.q.eval(xi);
    const F det2 = pv * h.lines[i].b - qv * h.lines[i].a;
    const double scale =
        std::max({magnitude(pv), magnitude(qv), 1.0}) * magnitude(h.lines[i]);
    if (is_zero(det2, std::max(scale, 1.0))) degree += h.weights[i];
  }
  return degree;
}

template <class F>
struct StabilityReport {
  bool stable = false;
  bool strictly_semistable = false;
  Rational threshold;                    // pardeg(E)/2 = (sum alpha)/2
  std::optional<Rational> max_pardeg;    // over invariant subbundles searched
  std::optional<LineSubbundle<F>> witness;
};

namespace detail {

template <class F>
void consider_candidate(const LineSubbundle<F>& line, const HiggsData<F>& h,
                        StabilityReport<F>& report) {
  const Rational pd = parabolic_degree(line, h);
  if (!report.max_pardeg || pd > *report.max_pardeg) {
    report.max_pardeg = pd;
    report.witness = line;
  }
}

/// For a vanishing Higgs field every line subbundle is invariant: scan all
/// degrees k <= k_max and all subsets S of marked points for a section of
/// degree <= k through the lines over S, and keep the best parabolic degree.
template <class F>
void scan_all_subbundles(const HiggsData<F>& h, int k_max,
                         StabilityReport<F>& report) {
  const std::size_t n = h.n();
  if (n > 10)
    throw std::invalid_argument("subset scan for vanishing Higgs field capped at n = 10");
  for (int k = 0; k <= k_max; ++k) {
    const std::size_t coeffs = 2 * static_cast<std::size_t>(k + 1);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      DenseMatrix<F> m(static_cast<std::size_t>(std::popcount(mask)), coeffs);
      std::size_t row = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!(mask & (1u << i))) continue;
        F power(1);
        for (int j = 0; j <= k; ++j) {
          m(row, static_cast<std::size_t>(j)) = power * h.lines[i].b;
          m(row, coeffs / 2 + static_cast<std::size_t>(j)) =
              -(power * h.lines[i].a);
          power = power * h.points.x[i];
        }
        ++row;
      }
      for (const auto& vec : nullspace(m)) {
        std::vector<F> pc(vec.begin(), vec.begin() + static_cast<long>(coeffs / 2));
        std::vector<F> qc(vec.begin() + static_cast<long>(coeffs / 2), vec.end());
        consider_candidate(saturate_section(Polynomial<F>(std::move(pc)),
                                            Polynomial<F>(std::move(qc))),
                           h, report);
      }
    }
  }
}

}  // namespace detail

/// Stability of the parabolic Higgs bundle: every invariant line subbundle
/// must have parabolic degree strictly below (sum alpha)/2. Subbundles of
/// degree below -floor((sum alpha)/2) cannot reach the threshold, which
/// makes the search finite.
template <class F>
StabilityReport<F> stability_report(const HiggsData<F>& h) {
  require_exact<F>("exact mode required");
  StabilityReport<F> report;
  report.threshold = h.weights.sum() / 2;
  const int k_max =
      rational_floor(report.threshold).template convert_to<int>();
  const InvariantLines<F> inv = invariant_line_subbundles(h, k_max);
  if (inv.all_invariant) {
    detail::scan_all_subbundles(h, k_max, report);
  } else {
    for (const auto& line : inv.lines) detail::consider_candidate(line, h, report);
  }
  report.stable = !report.max_pardeg || *report.max_pardeg < report.threshold;
  report.strictly_semistable =
      !report.stable && *report.max_pardeg == report.threshold;
  return report;
}

template <class F>
bool is_stable(const HiggsData<F>& h) {
  return stability_report(h).stable;
}

}  // namespace hyperpoly
