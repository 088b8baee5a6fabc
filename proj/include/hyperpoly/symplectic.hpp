#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hyperpoly/higgs.hpp"
#include "hyperpoly/hyperpolygon.hpp"

namespace hyperpoly {

/// Deformation of the Higgs data induced by a tangent vector: the motion of
/// each quasiparabolic line (v_i modulo the line, attached to the generator
/// z_i) and of each residue. When the tangent vector lies in ker d(moment)
/// the residue motions sum to zero.
template <class F>
struct HiggsDeformation {
  std::vector<Vec2<F>> line_motion;
  std::vector<Mat2<F>> residue_motion;
};

/// The tautological 1-form: sum_i y_i(v_i).
template <class F>
F liouville_one_form(const HyperpolygonPoint<F>& p, const TangentVector<F>& t) {
  if (t.n() != p.n()) throw std::invalid_argument("tangent size mismatch");
  F value(0);
  for (std::size_t i = 0; i < p.n(); ++i) value += pair(p.y[i], t.v[i]);
  return value;
}

/// The Liouville 2-form, a constant-coefficient bilinear form on tangent
/// pairs: sum_i [u_i^s(v_i^t) - u_i^t(v_i^s)].
template <class F>
F liouville_two_form(const TangentVector<F>& s, const TangentVector<F>& t) {
  if (s.n() != t.n()) throw std::invalid_argument("tangent size mismatch");
  F value(0);
  for (std::size_t i = 0; i < s.n(); ++i)
    value += pair(s.u[i], t.v[i]) - pair(t.u[i], s.v[i]);
  return value;
}

/// Pushforward of a tangent vector to a deformation of the Higgs data:
/// line_motion[i] = v_i, residue_motion[i] = v_i (x) y_i + z_i (x) u_i.
template <class F>
HiggsDeformation<F> pushforward_deformation(const HyperpolygonPoint<F>& p,
                                            const TangentVector<F>& t) {
  if (!is_in_level_set(p)) throw std::domain_error("not on moment level set");
  if (t.n() != p.n()) throw std::invalid_argument("tangent size mismatch");
  HiggsDeformation<F> d;
  d.line_motion = t.v;
  d.residue_motion.resize(p.n());
  for (std::size_t i = 0; i < p.n(); ++i)
    d.residue_motion[i] = outer(t.v[i], p.y[i]) + outer(p.z[i], t.u[i]);
  return d;
}

/// Residue trace pairing between a strongly parabolic residue R (R line = 0)
/// and a motion of its line: trace(R Vtilde) for any lift Vtilde with
/// Vtilde line = motion (mod the line). The value is lift-independent; this
/// lift is outer(motion, zeta)/zeta(line) for a covector zeta from a fixed
/// pool with zeta(line) != 0.
template <class F>
F serre_pair(const Mat2<F>& residue, const Vec2<F>& line, const Vec2<F>& motion) {
  if (line.is_zero()) throw std::domain_error("serre_pair needs a nonzero line");
  const Cov2<F> pool[3] = {{F(1), F(0)}, {F(0), F(1)}, {F(1), F(1)}};
  for (const Cov2<F>& zeta : pool) {
    const F denom = pair(zeta, line);
    if (hyperpoly::is_zero(denom, magnitude(line))) continue;
    const Mat2<F> lift = (F(1) / denom) * outer(motion, zeta);
    return (residue * lift).trace();
  }
  throw std::domain_error("serre_pair needs a nonzero line");
}

/// serre_pair evaluated through an arbitrary admissible lift: the base lift
/// through zeta (zeta(line) != 0), shifted by w (x) zeta_perp with
/// zeta_perp(line) = 0 and by shift * I. All such lifts map the line to
/// motion modulo the line, so the value must not depend on (zeta, w, shift).
template <class F>
F serre_pair_lift(const Mat2<F>& residue, const Vec2<F>& line,
                  const Vec2<F>& motion, const Cov2<F>& zeta,
                  const Vec2<F>& w, const F& shift) {
  const F denom = pair(zeta, line);
  if (hyperpoly::is_zero(denom, magnitude(zeta) * magnitude(line)))
    throw std::invalid_argument("zeta must not annihilate the line");
  const Cov2<F> zeta_perp{line.b, -line.a};
  const Mat2<F> lift = (F(1) / denom) * outer(motion, zeta) +
                       outer(w, zeta_perp) + shift * Mat2<F>::identity();
  return (residue * lift).trace();
}

/// Pullback of the Higgs-side 1-form through the correspondence: the sum of
/// residue trace pairings against the induced line motions. This path never
/// contracts y_i with v_i directly, so it is an independent evaluation of
/// the same 1-form.
template <class F>
F higgs_one_form_pullback(const HyperpolygonPoint<F>& p,
                          const TangentVector<F>& t) {
  const HiggsDeformation<F> d = pushforward_deformation(p, t);
  F value(0);
  for (std::size_t i = 0; i < p.n(); ++i) {
    const Mat2<F> residue = outer(p.z[i], p.y[i]);
    value += serre_pair(residue, p.z[i], d.line_motion[i]);
  }
  return value;
}

/// The reduced 2-form evaluated on classes of level-set tangents. Inputs
/// must lie in ker d(moment); descent makes the value well defined modulo
/// orbit directions.
template <class F>
F reduced_two_form(const HyperpolygonPoint<F>& p, const TangentVector<F>& s,
                   const TangentVector<F>& t) {
  if (!is_in_level_set(p)) throw std::domain_error("not on moment level set");
  if (!in_moment_kernel(p, s) || !in_moment_kernel(p, t))
    throw std::domain_error("not tangent to level set");
  return liouville_two_form(s, t);
}

/// Auxiliary bilinear pairing on flattened tangents (coordinatewise products,
/// no conjugation); used to pick a deterministic complement of the orbit
/// directions inside ker d(moment).
template <class F>
F aux_pairing(const TangentVector<F>& s, const TangentVector<F>& t) {
  const auto fs = flatten(s), ft = flatten(t);
  F value(0);
  for (std::size_t i = 0; i < fs.size(); ++i) value += fs[i] * ft[i];
  return value;
}

/// Basis of the aux-orthogonal complement of the orbit directions inside
/// ker d(moment).
template <class F>
std::vector<TangentVector<F>> orbit_complement(const HyperpolygonPoint<F>& p) {
  const auto tangents = tangent_basis(p);
  const auto orbits = orbit_basis(p);
  DenseMatrix<F> m(orbits.size(), tangents.size());
  for (std::size_t i = 0; i < orbits.size(); ++i)
    for (std::size_t j = 0; j < tangents.size(); ++j)
      m(i, j) = aux_pairing(orbits[i], tangents[j]);
  std::vector<TangentVector<F>> out;
  for (const auto& coeffs : nullspace(m)) {
    TangentVector<F> w = TangentVector<F>::zero(p.n());
    for (std::size_t j = 0; j < tangents.size(); ++j)
      w = w + coeffs[j] * tangents[j];
    out.push_back(std::move(w));
  }
  return out;
}

/// Gram matrix of the Liouville 2-form on the orbit complement. At stable
/// points its rank is the dimension 2(n-3) of the reduced space.
template <class F>
DenseMatrix<F> reduced_gram(const HyperpolygonPoint<F>& p) {
  const auto basis = orbit_complement(p);
  DenseMatrix<F> gram(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      gram(i, j) = liouville_two_form(basis[i], basis[j]);
  return gram;
}

// ---------------------------------------------------------------------------
// Theorem-level verification
// ---------------------------------------------------------------------------

namespace detail {

template <class F>
double residual_magnitude(const F& lhs, const F& rhs) {
  if constexpr (is_exact_v<F>) {
    return lhs == rhs ? 0.0 : 1.0;
  } else {
    const double scale = std::max({magnitude(lhs), magnitude(rhs), 1.0});
    return magnitude(lhs - rhs) / scale;
  }
}

inline std::string residual_string(double r) {
  if (r == 0.0) return "0";
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace detail

struct VerifyReport {
  std::string mode;
  int trials = 0;
  bool one_form_pass = false;
  double one_form_max_residual = 0.0;
  int descent_checks = 0;
  bool descent_pass = false;
  double descent_max_residual = 0.0;
  int two_form_checks = 0;
  bool two_form_pass = false;
  int rank_expected = 0;
  int rank_got = 0;
  bool rank_pass = false;

  bool pass() const {
    return one_form_pass && descent_pass && two_form_pass && rank_pass;
  }
};

/// Checks the pullback identity at one point: for random tangents the
/// residue-pairing evaluation of the Higgs 1-form equals the tautological
/// 1-form; for random kernel pairs the reduced 2-form matches the Liouville
/// 2-form and the orbit directions are annihilated; the reduced Gram rank
/// equals 2(n-3).
///
/// In exact mode the point must be stable for the given weights (the reduced
/// space is only defined on the stable locus); in approx mode stability is
/// not decidable and is taken on trust from genericity of the sampler.
template <class F>
VerifyReport verify_theorem1(const HyperpolygonPoint<F>& p,
                             const MarkedPoints<F>& points,
                             const WeightVector& weights, int trials,
                             Rng& rng) {
  if (!is_in_level_set(p)) throw std::domain_error("not on moment level set");
  if constexpr (is_exact_v<F>) {
    if (!is_stable(to_higgs(p, points, weights)))
      throw std::domain_error("stable locus required");
  }
  VerifyReport report;
  report.mode = field_traits<F>::mode_name;
  report.trials = trials;

  const auto tangents = tangent_basis(p);
  const auto orbits = orbit_basis(p);

  double max_residual = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const TangentVector<F> t = random_combination(tangents, rng);
    max_residual = std::max(
        max_residual,
        detail::residual_magnitude(higgs_one_form_pullback(p, t),
                                   liouville_one_form(p, t)));
  }
  report.one_form_max_residual = max_residual;
  report.one_form_pass =
      is_exact_v<F> ? max_residual == 0.0 : max_residual <= 1e-10;

  const int pair_checks = std::max(1, trials / 10);
  double descent_residual = 0.0;
  bool two_form_ok = true;
  for (int check = 0; check < pair_checks; ++check) {
    const TangentVector<F> s = random_combination(tangents, rng);
    const TangentVector<F> t = random_combination(tangents, rng);
    two_form_ok =
        two_form_ok && detail::residual_magnitude(reduced_two_form(p, s, t),
                                                  liouville_two_form(s, t)) == 0.0;
    for (const auto& orbit : orbits) {
      const F value = liouville_two_form(orbit, t);
      if constexpr (is_exact_v<F>) {
        descent_residual = std::max(descent_residual,
                                    value == F(0) ? 0.0 : 1.0);
      } else {
        double scale = 0.0;
        for (std::size_t i = 0; i < t.n(); ++i)
          scale += magnitude(orbit.u[i]) * magnitude(t.v[i]) +
                   magnitude(t.u[i]) * magnitude(orbit.v[i]);
        descent_residual =
            std::max(descent_residual, magnitude(value) / std::max(scale, 1.0));
      }
    }
  }
  report.descent_checks = pair_checks * static_cast<int>(orbits.size());
  report.descent_max_residual = descent_residual;
  report.descent_pass =
      is_exact_v<F> ? descent_residual == 0.0 : descent_residual <= 1e-10;
  report.two_form_checks = pair_checks;
  report.two_form_pass = two_form_ok;

  const std::size_t n = p.n();
  report.rank_expected = static_cast<int>(2 * (n - 3));
  report.rank_got = static_cast<int>(rank(reduced_gram(p)));
  report.rank_pass = report.rank_expected == report.rank_got;
  return report;
}

}  // namespace hyperpoly
