#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hyperpoly/higgs.hpp"
#include "hyperpoly/hyperpolygon.hpp"
#include "hyperpoly/symplectic.hpp"

namespace hyperpoly {

// Keys are emitted in insertion order so outputs are byte-stable; exact
// scalars are written as canonical "p/q" strings and round-trip bit-exactly.
using Json = nlohmann::ordered_json;

struct JsonError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

template <class F>
Json scalar_to_json(const F& value) {
  if constexpr (is_exact_v<F>) {
    return Json::array({format_rational(value.re), format_rational(value.im)});
  } else {
    return Json::array({value.real(), value.imag()});
  }
}

template <class F>
F scalar_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw JsonError("expected [re, im] pair");
  if constexpr (is_exact_v<F>) {
    if (!j[0].is_string() || !j[1].is_string())
      throw JsonError("exact scalars must be \"p/q\" strings");
    return GaussianRational{parse_rational(j[0].get<std::string>()),
                            parse_rational(j[1].get<std::string>())};
  } else {
    if (!j[0].is_number() || !j[1].is_number())
      throw JsonError("approx scalars must be numbers");
    return Complex(j[0].get<double>(), j[1].get<double>());
  }
}

template <class F>
Json vec2_to_json(const Vec2<F>& v) {
  return Json::array({scalar_to_json(v.a), scalar_to_json(v.b)});
}
template <class F>
Json cov2_to_json(const Cov2<F>& v) {
  return Json::array({scalar_to_json(v.a), scalar_to_json(v.b)});
}
template <class F>
Vec2<F> vec2_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw JsonError("expected 2 components");
  return {scalar_from_json<F>(j[0]), scalar_from_json<F>(j[1])};
}
template <class F>
Cov2<F> cov2_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw JsonError("expected 2 components");
  return {scalar_from_json<F>(j[0]), scalar_from_json<F>(j[1])};
}

/// Row-major [m00, m01, m10, m11].
template <class F>
Json mat2_to_json(const Mat2<F>& m) {
  return Json::array({scalar_to_json(m.m00), scalar_to_json(m.m01),
                      scalar_to_json(m.m10), scalar_to_json(m.m11)});
}
template <class F>
Mat2<F> mat2_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw JsonError("expected 4 entries");
  return {scalar_from_json<F>(j[0]), scalar_from_json<F>(j[1]),
          scalar_from_json<F>(j[2]), scalar_from_json<F>(j[3])};
}

// ---------------------------------------------------------------------------
// Hyperpolygon points
// ---------------------------------------------------------------------------

template <class F>
Json point_to_json(const HyperpolygonPoint<F>& p) {
  Json j;
  j["n"] = p.n();
  j["mode"] = field_traits<F>::mode_name;
  Json z = Json::array(), y = Json::array();
  for (const auto& zi : p.z) z.push_back(vec2_to_json(zi));
  for (const auto& yi : p.y) y.push_back(cov2_to_json(yi));
  j["z"] = std::move(z);
  j["y"] = std::move(y);
  return j;
}

inline std::string point_mode(const Json& j) {
  if (!j.is_object() || !j.contains("mode") || !j["mode"].is_string())
    throw JsonError("point JSON needs a \"mode\" field");
  return j["mode"].get<std::string>();
}

template <class F>
HyperpolygonPoint<F> point_from_json(const Json& j) {
  if (point_mode(j) != field_traits<F>::mode_name)
    throw JsonError("point mode does not match the requested scalar mode");
  if (!j.contains("n") || !j.contains("z") || !j.contains("y"))
    throw JsonError("point JSON needs n, z, y");
  const auto n = j["n"].get<std::size_t>();
  if (!j["z"].is_array() || !j["y"].is_array() || j["z"].size() != n ||
      j["y"].size() != n)
    throw JsonError("point JSON has inconsistent sizes");
  std::vector<Vec2<F>> z;
  std::vector<Cov2<F>> y;
  for (const auto& e : j["z"]) z.push_back(vec2_from_json<F>(e));
  for (const auto& e : j["y"]) y.push_back(cov2_from_json<F>(e));
  try {
    return {std::move(y), std::move(z)};
  } catch (const std::invalid_argument& err) {
    throw JsonError(err.what());
  }
}

// ---------------------------------------------------------------------------
// Higgs data
// ---------------------------------------------------------------------------

template <class F>
Json higgs_to_json(const HiggsData<F>& h) {
  Json j;
  Json points = Json::array();
  for (const auto& x : h.points.x) points.push_back(scalar_to_json(x));
  j["points"] = std::move(points);
  Json alpha = Json::array();
  for (const auto& a : h.weights.values()) alpha.push_back(format_rational(a));
  j["alpha"] = std::move(alpha);
  j["mode"] = field_traits<F>::mode_name;
  Json lines = Json::array();
  for (const auto& line : h.lines) lines.push_back(vec2_to_json(line));
  j["lines"] = std::move(lines);
  Json residues = Json::array();
  for (const auto& r : h.residues) residues.push_back(mat2_to_json(r));
  j["residues"] = std::move(residues);
  return j;
}

template <class F>
HiggsData<F> higgs_from_json(const Json& j) {
  for (const char* key : {"points", "alpha", "lines", "residues"})
    if (!j.contains(key)) throw JsonError("Higgs JSON missing field");
  std::vector<F> pts;
  for (const auto& e : j["points"]) pts.push_back(scalar_from_json<F>(e));
  std::vector<Rational> alpha;
  for (const auto& e : j["alpha"])
    alpha.push_back(parse_rational(e.get<std::string>()));
  std::vector<Vec2<F>> lines;
  for (const auto& e : j["lines"]) lines.push_back(vec2_from_json<F>(e));
  std::vector<Mat2<F>> residues;
  for (const auto& e : j["residues"]) residues.push_back(mat2_from_json<F>(e));
  try {
    return {MarkedPoints<F>(std::move(pts)), WeightVector(std::move(alpha)),
            std::move(lines), std::move(residues)};
  } catch (const std::invalid_argument& err) {
    throw JsonError(err.what());
  }
}

/// Coefficient lists (lowest degree first) of the reduced determinant.
template <class F>
Json det_to_json(const RationalFunction<F>& det) {
  Json j;
  Json num = Json::array(), den = Json::array();
  for (const auto& c : det.num().coeffs()) num.push_back(scalar_to_json(c));
  for (const auto& c : det.den().coeffs()) den.push_back(scalar_to_json(c));
  j["num"] = std::move(num);
  j["den"] = std::move(den);
  return j;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline Json verify_report_to_json(const VerifyReport& r) {
  Json j;
  j["theorem1"] = {
      {"trials", r.trials},
      {"max_residual", detail::residual_string(r.one_form_max_residual)},
      {"pass", r.one_form_pass}};
  j["descent"] = {
      {"checks", r.descent_checks},
      {"max_residual", detail::residual_string(r.descent_max_residual)},
      {"pass", r.descent_pass}};
  j["two_form"] = {{"checks", r.two_form_checks}, {"pass", r.two_form_pass}};
  j["rank"] = {{"expected", r.rank_expected}, {"got", r.rank_got}};
  j["mode"] = r.mode;
  j["pass"] = r.pass();
  return j;
}

}  // namespace hyperpoly
