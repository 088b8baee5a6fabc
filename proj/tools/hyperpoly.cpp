// Command-line front end: sampling points of the moment-map level set,
// checking and mapping them to parabolic Higgs data, verifying the symplectic
// correspondence, and scanning weight space for stability.
//
// Machine-readable JSON/CSV goes to stdout, human text to stderr.
// Exit codes: 0 ok, 1 verification failure, 2 sampling/precondition failure,
// 3 malformed input or configuration, 4 scalar-mode conflict.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperpoly/hyperpoly.hpp"

namespace {

using namespace hyperpoly;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitBadInput = 3;
constexpr int kExitModeConflict = 4;

struct Options {
  std::size_t n = 4;
  std::vector<std::string> alpha;
  std::vector<std::string> points;
  std::string mode;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int trials = 100;
  int grid = 1;
  double perturb = 0.0;
  bool no_stability = false;
  std::string input_file;
};

std::vector<std::string> split_commas(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& tok : raw) {
    std::stringstream ss(tok);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) out.push_back(part);
  }
  return out;
}

WeightVector resolve_weights(const Options& opt, std::size_t n) {
  const auto tokens = split_commas(opt.alpha);
  if (tokens.empty()) return WeightVector::uniform(n, Rational(1, 3));
  if (tokens.size() != n)
    throw std::invalid_argument("--alpha needs exactly n values");
  std::vector<Rational> values;
  for (const auto& t : tokens) values.push_back(parse_rational(t));
  return WeightVector(std::move(values));
}

template <class F>
MarkedPoints<F> resolve_points(const Options& opt, std::size_t n) {
  const auto tokens = split_commas(opt.points);
  if (tokens.empty()) return MarkedPoints<F>::consecutive(n);
  if (tokens.size() != n)
    throw std::invalid_argument("--points needs exactly n values");
  std::vector<F> values;
  for (const auto& t : tokens) {
    const Rational r = parse_rational(t);
    if constexpr (is_exact_v<F>) {
      values.push_back(GaussianRational{r});
    } else {
      values.push_back(Complex(static_cast<double>(r), 0.0));
    }
  }
  return MarkedPoints<F>(std::move(values));
}

Json read_json_input(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(path);
    if (!in) throw JsonError("cannot read input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw JsonError(std::string("malformed JSON: ") + e.what());
  }
}

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

// ---------------------------------------------------------------------------
// sample
// ---------------------------------------------------------------------------

template <class F>
int run_sample(const Options& opt) {
  Rng rng(opt.seed);
  const auto p = sample_level_set<F>(opt.n, rng);
  emit(point_to_json(p));
  return 0;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

template <class F>
int run_check(const Options& opt) {
  const Json input = read_json_input(opt.input_file);
  const auto p = point_from_json<F>(input);
  const std::size_t n = p.n();
  const auto weights = resolve_weights(opt, n);
  const auto points = resolve_points<F>(opt, n);

  Json report;
  report["mode"] = field_traits<F>::mode_name;
  report["n"] = n;
  const bool on_level_set = is_in_level_set(p);
  report["level_set"] = on_level_set;

  // Parabolicity is a statement about the residues z_i (x) y_i and holds
  // whenever the pairings vanish, so it is reported even off the level set.
  {
    std::vector<Mat2<F>> residues(n);
    for (std::size_t i = 0; i < n; ++i) residues[i] = outer(p.z[i], p.y[i]);
    HiggsData<F> raw{points, weights, p.z, residues};
    report["strong_parabolicity"] = check_strong_parabolicity(raw);
  }

  if (!on_level_set) {
    report["stable"] = nullptr;
    report["strictly_semistable"] = nullptr;
    emit(report);
    return 0;
  }

  if (opt.no_stability) {
    report["stable"] = nullptr;
    report["strictly_semistable"] = nullptr;
  } else {
    if constexpr (!is_exact_v<F>)
      throw ModeError("stability verdicts require exact mode");
    const auto h = to_higgs(p, points, weights);
    const auto stab = stability_report(h);
    report["stable"] = stab.stable;
    report["strictly_semistable"] = stab.strictly_semistable;
    report["threshold"] = format_rational(stab.threshold);
    if (stab.max_pardeg)
      report["max_pardeg"] = format_rational(*stab.max_pardeg);
  }
  emit(report);
  return 0;
}

// ---------------------------------------------------------------------------
// map
// ---------------------------------------------------------------------------

template <class F>
int run_map(const Options& opt) {
  const Json input = read_json_input(opt.input_file);
  const auto p = point_from_json<F>(input);
  const auto weights = resolve_weights(opt, p.n());
  const auto points = resolve_points<F>(opt, p.n());
  const auto h = to_higgs(p, points, weights);  // throws off the level set
  Json out = higgs_to_json(h);
  if constexpr (is_exact_v<F>) out["det"] = det_to_json(det_rational(h));
  emit(out);
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

template <class F>
HyperpolygonPoint<F> sample_stable(std::size_t n, const MarkedPoints<F>& points,
                                   const WeightVector& weights, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto p = sample_level_set<F>(n, rng);
    if constexpr (is_exact_v<F>) {
      if (!is_stable(to_higgs(p, points, weights))) continue;
    }
    return p;
  }
  throw SampleError("sampling failed");
}

template <class F>
int run_verify(const Options& opt) {
  Rng rng(opt.seed);
  const auto weights = resolve_weights(opt, opt.n);
  const auto points = resolve_points<F>(opt, opt.n);
  std::vector<std::string> failed;
  Json report;
  report["mode"] = field_traits<F>::mode_name;
  report["n"] = opt.n;
  report["seed"] = opt.seed;

  // Level-set membership of sampled points; --perturb knocks the first
  // sample off the level set to exercise the failure path.
  constexpr int kSamples = 10;
  std::vector<HyperpolygonPoint<F>> samples;
  for (int i = 0; i < kSamples; ++i)
    samples.push_back(sample_level_set<F>(opt.n, rng));
  if (opt.perturb != 0.0) {
    auto& y0 = samples[0].y[0];
    if constexpr (is_exact_v<F>) {
      y0.a += GaussianRational{Rational(opt.perturb)};
    } else {
      y0.a += Complex(opt.perturb, 0.0);
    }
  }
  {
    int pass_count = 0;
    for (const auto& p : samples) pass_count += is_in_level_set(p) ? 1 : 0;
    report["level_set"] = {{"samples", kSamples}, {"pass", pass_count == kSamples}};
    if (pass_count != kSamples) failed.push_back("level-set");
  }

  // Construction invariants of the Higgs data.
  {
    bool ok = true;
    for (const auto& p : samples) {
      if (!is_in_level_set(p)) continue;  // already reported above
      const auto h = to_higgs(p, points, weights);
      ok = ok && residues_sum_zero(h) && check_strong_parabolicity(h);
    }
    report["higgs"] = {{"pass", ok}};
    if (!ok) failed.push_back("higgs-invariants");
  }

  const auto p = sample_stable<F>(opt.n, points, weights, rng);
  const auto theorem = verify_theorem1(p, points, weights, opt.trials, rng);
  report["theorem1"] = {
      {"trials", theorem.trials},
      {"max_residual", detail::residual_string(theorem.one_form_max_residual)},
      {"pass", theorem.one_form_pass}};
  report["descent"] = {
      {"checks", theorem.descent_checks},
      {"max_residual", detail::residual_string(theorem.descent_max_residual)},
      {"pass", theorem.descent_pass}};
  report["two_form"] = {{"checks", theorem.two_form_checks},
                        {"pass", theorem.two_form_pass}};
  report["rank"] = {{"expected", theorem.rank_expected},
                    {"got", theorem.rank_got}};
  if (!theorem.one_form_pass) failed.push_back("theorem1");
  if (!theorem.descent_pass) failed.push_back("descent");
  if (!theorem.two_form_pass) failed.push_back("two-form");
  if (!theorem.rank_pass) failed.push_back("rank");

  // Lift independence of the residue trace pairing.
  {
    const auto basis = tangent_basis(p);
    bool ok = true;
    for (int instance = 0; instance < 25 && ok; ++instance) {
      const auto t = random_combination(basis, rng);
      const std::size_t i =
          static_cast<std::size_t>(rng.int_range(0, static_cast<std::int64_t>(p.n()) - 1));
      const Mat2<F> residue = outer(p.z[i], p.y[i]);
      const F reference = serre_pair(residue, p.z[i], t.v[i]);
      for (int lift = 0; lift < 25 && ok; ++lift) {
        Cov2<F> zeta{detail::random_entry<F>(rng), detail::random_entry<F>(rng)};
        if (hyperpoly::is_zero(pair(zeta, p.z[i]),
                               magnitude(zeta) * magnitude(p.z[i]) + 1.0))
          continue;
        const Vec2<F> w{detail::random_entry<F>(rng), detail::random_entry<F>(rng)};
        const F value = serre_pair_lift(residue, p.z[i], t.v[i], zeta, w,
                                        detail::random_entry<F>(rng));
        ok = ok && detail::residual_magnitude(value, reference) <=
                       (is_exact_v<F> ? 0.0 : 1e-10);
      }
    }
    report["lift_independence"] = {{"pass", ok}};
    if (!ok) failed.push_back("lift-independence");
  }

  // Equivariance and invariance under the group action.
  {
    const auto basis = tangent_basis(p);
    bool ok = true;
    const bool base_stable = [&] {
      if constexpr (is_exact_v<F>)
        return is_stable(to_higgs(p, points, weights));
      else
        return false;
    }();
    for (int round = 0; round < 20 && ok; ++round) {
      const auto g = random_group_element<F>(p.n(), rng);
      const auto gp = act(g, p);
      ok = ok && is_in_level_set(gp);
      const auto s = random_combination(basis, rng);
      const auto t = random_combination(basis, rng);
      ok = ok && detail::residual_magnitude(
                     liouville_two_form(act_tangent(g, s), act_tangent(g, t)),
                     liouville_two_form(s, t)) <=
                     (is_exact_v<F> ? 0.0 : 1e-10);
      if constexpr (is_exact_v<F>)
        ok = ok && is_stable(to_higgs(gp, points, weights)) == base_stable;
    }
    report["g_invariance"] = {{"pass", ok}};
    if (!ok) failed.push_back("g-invariance");
  }

  // Dimension counts at the stable point.
  {
    const std::size_t n = opt.n;
    const std::size_t tangent_dim = tangent_basis(p).size();
    const std::size_t orbit_rank = rank(rows_matrix(orbit_basis(p)));
    const bool ok = tangent_dim == 3 * n - 3 && orbit_rank == n + 3;
    report["dimensions"] = {{"tangent", tangent_dim},
                            {"tangent_expected", 3 * n - 3},
                            {"orbit", orbit_rank},
                            {"orbit_expected", n + 3},
                            {"pass", ok}};
    if (!ok) failed.push_back("dimensions");
  }

  report["failed"] = failed;
  report["pass"] = failed.empty();
  emit(report);
  if (!failed.empty()) {
    std::cerr << "verification failed:";
    for (const auto& name : failed) std::cerr << " " << name;
    std::cerr << "\n";
    return kExitVerifyFailed;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

template <class F>
int run_scan(const Options& opt) {
  require_exact<F>("exact mode required");
  if (opt.grid < 1) throw std::invalid_argument("--grid must be >= 1");
  const std::size_t n = opt.n;
  const auto points = resolve_points<F>(opt, n);

  std::cout << "alpha1";
  for (std::size_t i = 1; i < n; ++i) std::cout << ",alpha" << i + 1;
  std::cout << ",samples,stable_count\n";

  std::vector<int> index(n, 1);
  std::uint64_t cell = 0;
  while (true) {
    std::vector<Rational> alpha(n);
    for (std::size_t i = 0; i < n; ++i)
      alpha[i] = Rational(index[i], opt.grid + 1);
    const WeightVector weights{alpha};

    // Independent stream per cell: canonical output order regardless of
    // any internal parallelism.
    Rng rng(opt.seed + 0x9e3779b97f4a7c15ULL * (cell + 1));
    int stable_count = 0;
    for (int s = 0; s < opt.trials; ++s) {
      const auto p = sample_level_set<F>(n, rng);
      if (is_stable(to_higgs(p, points, weights))) ++stable_count;
    }
    std::cout << format_rational(alpha[0]);
    for (std::size_t i = 1; i < n; ++i)
      std::cout << "," << format_rational(alpha[i]);
    std::cout << "," << opt.trials << "," << stable_count << "\n";

    std::size_t pos = 0;
    while (pos < n && ++index[pos] > opt.grid) index[pos++] = 1;
    if (pos == n) break;
    ++cell;
  }
  return 0;
}

// ---------------------------------------------------------------------------

template <class FExact, class FApprox, class Fn>
int dispatch(const std::string& mode, Fn&& fn) {
  if (mode == "exact") return fn.template operator()<FExact>();
  if (mode == "approx") return fn.template operator()<FApprox>();
  throw std::invalid_argument("--mode must be exact or approx");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperpolygon spaces and parabolic Higgs bundles on P^1"};
  app.require_subcommand(1);

  Options opt;
  const char* env_mode = std::getenv("HYPERPOLY_MODE");
  opt.mode = env_mode ? env_mode : "exact";

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--n", opt.n, "number of marked points");
    cmd->add_option("--alpha", opt.alpha,
                    "parabolic weights, rationals like 1/3 (comma separated or repeated)");
    cmd->add_option("--points", opt.points,
                    "marked points (comma separated or repeated)");
    cmd->add_option("--mode", opt.mode, "scalar mode: exact | approx");
    cmd->add_option("--seed", opt.seed, "random seed");
    cmd->add_option("--tol", opt.tol, "tolerance for approx-mode zero tests");
    cmd->add_option("--trials", opt.trials, "trials per randomized suite");
  };

  CLI::App* sample = app.add_subcommand("sample", "draw a level-set point (JSON to stdout)");
  add_common(sample);

  CLI::App* check = app.add_subcommand("check", "report membership, parabolicity, stability");
  add_common(check);
  check->add_option("point", opt.input_file, "point JSON file ('-' for stdin)")->required();
  check->add_flag("--no-stability", opt.no_stability,
                  "skip the stability verdict (allows approx mode)");

  CLI::App* map = app.add_subcommand("map", "map a level-set point to Higgs data (JSON)");
  add_common(map);
  map->add_option("point", opt.input_file, "point JSON file ('-' for stdin)")->required();

  CLI::App* verify = app.add_subcommand("verify", "run the symplectic verification suites");
  add_common(verify);
  verify->add_option("--perturb", opt.perturb,
                     "perturb one covector off the level set (fault injection)");

  CLI::App* scan = app.add_subcommand("scan", "stable fraction over a weight grid (CSV)");
  add_common(scan);
  scan->add_option("--grid", opt.grid, "grid points per weight axis");

  CLI11_PARSE(app, argc, argv);

  try {
    set_tolerance(opt.tol);
    auto run = [&]<class F>() -> int {
      if (sample->parsed()) return run_sample<F>(opt);
      if (check->parsed()) return run_check<F>(opt);
      if (map->parsed()) return run_map<F>(opt);
      if (verify->parsed()) return run_verify<F>(opt);
      if (scan->parsed()) return run_scan<F>(opt);
      return kExitBadInput;
    };
    return dispatch<GaussianRational, Complex>(opt.mode, run);
  } catch (const ModeError& e) {
    std::cerr << "mode conflict: " << e.what() << "\n";
    return kExitModeConflict;
  } catch (const JsonError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const SampleError& e) {
    std::cerr << "sampling error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::domain_error& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}
