#pragma once

// qgwave command-line front end. Exit codes: 0 success, 1 scientific failure
// (domain, convergence, no root), 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qgwave/qgwave.hpp"

namespace qgwave::cli {

enum class OutputMode { json, csv, text };

struct RunConfig {
  std::string subcommand;
  std::string profile = "couette";
  double d = 1.0;
  double beta = 0.0;
  std::optional<double> c;
  double L = 0.0;
  double beta_min = 0.0;
  double beta_max = 1.0;
  std::size_t n = 11;
  std::optional<double> tol;
  OutputMode mode = OutputMode::json;
  std::string out_path;
  bool include_vector = false;
  // classify
  std::string field_path;
  double eps_scale = 2.0;
  // example
  std::string example_name = "ex32";
  std::string beta_mode = "value";
  std::size_t nx = 256;
  std::size_t ny = 129;
  double eps = 0.1;
  InflectionWaveParams ex31;
  GrsParams grs;
  double clip_radius = 1.0;
  // planet
  std::string planet = "jupiter";
  std::optional<double> latitude;
  std::optional<double> band_degrees;
  std::string planet_case;
};

// Errors detected while interpreting a RunConfig before any computation.
class UsageError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "usage_error"; }
};

namespace detail {

inline unsigned curve_threads() {
  if (const char* env = std::getenv("QGWAVE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return 0;
}

inline ProfileOnBand make_band(const RunConfig& cfg) {
  ShearProfile profile = [&] {
    try {
      return parse_profile(cfg.profile);
    } catch (const ProfileSpecError& e) {
      throw UsageError(e.what());
    }
  }();
  if (!(cfg.d > 0.0) || !std::isfinite(cfg.d)) throw UsageError("bad geometry: --d must be positive");
  return band_extrema(profile, cfg.d);
}

inline double tol_or(const RunConfig& cfg, double fallback) { return cfg.tol.value_or(fallback); }

inline json envelope(const RunConfig& cfg, json result) {
  return {{"metadata", metadata_json()}, {"command", cfg.subcommand}, {"result", std::move(result)}};
}

// Flattens a JSON object into "key: value" lines.
inline void write_text(const json& j, std::ostream& out, const std::string& prefix = "") {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) write_text(v, out, prefix.empty() ? k : prefix + "." + k);
  } else {
    out << prefix << ": " << j.dump() << '\n';
  }
}

struct Check {
  std::string name;
  double value;
  double expected;
  double tolerance;
  bool pass;
};

inline json verify_all(double tol) {
  std::vector<Check> checks;
  auto add = [&](std::string name, double value, double expected, double tolerance) {
    checks.push_back({std::move(name), value, expected, tolerance, std::abs(value - expected) <= tolerance});
  };
  add("beta_crit couette d=1", critical_beta(band_extrema(ShearProfile::couette(), 1.0), tol), 1.8352, 2e-3);
  const std::map<std::pair<int, int>, double> table = {
      {{7, 1}, 13.2496}, {{7, 2}, 6.7922}, {{7, 3}, 4.6236}, {{8, 1}, 15.0898}, {{8, 2}, 7.7176},
      {{8, 3}, 5.2450},  {{9, 1}, 16.9289}, {{9, 2}, 8.6416}, {{9, 3}, 5.8648}};
  for (const auto& [key, expected] : table) {
    const auto [b, d] = key;
    add("beta_crit parabola b=" + std::to_string(b) + " d=" + std::to_string(d),
        critical_beta(band_extrema(ShearProfile::parabola(b, 0.0), d), tol), expected, 2e-2);
  }
  const JupiterBandReport jr = jupiter_band_case(tol);
  add("jupiter beta", jr.beta, kJupiterBetaExpected, 1.0);
  add("jupiter beta_crit", jr.beta_crit_direct, kJupiterCriticalBetaExpected, 10.0);
  const SaturnPolarReport sr = saturn_polar_case();
  add("saturn beta", sr.beta, kSaturnBetaExpected, 1.0);
  add("saturn (u0'')_min", sr.threshold, kSaturnThresholdExpected, 1.0);

  json list = json::array();
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass;
    list.push_back({{"name", c.name}, {"value", c.value}, {"expected", c.expected},
                    {"tolerance", c.tolerance}, {"pass", c.pass}});
  }
  return {{"checks", list}, {"all_pass", all}, {"saturn_rigidity_predicted", sr.rigidity_predicted},
          {"jupiter_waves_expected", jr.waves_expected}};
}

inline WaveField build_example(const RunConfig& cfg) {
  const std::string& name = cfg.example_name;
  if (name == "ex31") {
    InflectionWaveParams p = cfg.ex31;
    p.beta = cfg.beta;
    p.c = cfg.c.value_or(0.0);
    return make_inflection_wave(p, inflection_wave_grid(cfg.nx, cfg.ny));
  }
  if (name == "ex32") {
    double beta = cfg.beta;
    if (cfg.beta_mode == "beta0")
      beta = min_critical_beta0();
    else if (cfg.beta_mode == "twice-beta0")
      beta = 2.0 * min_critical_beta0();
    else if (cfg.beta_mode != "value")
      throw UsageError("unknown --beta-mode '" + cfg.beta_mode + "'");
    return make_min_critical_wave(beta, cfg.c.value_or(0.0), inflection_wave_grid(cfg.nx, cfg.ny));
  }
  if (name == "ex33") return make_kolmogorov_perturbed(cfg.eps, kolmogorov_grid(cfg.nx, cfg.ny));
  if (name == "grs") {
    const Grid2D grid(cfg.nx, cfg.ny, ChannelGeometry::centered(2.0 * cfg.d, cfg.d));
    return make_grs_vortex(cfg.grs, grid, cfg.clip_radius);
  }
  throw UsageError("unknown example '" + name + "' (expected ex31, ex32, ex33 or grs)");
}

}  // namespace detail

// Runs one subcommand. The artifact goes to `out` (or cfg.out_path); errors
// are written to `err` as a JSON object.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.tol && !(*cfg.tol > 0.0)) throw UsageError("--tol must be positive");
    if (cfg.mode == OutputMode::csv && cfg.subcommand != "curve")
      throw UsageError("--csv output is only available for the curve subcommand");

    json result;
    std::optional<std::string> csv;
    const std::string& sub = cfg.subcommand;
    if (sub == "eigen") {
      const ProfileOnBand band = detail::make_band(cfg);
      const double c = cfg.c.value_or(band.u0_min);
      const double tol = detail::tol_or(cfg, 1e-6);
      const EigenResult r =
          principal_eigenvalue(band, cfg.beta, c, {.tol = tol, .want_vector = cfg.include_vector});
      result = to_json(r, cfg.include_vector);
      result["band"] = to_json(band);
      result["beta"] = cfg.beta;
      result["c"] = c;
      result["tol"] = tol;
    } else if (sub == "critical-beta") {
      const ProfileOnBand band = detail::make_band(cfg);
      const double tol = detail::tol_or(cfg, 1e-4);
      const double beta_crit = critical_beta(band, tol);
      const EigenResult check = principal_eigenvalue(band, beta_crit, band.u0_min, {.want_vector = false});
      result = {{"band", to_json(band)}, {"beta_crit", beta_crit}, {"tol", tol},
                {"lambda1_at_beta_crit", check.lambda1}, {"est_error", check.est_error}};
    } else if (sub == "inf-c") {
      const ProfileOnBand band = detail::make_band(cfg);
      const double tol = detail::tol_or(cfg, 1e-6);
      const InfOverC r = lambda_inf_over_c(band, cfg.beta, tol);
      result = {{"band", to_json(band)}, {"beta", cfg.beta}, {"inf_value", r.inf_value},
                {"argmin_c", r.argmin_c}, {"dirichlet_limit", dirichlet_limit(band.d)}, {"tol", tol}};
    } else if (sub == "root-c") {
      const ProfileOnBand band = detail::make_band(cfg);
      if (!(cfg.L > 0.0)) throw UsageError("bad geometry: --L must be positive");
      const double tol = detail::tol_or(cfg, 1e-4);
      const double c = wave_speed_root(band, cfg.beta, cfg.L, tol);
      const double target = -std::pow(2.0 * std::numbers::pi / cfg.L, 2);
      const double lam = lambda1(band, cfg.beta, c, 0.1 * tol);
      result = {{"band", to_json(band)}, {"beta", cfg.beta}, {"L", cfg.L}, {"c_L", c},
                {"target", target}, {"residual", lam - target}, {"tol", tol}};
    } else if (sub == "curve") {
      const ProfileOnBand band = detail::make_band(cfg);
      if (cfg.n < 2 || !(cfg.beta_min < cfg.beta_max))
        throw UsageError("curve needs --n >= 2 and --beta-min < --beta-max");
      const double tol = detail::tol_or(cfg, 1e-6);
      const auto points = boundary_curve(band, cfg.beta_min, cfg.beta_max, cfg.n, tol, detail::curve_threads());
      if (cfg.mode == OutputMode::csv)
        csv = curve_csv(points);
      else
        result = {{"band", to_json(band)}, {"points", to_json(points)}, {"tol", tol}};
    } else if (sub == "classify") {
      const WaveField field = [&] {
        try {
          return read_wave_field(cfg.field_path);
        } catch (const FieldFormatError& e) {
          throw UsageError(e.what());
        }
      }();
      const ClassificationReport report = classify(field, cfg.eps_scale);
      result = {{"classification", to_json(report)}, {"rigidity", to_json(rigidity_predicates(field, cfg.eps_scale))}};
      if (cfg.tol) result["tol"] = *cfg.tol;
    } else if (sub == "example") {
      const WaveField field = [&] {
        try {
          return detail::build_example(cfg);
        } catch (const DomainError& e) {
          throw UsageError(e.what());
        }
      }();
      // The example subcommand emits a bare WaveField document.
      const std::string text = wave_field_to_json(field).dump() + "\n";
      if (cfg.out_path.empty()) {
        out << text;
      } else {
        std::ofstream f(cfg.out_path);
        if (!f) throw UsageError("cannot write output file '" + cfg.out_path + "'");
        f << text;
      }
      return 0;
    } else if (sub == "verify") {
      result = detail::verify_all(detail::tol_or(cfg, 1e-4));
    } else if (sub == "planet") {
      if (cfg.planet_case == "jupiter-38s") {
        result = to_json(jupiter_band_case(detail::tol_or(cfg, 1e-4)));
      } else if (cfg.planet_case == "saturn-polar") {
        result = to_json(saturn_polar_case());
      } else if (!cfg.planet_case.empty()) {
        throw UsageError("unknown --case '" + cfg.planet_case + "' (expected jupiter-38s or saturn-polar)");
      } else {
        const PlanetData planet = [&] {
          try {
            return planet_by_name(cfg.planet);
          } catch (const DomainError& e) {
            throw UsageError(e.what());
          }
        }();
        if (!cfg.latitude) throw UsageError("planet needs --lat or --case");
        const BetaPlane bp = beta_plane_params(planet, *cfg.latitude);
        result = {{"planet", to_json(planet)}, {"theta0_deg", *cfg.latitude}, {"f0", bp.f0}, {"beta", bp.beta}};
        if (cfg.band_degrees) result["d"] = band_halfwidth(*cfg.band_degrees);
      }
    } else {
      throw UsageError("unknown subcommand '" + sub + "'");
    }

    std::string text;
    if (csv) {
      text = *csv;
    } else if (cfg.mode == OutputMode::text) {
      std::ostringstream s;
      detail::write_text(detail::envelope(cfg, result), s);
      text = s.str();
    } else {
      text = detail::envelope(cfg, result).dump(2) + "\n";
    }
    if (cfg.out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.out_path);
      if (!f) throw UsageError("cannot write output file '" + cfg.out_path + "'");
      f << text;
    }
    if (sub == "verify" && !result.at("all_pass").get<bool>()) return 1;
    return 0;
  } catch (const UsageError& e) {
    err << json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const ConvergenceFailure& e) {
    err << json{{"error", e.kind()}, {"message", e.what()}, {"previous", e.previous()}, {"last", e.last()}}.dump()
        << "\n";
    return 1;
  } catch (const NoRootError& e) {
    err << json{{"error", e.kind()}, {"message", e.what()}, {"lambda1_at_u0min", e.lambda_at_min()},
                {"target", e.target()}}.dump()
        << "\n";
    return 1;
  } catch (const Error& e) {
    err << json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
}

// Parses argv into a RunConfig and runs it.
inline int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qgwave: Rayleigh-Kuo eigenvalues, transitional beta and traveling-wave classification"};
  app.require_subcommand(1, 1);
  RunConfig cfg;
  bool json_flag = false, csv_flag = false, text_flag = false;
  double c_value = 0.0;
  double tol_value = 0.0;
  double lat_value = 0.0, band_value = 0.0;

  auto common = [&](CLI::App* s) {
    s->add_option("--tol", tol_value, "Tolerance");
    auto* j = s->add_flag("--json", json_flag, "JSON output (default)");
    auto* t = s->add_flag("--text", text_flag, "Plain key: value output");
    j->excludes(t);
    s->add_option("--out", cfg.out_path, "Write the artifact to this path");
  };
  auto profile_opts = [&](CLI::App* s) {
    s->add_option("--profile", cfg.profile, "couette | linear:a,b | parabola:b,e | cp:gamma | bickley | kolmogorov | poly:c0,...");
    s->add_option("--d", cfg.d, "Band half-width");
  };

  auto* eigen = app.add_subcommand("eigen", "Principal eigenvalue lambda1(beta, c)");
  profile_opts(eigen);
  common(eigen);
  eigen->add_option("--beta", cfg.beta);
  eigen->add_option("--c", c_value, "Wave speed (default: min u0, the singular case)");
  eigen->add_flag("--vector", cfg.include_vector, "Include the eigenvector");

  auto* crit = app.add_subcommand("critical-beta", "Transitional beta solving lambda1(beta, min u0) = 0");
  profile_opts(crit);
  common(crit);

  auto* infc = app.add_subcommand("inf-c", "Infimum of lambda1(beta, c) over c <= min u0");
  profile_opts(infc);
  common(infc);
  infc->add_option("--beta", cfg.beta);

  auto* root = app.add_subcommand("root-c", "Wave speed with lambda1(beta, c) = -(2 pi / L)^2");
  profile_opts(root);
  common(root);
  root->add_option("--beta", cfg.beta);
  root->add_option("--L", cfg.L)->required();

  auto* curve = app.add_subcommand("curve", "Critical wavelength over a beta sweep");
  profile_opts(curve);
  common(curve);
  curve->add_flag("--csv", csv_flag, "CSV output with header beta,lambda1,L_crit");
  curve->add_option("--beta-min", cfg.beta_min)->required();
  curve->add_option("--beta-max", cfg.beta_max)->required();
  curve->add_option("--n", cfg.n);

  auto* cls = app.add_subcommand("classify", "Classify the wave speed of a WaveField JSON file");
  common(cls);
  cls->add_option("--field", cfg.field_path)->required();
  cls->add_option("--eps-scale", cfg.eps_scale);

  auto* ex = app.add_subcommand("example", "Write an analytic example field as WaveField JSON");
  common(ex);
  ex->add_option("--name", cfg.example_name, "ex31 | ex32 | ex33 | grs");
  ex->add_option("--beta-mode", cfg.beta_mode, "ex32: beta0 | twice-beta0 | value");
  ex->add_option("--beta", cfg.beta);
  ex->add_option("--c", c_value);
  ex->add_option("--nx", cfg.nx);
  ex->add_option("--ny", cfg.ny);
  ex->add_option("--eps", cfg.eps, "ex33 perturbation amplitude");
  ex->add_option("--n", cfg.ex31.n);
  ex->add_option("--k", cfg.ex31.k);
  ex->add_option("--A", cfg.ex31.A);
  ex->add_option("--A-tilde", cfg.ex31.A_tilde);
  ex->add_option("--B", cfg.ex31.B);
  ex->add_option("--xi", cfg.ex31.xi);
  ex->add_option("--grs-a", cfg.grs.a);
  ex->add_option("--grs-b", cfg.grs.b);
  ex->add_option("--grs-k", cfg.grs.k);
  ex->add_option("--clip", cfg.clip_radius);
  ex->add_option("--d", cfg.d, "grs: band half-width (channel is [0, 2d) x [-d, d])");

  auto* ver = app.add_subcommand("verify", "Reproduce the headline transitional-beta and planetary values");
  common(ver);

  auto* pl = app.add_subcommand("planet", "Beta-plane parameters and planetary worked examples");
  common(pl);
  pl->add_option("--planet", cfg.planet, "jupiter | saturn");
  pl->add_option("--lat", lat_value, "Reference latitude in degrees (south negative)");
  pl->add_option("--band", band_value, "Band width in degrees of latitude");
  pl->add_option("--case", cfg.planet_case, "jupiter-38s | saturn-polar");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << json{{"error", "usage_error"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.subcommand = chosen->get_name();
  auto given = [chosen](const char* name) {
    const CLI::Option* o = chosen->get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };
  if (given("--c")) cfg.c = c_value;
  if (given("--tol")) cfg.tol = tol_value;
  if (given("--lat")) cfg.latitude = lat_value;
  if (given("--band")) cfg.band_degrees = band_value;
  cfg.mode = csv_flag ? OutputMode::csv : text_flag ? OutputMode::text : OutputMode::json;
  return run(cfg, out, err);
}

}  // namespace qgwave::cli
