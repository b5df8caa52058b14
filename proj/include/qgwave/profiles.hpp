#pragma once

// Closed-form zonal shear profiles u0(y) and their extrema over a band.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qgwave/errors.hpp"
#include "qgwave/golden.hpp"

namespace qgwave {

struct ProfileValues {
  double u0;
  double du;   // u0'
  double d2u;  // u0''
};

namespace shear {

// u0 = a y + b
struct Linear {
  double a = 1.0;
  double b = 0.0;
};
// u0 = y
struct Couette {};
// u0 = -y^2 + b y + e
struct ConcaveParabola {
  double b = 0.0;
  double e = 0.0;
};
// u0 = gamma y + (1 - gamma) y^2
struct CouettePoiseuille {
  double gamma = 0.0;
};
// u0 = -sech^2(y)
struct Bickley {};
// u0 = sin(y)
struct Kolmogorov {};
// u0 = sum_k coeffs[k] y^k
struct Polynomial {
  std::vector<double> coeffs;
};

}  // namespace shear

// Error raised for malformed --profile strings.
class ProfileSpecError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "profile_spec_error"; }
};

class ShearProfile {
 public:
  using Form = std::variant<shear::Linear, shear::Couette, shear::ConcaveParabola, shear::CouettePoiseuille,
                            shear::Bickley, shear::Kolmogorov, shear::Polynomial>;

  ShearProfile(Form form, double amplitude = 1.0) : form_(std::move(form)), amplitude_(amplitude) {}

  static ShearProfile couette() { return ShearProfile(shear::Couette{}); }
  static ShearProfile linear(double a, double b) { return ShearProfile(shear::Linear{a, b}); }
  static ShearProfile parabola(double b, double e) { return ShearProfile(shear::ConcaveParabola{b, e}); }
  static ShearProfile couette_poiseuille(double gamma) { return ShearProfile(shear::CouettePoiseuille{gamma}); }
  static ShearProfile bickley() { return ShearProfile(shear::Bickley{}); }
  static ShearProfile kolmogorov() { return ShearProfile(shear::Kolmogorov{}); }
  static ShearProfile polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw DomainError("polynomial profile needs at least one coefficient");
    return ShearProfile(shear::Polynomial{std::move(coeffs)});
  }

  const Form& form() const noexcept { return form_; }
  double amplitude() const noexcept { return amplitude_; }

  // The profile a * u0.
  ShearProfile scaled(double a) const { return ShearProfile(form_, amplitude_ * a); }

  ProfileValues eval(double y) const {
    ProfileValues r = std::visit([y](const auto& f) { return eval_form(f, y); }, form_);
    return {amplitude_ * r.u0, amplitude_ * r.du, amplitude_ * r.d2u};
  }
  double operator()(double y) const { return eval(y).u0; }

  // Zeros of u0' inside [lo, hi] when known in closed form.
  std::optional<std::vector<double>> critical_points(double lo, double hi) const {
    return std::visit([&](const auto& f) { return critical_points_form(f, lo, hi); }, form_);
  }

  // Zeros of u0''' inside [lo, hi] when known in closed form.
  std::optional<std::vector<double>> curvature_critical_points(double lo, double hi) const {
    return std::visit([&](const auto& f) { return curvature_points_form(f, lo, hi); }, form_);
  }

  // True when monotonicity on [-d, d] is settled by a closed-form argument.
  bool has_analytic_slope() const noexcept {
    return std::holds_alternative<shear::Linear>(form_) || std::holds_alternative<shear::Couette>(form_) ||
           std::holds_alternative<shear::ConcaveParabola>(form_) ||
           std::holds_alternative<shear::CouettePoiseuille>(form_);
  }

  // Canonical spec string (the --profile grammar), prefixed by the amplitude
  // when the profile has been scaled.
  std::string spec() const {
    std::string s = std::visit([](const auto& f) { return spec_form(f); }, form_);
    if (amplitude_ != 1.0) s = format_number(amplitude_) + "*" + s;
    return s;
  }

  static std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }

 private:
  static ProfileValues eval_form(const shear::Linear& f, double y) { return {f.a * y + f.b, f.a, 0.0}; }
  static ProfileValues eval_form(const shear::Couette&, double y) { return {y, 1.0, 0.0}; }
  static ProfileValues eval_form(const shear::ConcaveParabola& f, double y) {
    return {-y * y + f.b * y + f.e, -2.0 * y + f.b, -2.0};
  }
  static ProfileValues eval_form(const shear::CouettePoiseuille& f, double y) {
    return {f.gamma * y + (1.0 - f.gamma) * y * y, f.gamma + 2.0 * (1.0 - f.gamma) * y, 2.0 - 2.0 * f.gamma};
  }
  static ProfileValues eval_form(const shear::Bickley&, double y) {
    const double s = 1.0 / std::cosh(y);
    const double t = std::tanh(y);
    const double s2 = s * s;
    return {-s2, 2.0 * s2 * t, 2.0 * s2 * s2 - 4.0 * s2 * t * t};
  }
  static ProfileValues eval_form(const shear::Kolmogorov&, double y) { return {std::sin(y), std::cos(y), -std::sin(y)}; }
  static ProfileValues eval_form(const shear::Polynomial& f, double y) {
    double p = 0.0, dp = 0.0, d2p = 0.0;
    for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) {
      d2p = d2p * y + 2.0 * dp;
      dp = dp * y + p;
      p = p * y + *it;
    }
    return {p, dp, d2p};
  }

  using Points = std::optional<std::vector<double>>;
  static std::vector<double> inside(std::initializer_list<double> ys, double lo, double hi) {
    std::vector<double> out;
    for (double y : ys)
      if (y > lo && y < hi) out.push_back(y);
    return out;
  }
  static std::vector<double> periodic_inside(double phase, double lo, double hi) {
    std::vector<double> out;
    const double pi = std::numbers::pi;
    for (double y = phase + pi * std::ceil((lo - phase) / pi); y < hi; y += pi)
      if (y > lo) out.push_back(y);
    return out;
  }

  static Points critical_points_form(const shear::Linear& f, double, double) {
    if (f.a == 0.0) return std::nullopt;
    return std::vector<double>{};
  }
  static Points critical_points_form(const shear::Couette&, double, double) { return std::vector<double>{}; }
  static Points critical_points_form(const shear::ConcaveParabola& f, double lo, double hi) {
    return inside({0.5 * f.b}, lo, hi);
  }
  static Points critical_points_form(const shear::CouettePoiseuille& f, double lo, double hi) {
    if (f.gamma == 1.0) return std::vector<double>{};
    return inside({-f.gamma / (2.0 * (1.0 - f.gamma))}, lo, hi);
  }
  static Points critical_points_form(const shear::Bickley&, double lo, double hi) { return inside({0.0}, lo, hi); }
  static Points critical_points_form(const shear::Kolmogorov&, double lo, double hi) {
    return periodic_inside(0.5 * std::numbers::pi, lo, hi);
  }
  static Points critical_points_form(const shear::Polynomial&, double, double) { return std::nullopt; }

  static Points curvature_points_form(const shear::Linear&, double, double) { return std::vector<double>{}; }
  static Points curvature_points_form(const shear::Couette&, double, double) { return std::vector<double>{}; }
  static Points curvature_points_form(const shear::ConcaveParabola&, double, double) { return std::vector<double>{}; }
  static Points curvature_points_form(const shear::CouettePoiseuille&, double, double) {
    return std::vector<double>{};
  }
  static Points curvature_points_form(const shear::Bickley&, double lo, double hi) {
    // u0'' = 2(1 - 4t^2 + 3t^4) with t = tanh y; stationary at t = 0 and t^2 = 2/3.
    const double y1 = std::atanh(std::sqrt(2.0 / 3.0));
    return inside({-y1, 0.0, y1}, lo, hi);
  }
  static Points curvature_points_form(const shear::Kolmogorov&, double lo, double hi) {
    return periodic_inside(0.5 * std::numbers::pi, lo, hi);
  }
  static Points curvature_points_form(const shear::Polynomial&, double, double) { return std::nullopt; }

  static std::string spec_form(const shear::Linear& f) {
    return "linear:" + format_number(f.a) + "," + format_number(f.b);
  }
  static std::string spec_form(const shear::Couette&) { return "couette"; }
  static std::string spec_form(const shear::ConcaveParabola& f) {
    return "parabola:" + format_number(f.b) + "," + format_number(f.e);
  }
  static std::string spec_form(const shear::CouettePoiseuille& f) { return "cp:" + format_number(f.gamma); }
  static std::string spec_form(const shear::Bickley&) { return "bickley"; }
  static std::string spec_form(const shear::Kolmogorov&) { return "kolmogorov"; }
  static std::string spec_form(const shear::Polynomial& f) {
    std::string s = "poly:";
    for (std::size_t k = 0; k < f.coeffs.size(); ++k) s += (k ? "," : "") + format_number(f.coeffs[k]);
    return s;
  }

  Form form_;
  double amplitude_ = 1.0;
};

namespace detail {

inline std::vector<double> parse_numbers(std::string_view text, std::string_view spec) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    const std::string token(text.substr(0, comma));
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (token.empty() || end != token.c_str() + token.size() || !std::isfinite(v))
      throw ProfileSpecError("unknown profile spec '" + std::string(spec) + "': bad number '" + token + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace detail

// Parses couette | linear:a,b | parabola:b,e | cp:gamma | bickley |
// kolmogorov | poly:c0,c1,...
inline ShearProfile parse_profile(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  auto numbers = [&](std::size_t expected) {
    if (colon == std::string_view::npos)
      throw ProfileSpecError("unknown profile spec '" + std::string(spec) + "': missing parameters");
    auto v = detail::parse_numbers(args, spec);
    if (expected != 0 && v.size() != expected)
      throw ProfileSpecError("unknown profile spec '" + std::string(spec) + "': expected " +
                             std::to_string(expected) + " parameters");
    return v;
  };
  auto bare = [&] {
    if (colon != std::string_view::npos)
      throw ProfileSpecError("unknown profile spec '" + std::string(spec) + "': takes no parameters");
  };
  if (name == "couette") return bare(), ShearProfile::couette();
  if (name == "bickley") return bare(), ShearProfile::bickley();
  if (name == "kolmogorov") return bare(), ShearProfile::kolmogorov();
  if (name == "linear") {
    const auto v = numbers(2);
    return ShearProfile::linear(v[0], v[1]);
  }
  if (name == "parabola") {
    const auto v = numbers(2);
    return ShearProfile::parabola(v[0], v[1]);
  }
  if (name == "cp") return ShearProfile::couette_poiseuille(numbers(1)[0]);
  if (name == "poly") return ShearProfile::polynomial(numbers(0));
  throw ProfileSpecError("unknown profile spec '" + std::string(spec) + "'");
}

enum class Orientation { decreasing = -1, none = 0, increasing = 1 };

// A profile restricted to [-d, d] with its certified extrema.
struct ProfileOnBand {
  ShearProfile profile;
  double d = 1.0;
  double u0_min = 0.0;
  double u0_max = 0.0;
  double d2u_min = 0.0;  // (u0'')_min
  double d2u_max = 0.0;  // (u0'')_max
  double min_abs_slope = 0.0;
  bool monotone = false;
  Orientation orientation = Orientation::none;
};

namespace detail {

inline constexpr int kScanPoints = 4097;
inline constexpr double kRefineTol = 1e-12;

struct Extremes {
  double min;
  double max;
};

// Extremes of g on [lo, hi] from a uniform scan refined by golden section
// around the best samples.
template <class G>
Extremes scan_extremes(G&& g, double lo, double hi) {
  const double h = (hi - lo) / (kScanPoints - 1);
  std::vector<double> vals(kScanPoints);
  for (int k = 0; k < kScanPoints; ++k) vals[k] = g(k + 1 == kScanPoints ? hi : lo + k * h);
  const auto imin = static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  const auto imax = static_cast<int>(std::max_element(vals.begin(), vals.end()) - vals.begin());
  auto window = [&](int k) {
    return std::pair{lo + std::max(k - 1, 0) * h, std::min(lo + (k + 1) * h, hi)};
  };
  Extremes e{vals[imin], vals[imax]};
  {
    const auto [a, b] = window(imin);
    e.min = std::min(e.min, golden_section_minimize(g, a, b, kRefineTol).value);
  }
  {
    const auto [a, b] = window(imax);
    auto neg = [&](double y) { return -g(y); };
    e.max = std::max(e.max, -golden_section_minimize(neg, a, b, kRefineTol).value);
  }
  return e;
}

template <class G>
Extremes candidate_extremes(G&& g, double lo, double hi, const std::vector<double>& interior) {
  Extremes e{std::min(g(lo), g(hi)), std::max(g(lo), g(hi))};
  for (double y : interior) {
    e.min = std::min(e.min, g(y));
    e.max = std::max(e.max, g(y));
  }
  return e;
}

}  // namespace detail

inline ProfileOnBand band_extrema(const ShearProfile& profile, double d) {
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("band half-width d must be positive");
  const double lo = -d, hi = d;
  auto u = [&](double y) { return profile.eval(y).u0; };
  auto du = [&](double y) { return profile.eval(y).du; };
  auto d2u = [&](double y) { return profile.eval(y).d2u; };

  ProfileOnBand band{profile, d};
  const auto crit = profile.critical_points(lo, hi);
  const auto uext = crit ? detail::candidate_extremes(u, lo, hi, *crit) : detail::scan_extremes(u, lo, hi);
  band.u0_min = uext.min;
  band.u0_max = uext.max;

  const auto ccrit = profile.curvature_critical_points(lo, hi);
  const auto qext = ccrit ? detail::candidate_extremes(d2u, lo, hi, *ccrit) : detail::scan_extremes(d2u, lo, hi);
  band.d2u_min = qext.min;
  band.d2u_max = qext.max;

  if (profile.has_analytic_slope()) {
    // u0' is affine in y for these forms, so its extreme values sit at the walls.
    const double s_lo = du(lo), s_hi = du(hi);
    band.min_abs_slope = (s_lo > 0.0) == (s_hi > 0.0) ? std::min(std::abs(s_lo), std::abs(s_hi)) : 0.0;
    band.monotone = s_lo != 0.0 && s_hi != 0.0 && (s_lo > 0.0) == (s_hi > 0.0);
  } else {
    const auto sext = detail::scan_extremes(du, lo, hi);
    bool same_sign = sext.min > 0.0 || sext.max < 0.0;
    if (crit && !crit->empty()) same_sign = false;
    band.monotone = same_sign;
    band.min_abs_slope = same_sign ? std::min(std::abs(sext.min), std::abs(sext.max)) : 0.0;
  }
  if (band.monotone) band.orientation = du(lo) > 0.0 ? Orientation::increasing : Orientation::decreasing;
  return band;
}

}  // namespace qgwave
