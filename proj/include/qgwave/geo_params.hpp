#pragma once

// Planetary beta-plane parameters and the Jupiter / Saturn band examples.

#include <cmath>
#include <numbers>
#include <string>

#include "qgwave/errors.hpp"
#include "qgwave/profiles.hpp"
#include "qgwave/rayleigh_kuo.hpp"
#include "qgwave/wave_classifier.hpp"

namespace qgwave {

struct PlanetData {
  std::string name;
  double R_prime;      // radius, m
  double Omega_prime;  // rotation rate, rad/s
  double U_prime;      // velocity scale, m/s

  void validate() const {
    if (!(R_prime > 0.0 && Omega_prime > 0.0 && U_prime > 0.0))
      throw DomainError("planet radius, rotation rate and velocity scale must be positive");
  }
  // 2 Omega' R' / U'
  double rotation_number() const { return 2.0 * Omega_prime * R_prime / U_prime; }
};

inline PlanetData jupiter() { return {"jupiter", 69911e3, 1.76e-4, 150.0}; }
inline PlanetData saturn() { return {"saturn", 58232e3, 1.62e-4, 150.0}; }

inline PlanetData planet_by_name(const std::string& name) {
  if (name == "jupiter") return jupiter();
  if (name == "saturn") return saturn();
  throw DomainError("unknown planet '" + name + "'");
}

inline double degrees_to_radians(double deg) { return deg * std::numbers::pi / 180.0; }

struct BetaPlane {
  double f0;
  double beta;
};

// Latitude in degrees, south negative.
inline BetaPlane beta_plane_params(const PlanetData& planet, double theta0_deg) {
  planet.validate();
  if (!(std::abs(theta0_deg) < 90.0)) throw DomainError("reference latitude must lie in (-90, 90) degrees");
  const double scale = planet.rotation_number();
  const double theta = degrees_to_radians(theta0_deg);
  return {scale * std::sin(theta), scale * std::cos(theta)};
}

// Nondimensional half-width of a band spanning band_degrees of latitude.
inline double band_halfwidth(double band_degrees) {
  if (!(band_degrees > 0.0)) throw DomainError("band width must be positive");
  return 0.5 * degrees_to_radians(band_degrees);
}

// Published reference values the worked examples are compared against.
inline constexpr double kCouetteCriticalBeta = 1.8352;
inline constexpr double kJupiterBetaExpected = 129.0;
inline constexpr double kJupiterCriticalBetaExpected = 1004.0;
inline constexpr double kSaturnBetaExpected = 46.0;
inline constexpr double kSaturnThresholdExpected = 175.0;

// Linearly sheared band between 37S and 39S on Jupiter.
struct JupiterBandReport {
  double d = 0.0;
  double a = 0.0;
  double b = 0.0;
  double u_south = 0.0;  // u0(-d)
  double u_north = 0.0;  // u0(d)
  double beta = 0.0;
  double beta_crit_couette = 0.0;         // computed for u0 = y on [-1, 1]
  double beta_crit_scaling = 0.0;         // (a/d) times the computed Couette value
  double beta_crit_scaling_seed = 0.0;    // (a/d) * 1.8352
  double beta_crit_direct = 0.0;          // solver on the band itself
  double scaling_direct_rel_diff = 0.0;
  bool waves_expected = false;            // beta > beta_crit
  double beta_expected = kJupiterBetaExpected;
  double beta_crit_expected = kJupiterCriticalBetaExpected;
};

inline JupiterBandReport jupiter_band_case(double tol = 1e-4) {
  JupiterBandReport r;
  r.d = band_halfwidth(2.0);
  r.a = 1.0 / (6.0 * r.d);
  r.b = 2.0 / 15.0;
  const ShearProfile profile = ShearProfile::linear(r.a, r.b);
  r.u_south = profile(-r.d);
  r.u_north = profile(r.d);
  r.beta = beta_plane_params(jupiter(), -38.0).beta;
  r.beta_crit_couette = critical_beta(band_extrema(ShearProfile::couette(), 1.0), tol);
  r.beta_crit_scaling = r.a / r.d * r.beta_crit_couette;
  r.beta_crit_scaling_seed = r.a / r.d * kCouetteCriticalBeta;
  r.beta_crit_direct = critical_beta(band_extrema(profile, r.d), tol);
  r.scaling_direct_rel_diff = std::abs(r.beta_crit_direct - r.beta_crit_scaling) / r.beta_crit_scaling;
  r.waves_expected = r.beta > r.beta_crit_direct;
  return r;
}

// Circumpolar jet between 65S and 70S on Saturn.
struct SaturnPolarReport {
  double d = 0.0;
  double beta = 0.0;
  double threshold = 0.0;  // (u0'')_min = 1 / (3 d^2)
  double u_south = 0.0;    // u0(-d)
  double u_north = 0.0;    // u0(d)
  double slope_north = 0.0;
  double margin = 0.0;     // (u0'')_min - beta
  bool rigidity_predicted = false;
  double beta_expected = kSaturnBetaExpected;
  double threshold_expected = kSaturnThresholdExpected;
};

inline ShearProfile saturn_polar_profile(double d) {
  return ShearProfile::polynomial({1.0 / 6.0, -1.0 / (3.0 * d), 1.0 / (6.0 * d * d)});
}

inline SaturnPolarReport saturn_polar_case() {
  SaturnPolarReport r;
  r.d = band_halfwidth(5.0);
  const ShearProfile profile = saturn_polar_profile(r.d);
  r.beta = beta_plane_params(saturn(), -68.5).beta;
  const ProfileOnBand band = band_extrema(profile, r.d);
  r.threshold = band.d2u_min;
  r.u_south = profile(-r.d);
  r.u_north = profile(r.d);
  r.slope_north = profile.eval(r.d).du;
  const RigidityBound bound = profile_rigidity_bound(profile, r.d, r.beta);
  r.margin = bound.threshold;
  r.rigidity_predicted = bound.satisfied;
  return r;
}

}  // namespace qgwave
