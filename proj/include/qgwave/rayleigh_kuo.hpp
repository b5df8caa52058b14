#pragma once

// Principal eigenvalue of the Rayleigh-Kuo boundary-value problem
//
//   -phi'' - (beta - u0'') / (u0 - c) phi = lambda phi,  phi(-d) = phi(d) = 0,
//
// for c <= min u0, and the quantities derived from it: the transitional beta,
// the infimum over wave speeds, the wave-speed root for a zonal period and
// the critical-wavelength curve.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qgwave/errors.hpp"
#include "qgwave/golden.hpp"
#include "qgwave/profiles.hpp"
#include "qgwave/sturm.hpp"

namespace qgwave {

struct EigenOptions {
  double tol = 1e-6;  // Cauchy tolerance on |lambda(N) - lambda(2N)|, relative once |lambda| > 1
  std::size_t n_start = 256;
  std::size_t n_max = std::size_t{1} << 20;
  bool want_vector = true;
};

struct LadderStep {
  std::size_t intervals;  // N; the matrix has N - 1 interior nodes
  double lambda;
};

struct EigenResult {
  double lambda1 = 0.0;
  std::vector<double> nodes;   // interior y nodes, ascending
  std::vector<double> eigvec;  // positive, unit L2 norm (trapezoid rule)
  std::size_t n_used = 0;      // interior node count of the finest grid
  bool extrapolated = false;
  bool singular = false;
  double est_error = 0.0;
  std::vector<LadderStep> ladder;
};

// Dirichlet limit of lambda1 as c -> -infinity.
inline double dirichlet_limit(double d) { return std::numbers::pi * std::numbers::pi / (4.0 * d * d); }

namespace detail {

// Tolerance within which c is taken to equal min u0.
inline double singular_slack(double u0_min) {
  return 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(u0_min));
}

// Samples the potential on the N - 1 interior nodes of [-d, d]. Decreasing
// profiles are reflected so that a singular endpoint always sits at y = -d.
inline DirichletSchrodinger build_operator(const ProfileOnBand& band, double beta, double c, bool singular,
                                           std::size_t intervals) {
  const double d = band.d;
  const double h = 2.0 * d / static_cast<double>(intervals);
  const double sign = band.orientation == Orientation::decreasing ? -1.0 : 1.0;
  std::vector<double> v(intervals - 1);
  for (std::size_t j = 1; j < intervals; ++j) {
    const double y = -d + static_cast<double>(j) * h;
    const ProfileValues p = band.profile.eval(sign * y);
    const double gap = singular ? p.u0 - band.u0_min : p.u0 - c;
    v[j - 1] = -(beta - p.d2u) / gap;
  }
  return DirichletSchrodinger(h, std::move(v));
}

}  // namespace detail

inline EigenResult principal_eigenvalue(const ProfileOnBand& band, double beta, double c,
                                        const EigenOptions& options = {}) {
  if (!std::isfinite(beta) || !std::isfinite(c)) throw DomainError("beta and c must be finite");
  if (!(options.tol > 0.0)) throw DomainError("tolerance must be positive");
  const double slack = detail::singular_slack(band.u0_min);
  if (c > band.u0_min + slack) throw DomainError("wave speed c exceeds min u0 on the band");
  const bool singular = c >= band.u0_min - slack;
  if (singular && !band.monotone)
    throw UnsupportedSingularity("c = min u0 requires a strictly monotone profile on the band");

  EigenResult out;
  out.singular = singular;
  std::size_t n = std::max<std::size_t>(options.n_start, 8);
  double prev = detail::build_operator(band, beta, c, singular, n).smallest_eigenvalue();
  out.ladder.push_back({n, prev});
  while (true) {
    const std::size_t n2 = 2 * n;
    const double cur = detail::build_operator(band, beta, c, singular, n2).smallest_eigenvalue(1e-13, prev);
    out.ladder.push_back({n2, cur});
    const double diff = std::abs(cur - prev);
    if (diff < options.tol * std::max(1.0, std::abs(cur))) {
      out.est_error = diff;
      out.n_used = n2 - 1;
      // Richardson assumes a clean h^2 expansion; the singular endpoint breaks it.
      out.extrapolated = !singular;
      out.lambda1 = singular ? cur : (4.0 * cur - prev) / 3.0;
      if (options.want_vector) {
        const auto op = detail::build_operator(band, beta, c, singular, n2);
        auto vec = op.ground_state(cur);
        const double h = op.h();
        double norm = 0.0;
        for (double x : vec) norm += h * x * x;
        norm = std::sqrt(norm);
        for (double& x : vec) x /= norm;
        std::vector<double> nodes(vec.size());
        for (std::size_t j = 0; j < nodes.size(); ++j) nodes[j] = -band.d + static_cast<double>(j + 1) * h;
        if (band.orientation == Orientation::decreasing) {
          std::reverse(vec.begin(), vec.end());
          for (double& y : nodes) y = -y;
          std::reverse(nodes.begin(), nodes.end());
        }
        out.eigvec = std::move(vec);
        out.nodes = std::move(nodes);
      }
      return out;
    }
    if (n2 >= options.n_max)
      throw ConvergenceFailure("principal eigenvalue did not converge by N = " + std::to_string(n2), prev, cur);
    prev = cur;
    n = n2;
  }
}

inline double lambda1(const ProfileOnBand& band, double beta, double c, double tol = 1e-6) {
  return principal_eigenvalue(band, beta, c, {.tol = tol, .want_vector = false}).lambda1;
}

// Transitional beta: the root of lambda1(beta, min u0) = 0, which is unique
// because lambda1 is strictly decreasing in beta and positive at beta = 0.
inline double critical_beta(const ProfileOnBand& band, double tol = 1e-4) {
  if (!band.monotone) throw UnsupportedSingularity("critical beta requires a strictly monotone profile");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const double coarse_tol = 1e-6 * std::max(1.0, dirichlet_limit(band.d));
  auto lam = [&](double beta, double etol) { return lambda1(band, beta, band.u0_min, etol); };

  double lo = 0.0;
  double lam_lo = lam(lo, coarse_tol);
  if (!(lam_lo > 0.0)) throw DomainError("lambda1(0, min u0) is not positive on this band");
  double hi = 1.0;
  double lam_hi = lam(hi, coarse_tol);
  while (lam_hi >= 0.0) {
    lo = hi;
    lam_lo = lam_hi;
    hi *= 4.0;
    if (hi > 1e9) throw DivergenceError("critical beta bracket exceeded 1e9");
    lam_hi = lam(hi, coarse_tol);
  }
  // Eigenvalue accuracy needed for tol in beta, from the secant slope.
  const double slope = std::abs(lam_hi - lam_lo) / (hi - lo);
  const double etol = std::clamp(0.1 * tol * slope, 1e-10 * std::max(1.0, dirichlet_limit(band.d)), coarse_tol);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (lam(mid, etol) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct InfOverC {
  double inf_value;
  double argmin_c;
};

// Minimizes lambda1(beta, c) over c <= min u0 along c = min u0 - t, t on
// {0} and a geometric grid, then refines around the best sample.
inline InfOverC lambda_inf_over_c(const ProfileOnBand& band, double beta, double tol = 1e-6) {
  if (!band.monotone) throw UnsupportedSingularity("infimum over c requires a strictly monotone profile");
  const double limit = dirichlet_limit(band.d);
  auto at = [&](double t) { return lambda1(band, beta, band.u0_min - t, tol); };

  std::vector<std::pair<double, double>> samples{{0.0, at(0.0)}};
  for (int k = 0; k < 80; ++k) {
    const double t = 1e-4 * std::ldexp(1.0, k);
    const double value = at(t);
    samples.emplace_back(t, value);
    if (std::abs(value - limit) < tol) break;
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < samples.size(); ++k)
    if (samples[k].second < samples[best].second) best = k;

  InfOverC out{samples[best].second, band.u0_min - samples[best].first};
  const double a = samples[best == 0 ? 0 : best - 1].first;
  const double b = samples[std::min(best + 1, samples.size() - 1)].first;
  if (b > a) {
    const auto refined = golden_section_minimize(at, a, b, std::max(1e-3 * (b - a), 1e-12));
    if (refined.value < out.inf_value) out = {refined.value, band.u0_min - refined.x};
  }
  return out;
}

// Wave speed c_L < min u0 with lambda1(beta, c_L) = -(2 pi / L)^2.
inline double wave_speed_root(const ProfileOnBand& band, double beta, double L, double tol = 1e-4) {
  if (!band.monotone) throw UnsupportedSingularity("wave-speed root requires a strictly monotone profile");
  if (!(L > 0.0)) throw DomainError("zonal period L must be positive");
  const double target = -std::pow(2.0 * std::numbers::pi / L, 2);
  const double etol = 0.1 * tol;
  auto f = [&](double c) { return lambda1(band, beta, c, etol) - target; };

  const double f_near = f(band.u0_min);
  if (std::abs(f_near) < tol) return band.u0_min;
  if (f_near > 0.0)
    throw NoRootError("no wave-speed root: lambda1(beta, min u0) = " + std::to_string(f_near + target) +
                          " is not below the target " + std::to_string(target),
                      f_near + target, target);
  double near = band.u0_min;
  double t = 1.0;
  double far = band.u0_min - t;
  while (f(far) <= 0.0) {
    near = far;
    t *= 4.0;
    if (t > 1e12) throw DivergenceError("wave-speed bracket exceeded 1e12");
    far = band.u0_min - t;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (near + far);
    const double fm = f(mid);
    if (std::abs(fm) < tol || mid == near || mid == far) return mid;
    if (fm < 0.0)
      near = mid;
    else
      far = mid;
  }
  return 0.5 * (near + far);
}

struct CurvePoint {
  double beta = 0.0;
  double lambda1_at_u0min = 0.0;
  double L_crit = std::numeric_limits<double>::infinity();  // infinite when lambda1 >= 0
  std::optional<std::string> error;                         // set when the solve failed

  bool ok() const noexcept { return !error.has_value(); }
};

inline double critical_wavelength(double lambda) {
  return lambda < 0.0 ? 2.0 * std::numbers::pi / std::sqrt(-lambda) : std::numeric_limits<double>::infinity();
}

// Critical-wavelength curve over n evenly spaced beta values. Points are
// evaluated on up to `threads` workers (0 = hardware concurrency); the
// result is ordered by beta either way.
inline std::vector<CurvePoint> boundary_curve(const ProfileOnBand& band, double beta_min, double beta_max,
                                              std::size_t n, double tol = 1e-6, unsigned threads = 0) {
  if (!(beta_min < beta_max)) throw DomainError("boundary curve needs beta_min < beta_max");
  if (n < 2) throw DomainError("boundary curve needs at least two points");
  if (!band.monotone) throw UnsupportedSingularity("boundary curve requires a strictly monotone profile");
  std::vector<CurvePoint> points(n);
  for (std::size_t k = 0; k < n; ++k)
    points[k].beta = k + 1 == n ? beta_max : beta_min + (beta_max - beta_min) * static_cast<double>(k) / (n - 1);

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      CurvePoint& p = points[k];
      try {
        p.lambda1_at_u0min = lambda1(band, p.beta, band.u0_min, tol);
        p.L_crit = critical_wavelength(p.lambda1_at_u0min);
      } catch (const Error& e) {
        p.lambda1_at_u0min = std::numeric_limits<double>::quiet_NaN();
        p.error = std::string(e.kind()) + ": " + e.what();
      }
    }
  };
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  return points;
}

struct ScalingPair {
  double lhs;  // lambda1(beta, c; a u0)
  double rhs;  // lambda1(beta / a, c / a; u0)
};

inline ScalingPair scaling_check(const ProfileOnBand& band, double a, double beta, double c, double tol = 1e-6) {
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("scaling factor a must lie in (0, 1]");
  const ProfileOnBand scaled = band_extrema(band.profile.scaled(a), band.d);
  if (c > scaled.u0_min + detail::singular_slack(scaled.u0_min))
    throw DomainError("scaled problem requires c <= a min u0");
  return {lambda1(scaled, beta, c, tol), lambda1(band, beta / a, c / a, tol)};
}

}  // namespace qgwave
