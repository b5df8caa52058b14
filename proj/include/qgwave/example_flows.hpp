#pragma once

// Closed-form traveling waves and steady flows sampled on channel grids.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qgwave/channel.hpp"
#include "qgwave/errors.hpp"

namespace qgwave {

// Stream function
//   psi = (A/n) cos(m y) sin(n x) + A~ cos(s y) + B sin(s y) + (lambda c - beta)/(-lambda) y + xi/(-lambda)
// with m = (2k+1) pi / 2, s = sqrt(-lambda), lambda = -n^2 - m^2.
struct InflectionWaveParams {
  int n = 1;
  int k = 1;
  double A = 1.0;
  double A_tilde = 0.0;
  double B = 0.0;
  double c = 0.0;
  double xi = 0.0;
  double beta = 1.0;

  double meridional_wavenumber() const { return (2 * k + 1) * std::numbers::pi / 2.0; }
  double lambda() const {
    const double m = meridional_wavenumber();
    return -static_cast<double>(n) * n - m * m;
  }
};

// mu(s) = a - sqrt(a^2 - b^2 s^k)
struct GrsParams {
  double a = 2.0;
  double b = 1.0;
  double k = 3.0;

  void validate() const {
    if (!(a > b && b > 0.0)) throw DomainError("GRS parameters require a > b > 0");
    if (!(k > 2.0)) throw DomainError("GRS exponent requires k > 2");
  }
  double mu(double s) const {
    const double disc = a * a - b * b * std::pow(s, k);
    if (disc < 0.0) throw DomainError("GRS profile mu is not real at this radius");
    return a - std::sqrt(disc);
  }
};

namespace detail {

inline void require_geometry(const Grid2D& grid, double L, double d, const char* what) {
  const auto& g = grid.geometry();
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); };
  if (!close(g.L(), L) || !close(g.d_minus(), -d) || !close(g.d_plus(), d))
    throw DomainError(std::string(what) + " requires channel L = " + std::to_string(L) + ", band [-" +
                      std::to_string(d) + ", " + std::to_string(d) + "]");
}

}  // namespace detail

inline Grid2D inflection_wave_grid(std::size_t nx, std::size_t ny) {
  return Grid2D(nx, ny, ChannelGeometry::centered(2.0 * std::numbers::pi, 1.0));
}
inline Grid2D kolmogorov_grid(std::size_t nx, std::size_t ny) {
  return Grid2D(nx, ny, ChannelGeometry::centered(4.0 * std::numbers::pi / std::sqrt(3.0), std::numbers::pi));
}

// Genuine wave whose speed is a generalized inflection value of u.
inline WaveField make_inflection_wave(const InflectionWaveParams& p, const Grid2D& grid) {
  detail::require_geometry(grid, 2.0 * std::numbers::pi, 1.0, "inflection wave");
  if (p.n < 1 || p.k < 1) throw DomainError("inflection wave needs integers n, k >= 1");
  const double m = p.meridional_wavenumber();
  const double lambda = p.lambda();
  const double s = std::sqrt(-lambda);
  const double drift = (lambda * p.c - p.beta) / (-lambda);
  const double n = p.n;
  // u = -psi_y, v = psi_x
  auto u = [&](double x, double y) {
    return p.A / n * m * std::sin(m * y) * std::sin(n * x) + p.A_tilde * s * std::sin(s * y) -
           p.B * s * std::cos(s * y) - drift;
  };
  auto v = [&](double x, double y) { return p.A * std::cos(m * y) * std::cos(n * x); };
  return {grid, Field2D::sample(grid, u), Field2D::sample(grid, v), p.c, p.beta};
}

// beta at which the speed of the min/critical wave equals min u.
inline double min_critical_beta0() {
  const double pi = std::numbers::pi;
  return pi / 2.0 * (pi * pi / 4.0 + 1.0);
}

// psi = (-beta / (pi^2/4 + 1) - c) y + cos(x) cos(pi y / 2).
inline WaveField make_min_critical_wave(double beta, double c, const Grid2D& grid) {
  detail::require_geometry(grid, 2.0 * std::numbers::pi, 1.0, "min/critical wave");
  const double pi = std::numbers::pi;
  const double kappa = pi * pi / 4.0 + 1.0;
  auto u = [&](double x, double y) { return beta / kappa + c + pi / 2.0 * std::cos(x) * std::sin(pi * y / 2.0); };
  auto v = [&](double x, double y) { return -std::sin(x) * std::cos(pi * y / 2.0); };
  return {grid, Field2D::sample(grid, u), Field2D::sample(grid, v), c, beta};
}

// Steady non-sheared perturbation of the Kolmogorov flow sin(y), beta = 0.
inline WaveField make_kolmogorov_perturbed(double eps, const Grid2D& grid) {
  detail::require_geometry(grid, 4.0 * std::numbers::pi / std::sqrt(3.0), std::numbers::pi, "Kolmogorov perturbation");
  const double kx = std::sqrt(3.0) / 2.0;
  auto u = [&](double x, double y) { return std::sin(y) + eps / 2.0 * std::sin(y / 2.0) * std::sin(kx * x); };
  auto v = [&](double x, double y) { return kx * eps * std::cos(y / 2.0) * std::cos(kx * x); };
  return {grid, Field2D::sample(grid, u), Field2D::sample(grid, v), 0.0, 0.0};
}

// Rotating vortex (u, v) = (-Y mu(r), X mu(r)) about the grid centre
// (X = x - L/2, Y = y - mid-band), c = 0 and beta = 0. mu is tapered to zero
// by a cosine over the outer tenth of clip_radius and vanishes beyond it.
inline WaveField make_grs_vortex(const GrsParams& p, const Grid2D& grid, double clip_radius) {
  p.validate();
  if (!(clip_radius > 0.0)) throw DomainError("GRS clip radius must be positive");
  if (p.a * p.a - p.b * p.b * std::pow(clip_radius, p.k) <= 0.0)
    throw DomainError("GRS clip radius exceeds the radius where mu is real");
  const double pi = std::numbers::pi;
  const double r_taper = 0.9 * clip_radius;
  auto mu = [&](double r) {
    if (r >= clip_radius) return 0.0;
    double w = 1.0;
    if (r > r_taper) w = 0.5 * (1.0 + std::cos(pi * (r - r_taper) / (clip_radius - r_taper)));
    return w * p.mu(r);
  };
  const double xc = static_cast<double>(grid.nx() / 2);
  const double yc = grid.geometry().center();
  Field2D u(grid), v(grid);
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    const double Y = grid.y(j) - yc;
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const double X = (static_cast<double>(i) - xc) * grid.hx();
      const double m = mu(std::hypot(X, Y));
      u(j, i) = -Y * m;
      v(j, i) = X * m;
    }
  }
  return {grid, std::move(u), std::move(v), 0.0, 0.0};
}

}  // namespace qgwave
