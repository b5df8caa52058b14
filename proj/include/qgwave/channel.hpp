#pragma once

// Periodic zonal channel: geometry, uniform grid, scalar fields and the
// second-order discrete calculus used by the diagnostics and classifier.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qgwave/errors.hpp"

namespace qgwave {

// Zonal period L and meridional band [d_minus, d_plus].
class ChannelGeometry {
 public:
  ChannelGeometry(double L, double d_minus, double d_plus) : L_(L), d_minus_(d_minus), d_plus_(d_plus) {
    if (!(std::isfinite(L) && L > 0.0)) throw DomainError("channel period L must be finite and positive");
    if (!(std::isfinite(d_minus) && std::isfinite(d_plus) && d_plus > d_minus))
      throw DomainError("channel band requires finite d_minus < d_plus");
  }

  // Band [-d, d].
  static ChannelGeometry centered(double L, double d) { return ChannelGeometry(L, -d, d); }

  double L() const noexcept { return L_; }
  double d_minus() const noexcept { return d_minus_; }
  double d_plus() const noexcept { return d_plus_; }
  double width() const noexcept { return d_plus_ - d_minus_; }
  double half_width() const noexcept { return 0.5 * width(); }
  double center() const noexcept { return 0.5 * (d_minus_ + d_plus_); }

  // Same band translated so that it reads [-d, d].
  ChannelGeometry centered_copy() const { return centered(L_, half_width()); }

  bool operator==(const ChannelGeometry&) const = default;

 private:
  double L_;
  double d_minus_;
  double d_plus_;
};

// Uniform grid: x periodic with nx nodes (node nx is node 0), y including
// both walls with ny nodes.
class Grid2D {
 public:
  Grid2D(std::size_t nx, std::size_t ny, ChannelGeometry geometry) : nx_(nx), ny_(ny), geometry_(geometry) {
    if (nx < 8 || nx % 2 != 0) throw DomainError("grid nx must be even and at least 8");
    if (ny < 9) throw DomainError("grid ny must be at least 9");
  }

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  std::size_t size() const noexcept { return nx_ * ny_; }
  const ChannelGeometry& geometry() const noexcept { return geometry_; }

  double hx() const noexcept { return geometry_.L() / static_cast<double>(nx_); }
  double hy() const noexcept { return geometry_.width() / static_cast<double>(ny_ - 1); }
  double h_max() const noexcept { return std::max(hx(), hy()); }

  double x(std::size_t i) const noexcept { return static_cast<double>(i) * hx(); }
  double y(std::size_t j) const noexcept {
    if (j + 1 == ny_) return geometry_.d_plus();
    return geometry_.d_minus() + static_cast<double>(j) * hy();
  }

  bool operator==(const Grid2D&) const = default;

 private:
  std::size_t nx_;
  std::size_t ny_;
  ChannelGeometry geometry_;
};

// Row-major scalar field, y index outer.
class Field2D {
 public:
  Field2D() = default;
  Field2D(std::size_t ny, std::size_t nx, double value = 0.0) : ny_(ny), nx_(nx), data_(ny * nx, value) {}
  Field2D(std::size_t ny, std::size_t nx, std::vector<double> data) : ny_(ny), nx_(nx), data_(std::move(data)) {
    if (data_.size() != ny_ * nx_) throw ShapeError("field data size does not match ny*nx");
  }
  explicit Field2D(const Grid2D& grid, double value = 0.0) : Field2D(grid.ny(), grid.nx(), value) {}

  template <class F>
  static Field2D sample(const Grid2D& grid, F&& f) {
    Field2D out(grid);
    for (std::size_t j = 0; j < grid.ny(); ++j)
      for (std::size_t i = 0; i < grid.nx(); ++i) out(j, i) = f(grid.x(i), grid.y(j));
    return out;
  }

  std::size_t ny() const noexcept { return ny_; }
  std::size_t nx() const noexcept { return nx_; }
  double& operator()(std::size_t j, std::size_t i) noexcept { return data_[j * nx_ + i]; }
  double operator()(std::size_t j, std::size_t i) const noexcept { return data_[j * nx_ + i]; }
  std::span<const double> row(std::size_t j) const noexcept { return {data_.data() + j * nx_, nx_}; }
  std::span<const double> values() const noexcept { return data_; }
  std::span<double> values() noexcept { return data_; }

  bool matches(const Grid2D& grid) const noexcept { return ny_ == grid.ny() && nx_ == grid.nx(); }

  double max_abs() const noexcept {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }
  double min() const noexcept { return *std::min_element(data_.begin(), data_.end()); }
  double max() const noexcept { return *std::max_element(data_.begin(), data_.end()); }

  bool operator==(const Field2D&) const = default;

 private:
  std::size_t ny_ = 0;
  std::size_t nx_ = 0;
  std::vector<double> data_;
};

// Traveling-wave snapshot (u, v)(x - ct, y) on a channel grid.
struct WaveField {
  Grid2D grid;
  Field2D u;
  Field2D v;
  double c = 0.0;
  double beta = 0.0;

  void validate() const {
    if (!u.matches(grid) || !v.matches(grid)) throw ShapeError("wave field u/v dimensions do not match grid");
    if (!std::isfinite(c) || !std::isfinite(beta)) throw DomainError("wave speed and beta must be finite");
    if (beta < 0.0) throw DomainError("beta must be non-negative");
  }
};

namespace detail {

inline void require_shape(const Field2D& f, const Grid2D& grid) {
  if (!f.matches(grid)) throw ShapeError("field dimensions do not match grid");
}

inline std::size_t wrap_prev(std::size_t i, std::size_t n) noexcept { return i == 0 ? n - 1 : i - 1; }
inline std::size_t wrap_next(std::size_t i, std::size_t n) noexcept { return i + 1 == n ? 0 : i + 1; }

}  // namespace detail

// Periodic central difference in x.
inline Field2D derivative_x(const Field2D& f, const Grid2D& grid) {
  detail::require_shape(f, grid);
  const std::size_t nx = grid.nx();
  const double inv = 1.0 / (2.0 * grid.hx());
  Field2D out(grid);
  for (std::size_t j = 0; j < grid.ny(); ++j)
    for (std::size_t i = 0; i < nx; ++i)
      out(j, i) = (f(j, detail::wrap_next(i, nx)) - f(j, detail::wrap_prev(i, nx))) * inv;
  return out;
}

// Central difference in y; second-order one-sided rows at the walls.
inline Field2D derivative_y(const Field2D& f, const Grid2D& grid) {
  detail::require_shape(f, grid);
  const std::size_t ny = grid.ny();
  const double inv = 1.0 / (2.0 * grid.hy());
  Field2D out(grid);
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    out(0, i) = (-3.0 * f(0, i) + 4.0 * f(1, i) - f(2, i)) * inv;
    for (std::size_t j = 1; j + 1 < ny; ++j) out(j, i) = (f(j + 1, i) - f(j - 1, i)) * inv;
    out(ny - 1, i) = (3.0 * f(ny - 1, i) - 4.0 * f(ny - 2, i) + f(ny - 3, i)) * inv;
  }
  return out;
}

inline std::pair<Field2D, Field2D> gradient(const Field2D& f, const Grid2D& grid) {
  return {derivative_x(f, grid), derivative_y(f, grid)};
}

// Five-point Laplacian, periodic in x. The wall rows use the one-sided
// second-derivative stencil (2, -5, 4, -1)/h^2 in y.
inline Field2D laplacian(const Field2D& f, const Grid2D& grid) {
  detail::require_shape(f, grid);
  const std::size_t nx = grid.nx();
  const std::size_t ny = grid.ny();
  const double ix2 = 1.0 / (grid.hx() * grid.hx());
  const double iy2 = 1.0 / (grid.hy() * grid.hy());
  Field2D out(grid);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const double fxx = (f(j, detail::wrap_next(i, nx)) - 2.0 * f(j, i) + f(j, detail::wrap_prev(i, nx))) * ix2;
      double fyy;
      if (j == 0)
        fyy = (2.0 * f(0, i) - 5.0 * f(1, i) + 4.0 * f(2, i) - f(3, i)) * iy2;
      else if (j + 1 == ny)
        fyy = (2.0 * f(j, i) - 5.0 * f(j - 1, i) + 4.0 * f(j - 2, i) - f(j - 3, i)) * iy2;
      else
        fyy = (f(j + 1, i) - 2.0 * f(j, i) + f(j - 1, i)) * iy2;
      out(j, i) = fxx + fyy;
    }
  }
  return out;
}

struct FieldDiagnostics {
  double div_inf = 0.0;         // sup |u_x + v_y|
  double residual_inf = 0.0;    // sup |(u - c) lap v + v (beta - lap u)|
  double residual_rel = 0.0;    // residual_inf over the size of its two terms
  double boundary_v_inf = 0.0;  // sup |v| on the wall rows
  Field2D gamma;                // relative vorticity v_x - u_y
  Field2D total_vorticity;      // gamma + beta y
};

inline FieldDiagnostics diagnostics(const WaveField& field) {
  field.validate();
  const Grid2D& grid = field.grid;
  const auto [ux, uy] = gradient(field.u, grid);
  const auto [vx, vy] = gradient(field.v, grid);
  const Field2D lap_u = laplacian(field.u, grid);
  const Field2D lap_v = laplacian(field.v, grid);

  FieldDiagnostics out;
  out.gamma = Field2D(grid);
  out.total_vorticity = Field2D(grid);
  double u_minus_c = 0.0, lap_v_inf = 0.0, v_inf = 0.0, q_inf = 0.0;
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    const double y = grid.y(j);
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const double u = field.u(j, i);
      const double v = field.v(j, i);
      out.div_inf = std::max(out.div_inf, std::abs(ux(j, i) + vy(j, i)));
      // Exactly zero whenever v and lap v vanish.
      const double r = (u - field.c) * lap_v(j, i) + v * (field.beta - lap_u(j, i));
      out.residual_inf = std::max(out.residual_inf, std::abs(r));
      out.gamma(j, i) = vx(j, i) - uy(j, i);
      out.total_vorticity(j, i) = out.gamma(j, i) + field.beta * y;
      u_minus_c = std::max(u_minus_c, std::abs(u - field.c));
      lap_v_inf = std::max(lap_v_inf, std::abs(lap_v(j, i)));
      v_inf = std::max(v_inf, std::abs(v));
      q_inf = std::max(q_inf, std::abs(field.beta - lap_u(j, i)));
    }
  }
  for (std::size_t j : {std::size_t{0}, grid.ny() - 1})
    for (double v : field.v.row(j)) out.boundary_v_inf = std::max(out.boundary_v_inf, std::abs(v));

  const double scale = u_minus_c * lap_v_inf + v_inf * q_inf + std::numeric_limits<double>::epsilon();
  out.residual_rel = out.residual_inf / scale;
  return out;
}

}  // namespace qgwave
