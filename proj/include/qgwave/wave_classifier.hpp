#pragma once

// Wave-speed classification of gridded traveling waves and the rigidity
// predicates that certify a field must be a shear flow.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "qgwave/channel.hpp"
#include "qgwave/errors.hpp"
#include "qgwave/profiles.hpp"

namespace qgwave {

// Lower bound on the speed of a genuine wave whose speed lies below Ran(u).
inline double c_beta_plus(double beta, double d_minus, double d_plus, double u_min, double u_max) {
  if (!(beta >= 0.0)) throw DomainError("c_beta_plus requires beta >= 0");
  if (!(d_plus > d_minus)) throw DomainError("c_beta_plus requires d_plus > d_minus");
  if (!(u_max >= u_min)) throw DomainError("c_beta_plus requires u_max >= u_min");
  const double w2 = (d_plus - d_minus) * (d_plus - d_minus);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double root = std::sqrt(beta * beta + 4.0 * pi2 * beta / w2 * (u_max - u_min));
  return u_min - beta * w2 / (2.0 * pi2) - w2 / (2.0 * pi2) * root;
}

// A grid location supporting a category verdict.
struct Witness {
  double x;
  double y;
  double u_minus_c;
  double test_value;  // |beta - lap u| or |grad u| at the witness
};

struct CategoryVerdict {
  bool holds = false;
  std::size_t witness_count = 0;
  std::vector<Witness> witnesses;  // at most kMaxWitnesses kept
};

struct ClassificationTolerances {
  double eps_scale = 2.0;
  double eps_c = 0.0;  // level-set tolerance on u - c
  double eps_g = 0.0;  // tolerance on |grad u|
  double eps_q = 0.0;  // tolerance on |beta - lap u|
};

struct ClassificationReport {
  bool genuine = false;
  double max_abs_v = 0.0;
  double u_min = 0.0;
  double u_max = 0.0;
  double c = 0.0;
  double beta = 0.0;
  double c_beta_plus = 0.0;
  CategoryVerdict category_inflection;  // {beta - lap u = 0} meets {u = c}
  CategoryVerdict category_critical;    // {grad u = 0} meets {u = c}
  bool category_extremum = false;       // c = u_min or c = u_max
  bool category_outside = false;        // c in [c_beta_plus, u_min)
  ClassificationTolerances tolerances;
  bool theorem_consistent = true;

  std::vector<std::string> holding_categories() const {
    std::vector<std::string> out;
    if (category_inflection.holds) out.emplace_back("inflection");
    if (category_critical.holds) out.emplace_back("critical");
    if (category_extremum) out.emplace_back("extremum");
    if (category_outside) out.emplace_back("outside");
    return out;
  }
};

inline constexpr std::size_t kMaxWitnesses = 32;

namespace detail {

inline void add_witness(CategoryVerdict& v, Witness w) {
  v.holds = true;
  ++v.witness_count;
  if (v.witnesses.size() < kMaxWitnesses) v.witnesses.push_back(w);
}

// Max over the grid of the largest second difference |u_xx|, |u_yy|, |u_xy|.
inline double second_derivative_norm(const Field2D& u, const Grid2D& grid) {
  const auto [ux, uy] = gradient(u, grid);
  const Field2D uxx = derivative_x(ux, grid);
  const Field2D uyy = derivative_y(uy, grid);
  const Field2D uxy = derivative_y(ux, grid);
  return std::max({uxx.max_abs(), uyy.max_abs(), uxy.max_abs()});
}

inline Field2D magnitude(const Field2D& a, const Field2D& b) {
  Field2D out(a.ny(), a.nx());
  for (std::size_t k = 0; k < a.values().size(); ++k) out.values()[k] = std::hypot(a.values()[k], b.values()[k]);
  return out;
}

}  // namespace detail

// Classifies the wave speed of a gridded traveling wave. Level sets are found
// at nodes with |u - c| <= eps_c and at grid edges where u - c changes sign;
// the category fields are then tested there with linear interpolation.
inline ClassificationReport classify(const WaveField& field, double eps_scale = 2.0) {
  field.validate();
  if (!(eps_scale > 0.0)) throw DomainError("eps_scale must be positive");
  const Grid2D& grid = field.grid;
  const Field2D& u = field.u;
  const double c = field.c;
  const double beta = field.beta;

  const auto [ux, uy] = gradient(u, grid);
  const Field2D grad_mag = detail::magnitude(ux, uy);
  const Field2D lap = laplacian(u, grid);
  const auto [lx, ly] = gradient(lap, grid);
  const double h = grid.h_max();

  ClassificationReport r;
  r.c = c;
  r.beta = beta;
  r.tolerances.eps_scale = eps_scale;
  r.tolerances.eps_c = eps_scale * h * grad_mag.max_abs();
  r.tolerances.eps_g = eps_scale * h * detail::second_derivative_norm(u, grid);
  r.tolerances.eps_q = eps_scale * h * detail::magnitude(lx, ly).max_abs();
  const auto& tol = r.tolerances;

  r.max_abs_v = field.v.max_abs();
  r.u_min = u.min();
  r.u_max = u.max();
  r.genuine = r.max_abs_v > 1e-8 * (1.0 + u.max_abs());
  r.c_beta_plus = c_beta_plus(beta, grid.geometry().d_minus(), grid.geometry().d_plus(), r.u_min, r.u_max);

  auto test = [&](double x, double y, double umc, double q, double g) {
    if (std::abs(q) <= tol.eps_q) detail::add_witness(r.category_inflection, {x, y, umc, std::abs(q)});
    if (g <= tol.eps_g) detail::add_witness(r.category_critical, {x, y, umc, g});
  };

  const std::size_t nx = grid.nx(), ny = grid.ny();
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const double a = u(j, i) - c;
      if (std::abs(a) <= tol.eps_c) test(grid.x(i), grid.y(j), a, beta - lap(j, i), grad_mag(j, i));
      // Edges to the east (periodic) and north neighbours.
      auto edge = [&](std::size_t j2, std::size_t i2, double x2, double y2) {
        const double b = u(j2, i2) - c;
        if (!((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0))) return;
        const double t = a / (a - b);
        const double q = (1.0 - t) * (beta - lap(j, i)) + t * (beta - lap(j2, i2));
        const double g = (1.0 - t) * grad_mag(j, i) + t * grad_mag(j2, i2);
        test((1.0 - t) * grid.x(i) + t * x2, (1.0 - t) * grid.y(j) + t * y2, 0.0, q, g);
      };
      edge(j, i + 1 == nx ? 0 : i + 1, grid.x(i) + grid.hx(), grid.y(j));
      if (j + 1 < ny) edge(j + 1, i, grid.x(i), grid.y(j + 1));
    }
  }

  r.category_extremum = std::abs(c - r.u_min) <= tol.eps_c || std::abs(c - r.u_max) <= tol.eps_c;
  r.category_outside = c >= r.c_beta_plus - tol.eps_c && c < r.u_min - tol.eps_c;

  if (r.genuine) {
    if (beta > 0.0)
      r.theorem_consistent = !r.holding_categories().empty();
    else
      r.theorem_consistent = r.category_inflection.holds;
  }
  return r;
}

struct HypothesisCheck {
  std::string condition;
  bool satisfied = false;
  double evidence = 0.0;  // signed margin; positive means satisfied
};

struct TheoremCheck {
  std::string name;
  std::vector<HypothesisCheck> hypotheses;
  bool concludes_shear = false;
};

struct RigidityVerdict {
  std::vector<TheoremCheck> applicable_theorems;
  bool shear_predicted = false;
  bool genuine = false;
  double lap_min = 0.0;  // interior Ran(lap u)
  double lap_max = 0.0;
  double margin = 0.0;
};

// Evaluates the hypotheses of the speed-band rigidity theorem (beta not in
// Ran(lap u), plus either beta > 0 with c outside [c_beta_plus, u_min] and
// grad u != 0, or beta = 0) and of the Laplacian-sign theorem ((lap u)_min > 0
// with 0 < beta < (lap u)_min, or lap u != 0 with beta = 0).
inline RigidityVerdict rigidity_predicates(const WaveField& field, double eps_scale = 2.0) {
  field.validate();
  const Grid2D& grid = field.grid;
  const Field2D lap = laplacian(field.u, grid);
  const auto [ux, uy] = gradient(field.u, grid);
  const Field2D grad_mag = detail::magnitude(ux, uy);
  const auto [lx, ly] = gradient(lap, grid);

  RigidityVerdict out;
  // Wall rows use one-sided stencils; Ran(lap u) is taken over interior rows.
  constexpr double inf = std::numeric_limits<double>::infinity();
  double lmin = inf, lmax = -inf, abs_lmin = inf;
  for (std::size_t j = 1; j + 1 < grid.ny(); ++j)
    for (double v : lap.row(j)) {
      lmin = std::min(lmin, v);
      lmax = std::max(lmax, v);
      abs_lmin = std::min(abs_lmin, std::abs(v));
    }
  out.lap_min = lmin;
  out.lap_max = lmax;
  const double h = grid.h_max();
  const double eps_q = eps_scale * h * detail::magnitude(lx, ly).max_abs();
  const double eps_c = eps_scale * h * grad_mag.max_abs();
  const double eps_g = eps_scale * h * detail::second_derivative_norm(field.u, grid);
  const double floor = 1e-10 * (1.0 + lap.max_abs());
  const double m = std::max(eps_q, floor);
  out.margin = m;
  out.genuine = field.v.max_abs() > 1e-8 * (1.0 + field.u.max_abs());

  const double beta = field.beta;
  const double c = field.c;
  const double u_min = field.u.min();
  const double cbp = c_beta_plus(beta, grid.geometry().d_minus(), grid.geometry().d_plus(), u_min, field.u.max());

  auto check = [](std::string cond, double evidence) { return HypothesisCheck{std::move(cond), evidence > 0.0, evidence}; };
  const double outside_ran = std::max(lmin - beta, beta - lmax) - m;
  const double speed_gap = std::max(cbp - c, c - u_min) - std::max(eps_c, floor);
  const double grad_gap = grad_mag.min() - std::max(eps_g, floor);

  auto finish = [&](TheoremCheck t) {
    t.concludes_shear = std::all_of(t.hypotheses.begin(), t.hypotheses.end(), [](const auto& h) { return h.satisfied; });
    out.shear_predicted = out.shear_predicted || t.concludes_shear;
    out.applicable_theorems.push_back(std::move(t));
  };
  finish({"speed_band_rigidity_i",
          {check("beta not in Ran(lap u)", outside_ran), check("beta > 0", beta),
           check("c not in [c_beta_plus, u_min]", speed_gap), check("grad u != 0", grad_gap)}});
  finish({"speed_band_rigidity_ii",
          {check("beta not in Ran(lap u)", outside_ran), check("beta = 0", beta == 0.0 ? 1.0 : -beta)}});
  finish({"laplacian_sign_rigidity_i",
          {check("(lap u)_min > 0", lmin - m), check("beta > 0", beta), check("beta < (lap u)_min", lmin - beta - m)}});
  finish({"laplacian_sign_rigidity_ii",
          {check("lap u != 0", abs_lmin - m), check("beta = 0", beta == 0.0 ? 1.0 : -beta)}});
  return out;
}

struct RigidityBound {
  double threshold;  // (u0'')_min - beta: admissible sup-norm of lap u - u0''
  bool satisfied;
};

inline RigidityBound profile_rigidity_bound(const ShearProfile& profile, double d, double beta) {
  const ProfileOnBand band = band_extrema(profile, d);
  const double threshold = band.d2u_min - beta;
  return {threshold, threshold > 0.0};
}

}  // namespace qgwave
