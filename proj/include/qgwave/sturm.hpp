#pragma once

// Symmetric tridiagonal matrices of the form
//
//   T = h^-2 * tridiag(-1, 2, -1) + diag(V)
//
// i.e. the second-order Dirichlet discretization of -phi'' + V phi on a
// uniform interior grid. Sturm counts are carried in the scaled variable
// q_i = h^2 d_i - 1 (d_i the LDL^T pivots), which keeps the O(h^2) potential
// contribution from being swamped by the 2/h^2 diagonal on fine grids.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qgwave/errors.hpp"

namespace qgwave {

class DirichletSchrodinger {
 public:
  DirichletSchrodinger(double h, std::vector<double> potential) : h_(h), potential_(std::move(potential)) {
    if (!(h > 0.0)) throw DomainError("grid spacing must be positive");
    if (potential_.empty()) throw DomainError("operator needs at least one interior node");
    for (double v : potential_)
      if (!std::isfinite(v)) throw DomainError("potential must be finite at every interior node");
  }

  std::size_t size() const noexcept { return potential_.size(); }
  double h() const noexcept { return h_; }
  std::span<const double> potential() const noexcept { return potential_; }

  // Number of eigenvalues strictly below sigma.
  std::size_t count_below(double sigma) const noexcept {
    const double h2 = h_ * h_;
    std::size_t count = 0;
    double q = 0.0;
    for (std::size_t i = 0; i < potential_.size(); ++i) {
      q = (i == 0 ? 1.0 : q) + h2 * (potential_[i] - sigma);
      double g = 1.0 + q;
      if (g == 0.0) {
        g = -kTinyPivot;
        q = g - 1.0;
      }
      if (g < 0.0) ++count;
      q = q / g;  // carried into the next row as q_{i-1} / (1 + q_{i-1})
    }
    return count;
  }

  // Gershgorin-style lower bound: T - min(V) is positive definite.
  double lower_bound() const noexcept { return *std::min_element(potential_.begin(), potential_.end()); }

  // Rayleigh quotient x^T T x / x^T x.
  double rayleigh_quotient(std::span<const double> x) const {
    if (x.size() != size()) throw ShapeError("trial vector length does not match operator");
    const double ih2 = 1.0 / (h_ * h_);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double left = i == 0 ? 0.0 : x[i - 1];
      const double right = i + 1 == x.size() ? 0.0 : x[i + 1];
      num += x[i] * ((2.0 * x[i] - left - right) * ih2 + potential_[i] * x[i]);
      den += x[i] * x[i];
    }
    return num / den;
  }

  // Smallest eigenvalue by Sturm bisection to width
  // rel_tol * max(1, |lambda|). A guess narrows the starting bracket.
  double smallest_eigenvalue(double rel_tol = 1e-13, std::optional<double> guess = std::nullopt) const {
    double lo = lower_bound();
    double hi = ground_trial_bound();
    if (guess && std::isfinite(*guess)) {
      double w = 1e-3 * std::max(1.0, std::abs(*guess));
      while (w < hi - lo) {
        const double a = std::max(lo, *guess - w);
        const double b = std::min(hi, *guess + w);
        if (count_below(a) == 0 && count_below(b) >= 1) {
          lo = a;
          hi = b;
          break;
        }
        w *= 16.0;
      }
    }
    while (count_below(hi) == 0) hi += std::max(1.0, std::abs(hi));
    for (int it = 0; it < 400; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (hi - lo <= rel_tol * std::max(1.0, std::abs(mid)) || mid == lo || mid == hi) break;
      if (count_below(mid) == 0)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }

  // Ground state for eigenvalue lambda by inverse iteration, positive and
  // normalized to unit Euclidean norm.
  std::vector<double> ground_state(double lambda, int iterations = 4) const {
    const std::size_t n = size();
    const double sigma = lambda - 1e-9 * std::max(1.0, std::abs(lambda));
    const double h2 = h_ * h_;
    std::vector<double> g(n);
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      q = (i == 0 ? 1.0 : q) + h2 * (potential_[i] - sigma);
      g[i] = 1.0 + q;
      if (g[i] == 0.0) g[i] = kTinyPivot;
      q = q / g[i];
    }
    std::vector<double> x(n, 1.0);
    for (int it = 0; it < iterations; ++it) {
      // (h^2 T - h^2 sigma) = L D L^T with D = g and subdiagonal -1/g.
      for (std::size_t i = 1; i < n; ++i) x[i] += x[i - 1] / g[i - 1];
      x[n - 1] /= g[n - 1];
      for (std::size_t i = n - 1; i-- > 0;) x[i] = (x[i] + x[i + 1]) / g[i];
      double norm = 0.0;
      for (double v : x) norm += v * v;
      norm = std::sqrt(norm);
      for (double& v : x) v /= norm;
    }
    double sum = 0.0;
    for (double v : x) sum += v;
    if (sum < 0.0)
      for (double& v : x) v = -v;
    return x;
  }

 private:
  static constexpr double kTinyPivot = std::numeric_limits<double>::min() * 1e4;

  double ground_trial_bound() const {
    std::vector<double> x(size());
    const double n1 = static_cast<double>(size() + 1);
    for (std::size_t i = 0; i < size(); ++i) x[i] = std::sin(std::numbers::pi * static_cast<double>(i + 1) / n1);
    const double rq = rayleigh_quotient(x);
    return rq + 1e-12 * std::max(1.0, std::abs(rq));
  }

  double h_;
  std::vector<double> potential_;
};

}  // namespace qgwave
