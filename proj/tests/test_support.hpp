#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "qgwave/channel.hpp"

namespace qgwave::test {

// Observed order from errors on grids whose spacing differs by `ratio`.
inline double observed_order(double coarse, double fine, double ratio = 2.0) {
  return std::log(coarse / fine) / std::log(ratio);
}

inline Field2D random_field(const Grid2D& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field2D f(grid);
  for (double& v : f.values()) v = dist(rng);
  return f;
}

template <class F>
double interior_sup_error(const Field2D& approx, const Grid2D& grid, F&& exact) {
  double e = 0.0;
  for (std::size_t j = 1; j + 1 < grid.ny(); ++j)
    for (std::size_t i = 0; i < grid.nx(); ++i) e = std::max(e, std::abs(approx(j, i) - exact(grid.x(i), grid.y(j))));
  return e;
}

}  // namespace qgwave::test
