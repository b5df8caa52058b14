#pragma once

#include <cmath>
#include <utility>

namespace qgwave {

struct ScalarMinimum {
  double x;
  double value;
};

// Golden-section search for a minimum of f on [a, b]; stops when the bracket
// is narrower than tol. Assumes f is unimodal on the bracket.
template <class F>
ScalarMinimum golden_section_minimize(F&& f, double a, double b, double tol, int max_iter = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  if (a > b) std::swap(a, b);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? ScalarMinimum{x1, f1} : ScalarMinimum{x2, f2};
}

}  // namespace qgwave
