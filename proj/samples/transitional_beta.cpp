// Transitional beta and critical wavelengths for a linearly sheared band.

#include <cstdio>

#include "qgwave/qgwave.hpp"

int main() {
  using namespace qgwave;
  for (double d : {1.0, 2.0, 3.0}) {
    const ProfileOnBand band = band_extrema(ShearProfile::linear(2.0, 3.0), d);
    const double beta_crit = critical_beta(band);
    std::printf("u0 = 2y + 3 on [-%g, %g]: beta_crit = %.6f\n", d, d, beta_crit);
    for (const CurvePoint& p : boundary_curve(band, beta_crit + 0.5, beta_crit + 20.0, 5))
      std::printf("  beta = %8.4f  lambda1 = %10.6f  L_crit = %.6f\n", p.beta, p.lambda1_at_u0min, p.L_crit);
  }
}
