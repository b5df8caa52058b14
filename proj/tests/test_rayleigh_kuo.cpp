#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qgwave/rayleigh_kuo.hpp"

using namespace qgwave;

namespace {

constexpr double pi = std::numbers::pi;

ProfileOnBand couette() { return band_extrema(ShearProfile::couette(), 1.0); }
ProfileOnBand parabola(double b, double d) { return band_extrema(ShearProfile::parabola(b, 0.0), d); }

// Rayleigh quotient of the continuous problem for a trial function,
// by composite midpoint rule (the singular endpoint is never sampled).
template <class Phi, class DPhi>
double continuous_rayleigh_quotient(const ProfileOnBand& band, double beta, double c, Phi phi, DPhi dphi) {
  const int m = 400000;
  const double d = band.d, h = 2 * d / m;
  double num = 0.0, den = 0.0;
  for (int k = 0; k < m; ++k) {
    const double y = -d + (k + 0.5) * h;
    const auto p = band.profile.eval(y);
    const double f = phi(y), df = dphi(y);
    num += (df * df - (beta - p.d2u) / (p.u0 - c) * f * f) * h;
    den += f * f * h;
  }
  return num / den;
}

}  // namespace

// ---- principal_eigenvalue ---------------------------------------------------

TEST(PrincipalEigenvalue, ZeroPotentialGivesDirichletLaplacian) {
  const auto r = principal_eigenvalue(couette(), 0.0, -2.0);
  EXPECT_NEAR(r.lambda1, pi * pi / 4.0, 1e-8);
  EXPECT_TRUE(r.extrapolated);
  EXPECT_FALSE(r.singular);
}

TEST(PrincipalEigenvalue, CouetteAtPublishedCriticalBetaIsNearZero) {
  const auto r = principal_eigenvalue(couette(), 1.8352, -1.0);
  EXPECT_TRUE(r.singular);
  EXPECT_FALSE(r.extrapolated);
  EXPECT_LT(std::abs(r.lambda1), 5e-3);
}

TEST(PrincipalEigenvalue, ParabolaAtTabulatedCriticalBetaIsNearZero) {
  const auto band = parabola(7.0, 1.0);
  EXPECT_LT(std::abs(lambda1(band, 13.2496, band.u0_min)), 2e-2);
}

TEST(PrincipalEigenvalue, ResultFieldsAreConsistent) {
  const auto band = parabola(8.0, 2.0);
  const double tol = 1e-7;
  const auto r = principal_eigenvalue(band, 3.0, band.u0_min - 0.5, {.tol = tol});
  EXPECT_LT(r.est_error, tol);
  ASSERT_GE(r.ladder.size(), 2u);
  EXPECT_EQ(r.n_used + 1, r.ladder.back().intervals);
  EXPECT_EQ(r.eigvec.size(), r.n_used);
  EXPECT_EQ(r.nodes.size(), r.n_used);
  EXPECT_NEAR(r.lambda1, (4 * r.ladder.back().lambda - r.ladder[r.ladder.size() - 2].lambda) / 3, 1e-15 * std::abs(r.lambda1) + 1e-15);
  double norm = 0.0;
  const double h = r.nodes[1] - r.nodes[0];
  for (double v : r.eigvec) norm += h * v * v;
  EXPECT_NEAR(norm, 1.0, 1e-12);
}

TEST(PrincipalEigenvalue, GroundStateHasNoSignChange) {
  for (double beta : {0.0, 1.8352, 6.0, 40.0}) {
    const auto r = principal_eigenvalue(couette(), beta, -1.0, {.tol = 1e-5});
    for (double v : r.eigvec) ASSERT_GT(v, 0.0) << beta;
  }
}

TEST(PrincipalEigenvalue, CauchyDifferencesShrinkAlongLadder) {
  const auto r = principal_eigenvalue(parabola(9.0, 3.0), 2.0, -40.0, {.tol = 1e-11, .want_vector = false});
  ASSERT_GE(r.ladder.size(), 3u);
  for (std::size_t k = 2; k < r.ladder.size(); ++k) {
    const double prev = std::abs(r.ladder[k - 1].lambda - r.ladder[k - 2].lambda);
    const double cur = std::abs(r.ladder[k].lambda - r.ladder[k - 1].lambda);
    EXPECT_LT(cur, prev);
  }
}

TEST(PrincipalEigenvalue, LargeEigenvaluesUseRelativeTolerance) {
  // Strong beta localizes the ground state at the singular wall, where
  // lambda1 approaches -(beta / 2a)^2 independently of the band width.
  const auto band = band_extrema(ShearProfile::linear(2, 3), 1.0);
  const auto r = principal_eigenvalue(band, 200.0, band.u0_min, {.tol = 1e-6, .want_vector = false});
  EXPECT_LT(r.est_error, 1e-6 * std::abs(r.lambda1));
  EXPECT_NEAR(r.lambda1, -2500.0, 1e-2);
}

TEST(PrincipalEigenvalue, Errors) {
  EXPECT_THROW(principal_eigenvalue(couette(), 1.0, -0.5), DomainError);
  EXPECT_THROW(principal_eigenvalue(couette(), NAN, -2.0), DomainError);
  const auto kolmogorov = band_extrema(ShearProfile::kolmogorov(), pi);
  EXPECT_THROW(principal_eigenvalue(kolmogorov, 1.0, -1.0), UnsupportedSingularity);
  EXPECT_NO_THROW(principal_eigenvalue(kolmogorov, 1.0, -1.5, {.tol = 1e-4}));
  try {
    principal_eigenvalue(couette(), 1.0, -1.0, {.tol = 1e-14, .n_max = 1024});
    FAIL() << "expected ConvergenceFailure";
  } catch (const ConvergenceFailure& e) {
    EXPECT_TRUE(std::isfinite(e.previous()));
    EXPECT_TRUE(std::isfinite(e.last()));
    EXPECT_NE(e.previous(), e.last());
  }
}

TEST(PrincipalEigenvalue, VariationalUpperBound) {
  const double tol = 1e-6;
  for (const auto& band : {couette(), parabola(7.0, 1.0), band_extrema(ShearProfile::linear(2, 3), 2.0)}) {
    const double d = band.d;
    auto phi = [d](double y) { return std::sin(pi * (y + d) / (2 * d)); };
    auto dphi = [d](double y) { return pi / (2 * d) * std::cos(pi * (y + d) / (2 * d)); };
    auto bump = [d](double y) { return (y + d) * (d - y) * (d - y); };
    auto dbump = [d](double y) { return (d - y) * (d - y) - 2 * (y + d) * (d - y); };
    for (double beta : {0.0, 1.0, 5.0}) {
      const double lam = lambda1(band, beta, band.u0_min, tol);
      EXPECT_GE(continuous_rayleigh_quotient(band, beta, band.u0_min, phi, dphi), lam - 10 * tol);
      EXPECT_GE(continuous_rayleigh_quotient(band, beta, band.u0_min, bump, dbump), lam - 10 * tol);
    }
  }
}

// ---- properties ---------------------------------------------------------

TEST(Lambda1Properties, StrictlyDecreasingInBeta) {
  for (const auto& band : {couette(), parabola(7.0, 1.0)}) {
    for (double dc : {0.0, 0.3, 3.0}) {
      const double c = band.u0_min - dc;
      double prev = lambda1(band, 0.0, c, 1e-7);
      for (double beta : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
        const double cur = lambda1(band, beta, c, 1e-7);
        EXPECT_LT(cur, prev) << "beta " << beta << " c " << c;
        prev = cur;
      }
    }
  }
}

TEST(Lambda1Properties, ContinuousInBeta) {
  const auto band = couette();
  const double base = lambda1(band, 2.0, -1.0, 1e-9);
  double prev = 0.0;
  for (double delta : {1e-2, 1e-3, 1e-4}) {
    const double diff = std::abs(lambda1(band, 2.0 + delta, -1.0, 1e-9) - base);
    if (prev > 0.0) EXPECT_NEAR(prev / diff, 10.0, 1.0);
    prev = diff;
  }
}

TEST(Lambda1Properties, ContinuousInProfile) {
  // Couette plus eps * y^3.
  const double base = lambda1(couette(), 1.0, -2.0, 1e-10);
  double prev = 0.0;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const auto band = band_extrema(ShearProfile::polynomial({0.0, 1.0, 0.0, eps}), 1.0);
    const double diff = std::abs(lambda1(band, 1.0, -2.0, 1e-10) - base);
    EXPECT_LT(diff, 10 * eps);
    if (prev > 0.0) EXPECT_NEAR(prev / diff, 10.0, 1.0);
    prev = diff;
  }
}

TEST(Lambda1Properties, FarSpeedLimitIsDirichletValue) {
  for (double beta : {0.0, 5.0, 50.0}) {
    EXPECT_NEAR(lambda1(couette(), beta, -1.0 - 1e6), pi * pi / 4.0, 1e-3);
    const auto band = parabola(8.0, 2.0);
    EXPECT_NEAR(lambda1(band, beta, band.u0_min - 1e6), pi * pi / 16.0, 1e-3);
  }
}

TEST(Lambda1Properties, ApproachesSingularValueAsSpeedTendsToMinimum) {
  const auto band = couette();
  const double endpoint = lambda1(band, 1.0, -1.0, 1e-8);
  double prev = 1e300;
  for (double delta : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const double err = std::abs(lambda1(band, 1.0, -1.0 - delta, 1e-8) - endpoint);
    EXPECT_LT(err, prev) << delta;
    prev = err;
  }
  EXPECT_LT(prev, 1e-2);
}

TEST(Lambda1Properties, PositiveWithoutBeta) {
  for (const auto& band : {couette(), band_extrema(ShearProfile::linear(2, 3), 1.0), parabola(7.0, 1.0)})
    EXPECT_GT(lambda1(band, 0.0, band.u0_min), 0.0) << band.profile.spec();
}

TEST(Lambda1Properties, ReflectionRoundTrips) {
  const auto up = band_extrema(ShearProfile::linear(1.5, 0.5), 1.0);
  const auto down = band_extrema(ShearProfile::linear(-1.5, 0.5), 1.0);
  ASSERT_EQ(down.orientation, Orientation::decreasing);
  for (double dc : {0.0, 0.7}) {
    const auto a = principal_eigenvalue(up, 3.0, up.u0_min - dc, {.tol = 1e-6});
    const auto b = principal_eigenvalue(down, 3.0, down.u0_min - dc, {.tol = 1e-6});
    EXPECT_DOUBLE_EQ(a.lambda1, b.lambda1);
    ASSERT_EQ(a.eigvec.size(), b.eigvec.size());
    const std::size_t n = a.eigvec.size();
    for (std::size_t j = 0; j < n; j += 97) {
      EXPECT_DOUBLE_EQ(a.nodes[j], -b.nodes[n - 1 - j]);
      EXPECT_DOUBLE_EQ(a.eigvec[j], b.eigvec[n - 1 - j]);
    }
    // For the decreasing profile the eigenfunction is concentrated near y = +d.
    EXPECT_LT(b.nodes.front(), b.nodes.back());
  }
}

// ---- critical_beta --------------------------------------------------------

TEST(CriticalBeta, CouetteMatchesPublishedValue) {
  const double beta = critical_beta(couette());
  EXPECT_NEAR(beta, 1.8352, 2e-3);
  EXPECT_NEAR(beta, 1.835246, 2e-4);  // dense-grid limit of the discretization
}

TEST(CriticalBeta, LinearScalesWithSlopeOverHalfWidth) {
  EXPECT_NEAR(critical_beta(band_extrema(ShearProfile::linear(2, 3), 1.0)), 3.6704, 4e-3);
  EXPECT_NEAR(critical_beta(band_extrema(ShearProfile::linear(-2, 3), 1.0)), 3.6704, 4e-3);
  EXPECT_NEAR(critical_beta(band_extrema(ShearProfile::linear(2, 3), 2.0)), 1.8352, 2e-3);
}

TEST(CriticalBeta, ParabolaTable) {
  struct Entry {
    double b, d, published;
  };
  const Entry table[] = {{7, 1, 13.2496}, {7, 2, 6.7922}, {7, 3, 4.6236}, {8, 1, 15.0898}, {8, 2, 7.7176},
                         {8, 3, 5.2450},  {9, 1, 16.9289}, {9, 2, 8.6416}, {9, 3, 5.8648}};
  for (const auto& e : table) {
    const double beta = critical_beta(parabola(e.b, e.d));
    EXPECT_NEAR(beta, e.published, 2e-2) << "b=" << e.b << " d=" << e.d;
    // An independent dense-matrix computation reproduces every entry to four decimals.
    EXPECT_NEAR(beta, e.published, 1e-3) << "b=" << e.b << " d=" << e.d;
  }
}

TEST(CriticalBeta, IgnoresParabolaOffset) {
  EXPECT_NEAR(critical_beta(band_extrema(ShearProfile::parabola(8, 5.0), 2.0)),
              critical_beta(band_extrema(ShearProfile::parabola(8, 0.0), 2.0)), 2e-4);
}

TEST(CriticalBeta, Errors) {
  EXPECT_THROW(critical_beta(band_extrema(ShearProfile::kolmogorov(), pi)), UnsupportedSingularity);
  EXPECT_THROW(critical_beta(couette(), 0.0), DomainError);
}

// ---- lambda_inf_over_c ----------------------------------------------------

TEST(InfOverC, NotAboveEndpointSample) {
  for (double beta : {0.0, 0.5, 1.0, 3.0}) {
    const auto band = couette();
    EXPECT_LE(lambda_inf_over_c(band, beta).inf_value, lambda1(band, beta, band.u0_min) + 1e-9);
  }
}

TEST(InfOverC, MatchesDenseScanOracle) {
  const auto band = couette();
  const double tol = 1e-6;
  const auto r = lambda_inf_over_c(band, 1.0, tol);
  double scan = lambda1(band, 1.0, band.u0_min, tol);
  for (int k = 1; k <= 2000; ++k) scan = std::min(scan, lambda1(band, 1.0, band.u0_min - 100.0 * k / 2000.0, tol));
  EXPECT_LE(r.inf_value, scan + 5 * tol);
  EXPECT_GE(r.inf_value, scan - 5 * tol);
  EXPECT_LE(r.argmin_c, band.u0_min);
}

TEST(InfOverC, FlatWithoutBeta) {
  const double tol = 1e-6;
  const auto r = lambda_inf_over_c(couette(), 0.0, tol);
  EXPECT_NEAR(r.inf_value, pi * pi / 4.0, tol);
  for (double c : {-1.5, -3.0, -50.0}) EXPECT_NEAR(lambda1(couette(), 0.0, c), pi * pi / 4.0, tol);
}

// ---- wave_speed_root ------------------------------------------------------

TEST(WaveSpeedRoot, FindsRootBelowMinimum) {
  const auto band = couette();
  const double tol = 1e-4;
  const double lam = lambda1(band, 10.0, -1.0);
  ASSERT_LT(lam, 0.0);
  const double L = 1.2 * 2 * pi / std::sqrt(-lam);
  const double c = wave_speed_root(band, 10.0, L, tol);
  EXPECT_LT(c, -1.0);
  EXPECT_LT(std::abs(lambda1(band, 10.0, c, 1e-8) + std::pow(2 * pi / L, 2)), tol);
}

TEST(WaveSpeedRoot, NoRootBelowCriticalBeta) {
  try {
    wave_speed_root(couette(), 1.0, 10.0);
    FAIL() << "expected NoRootError";
  } catch (const NoRootError& e) {
    EXPECT_GT(e.lambda_at_min(), 0.0);
    EXPECT_NEAR(e.target(), -std::pow(2 * pi / 10.0, 2), 1e-15);
  }
}

TEST(WaveSpeedRoot, BoundaryTargetReturnsMinimum) {
  const auto band = couette();
  const double lam = lambda1(band, 10.0, -1.0, 1e-7);
  const double L = 2 * pi / std::sqrt(-lam);
  EXPECT_DOUBLE_EQ(wave_speed_root(band, 10.0, L), band.u0_min);
}

TEST(WaveSpeedRoot, Errors) {
  EXPECT_THROW(wave_speed_root(couette(), 10.0, 0.0), DomainError);
  EXPECT_THROW(wave_speed_root(band_extrema(ShearProfile::kolmogorov(), pi), 10.0, 1.0), UnsupportedSingularity);
}

// ---- boundary_curve -------------------------------------------------------

TEST(BoundaryCurve, BelowCriticalBetaWavelengthIsInfinite) {
  const auto pts = boundary_curve(couette(), 0.0, 1.8, 7);
  ASSERT_EQ(pts.size(), 7u);
  for (const auto& p : pts) {
    EXPECT_TRUE(p.ok());
    EXPECT_GT(p.lambda1_at_u0min, 0.0);
    EXPECT_TRUE(std::isinf(p.L_crit));
  }
  EXPECT_EQ(pts.front().beta, 0.0);
  EXPECT_EQ(pts.back().beta, 1.8);
}

TEST(BoundaryCurve, AboveCriticalBetaWavelengthDecreases) {
  const auto pts = boundary_curve(couette(), 2.0, 10.0, 9);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    ASSERT_TRUE(std::isfinite(pts[k].L_crit));
    EXPECT_NEAR(pts[k].L_crit, 2 * pi / std::sqrt(-pts[k].lambda1_at_u0min), 1e-12);
    if (k > 0) {
      EXPECT_LT(pts[k].L_crit, pts[k - 1].L_crit);
      EXPECT_GT(pts[k].beta, pts[k - 1].beta);
    }
  }
}

TEST(BoundaryCurve, OrderedAndIdenticalRegardlessOfThreads) {
  const auto band = band_extrema(ShearProfile::linear(2, 3), 1.0);
  const auto serial = boundary_curve(band, 1.0, 30.0, 12, 1e-6, 1);
  const auto parallel = boundary_curve(band, 1.0, 30.0, 12, 1e-6, 4);
  for (std::size_t k = 0; k < serial.size(); ++k) {
    EXPECT_EQ(serial[k].beta, parallel[k].beta);
    EXPECT_EQ(serial[k].lambda1_at_u0min, parallel[k].lambda1_at_u0min);
  }
}

TEST(BoundaryCurve, LinearCurvesForDifferentWidthsConverge) {
  auto gap = [](double beta) {
    double lo = 1e300, hi = 0.0;
    for (double d : {1.0, 2.0, 3.0}) {
      const auto p = boundary_curve(band_extrema(ShearProfile::linear(2, 3), d), beta, beta + 1.0, 2)[0];
      lo = std::min(lo, p.L_crit);
      hi = std::max(hi, p.L_crit);
    }
    return hi - lo;
  };
  EXPECT_LT(gap(8.0), gap(4.0));
  EXPECT_LT(gap(16.0), gap(8.0));
  EXPECT_LT(gap(200.0), 1e-3);
}

TEST(BoundaryCurve, Errors) {
  EXPECT_THROW(boundary_curve(couette(), 1.0, 1.0, 5), DomainError);
  EXPECT_THROW(boundary_curve(couette(), 0.0, 1.0, 1), DomainError);
}

// ---- scaling_check --------------------------------------------------------

TEST(ScalingCheck, IdentityAtUnitFactor) {
  const auto s = scaling_check(couette(), 1.0, 3.0, -1.5);
  EXPECT_EQ(s.lhs, s.rhs);
}

TEST(ScalingCheck, HalfAmplitudeCouette) {
  const double tol = 1e-6;
  const auto s = scaling_check(couette(), 0.5, 4.0, -1.0, tol);
  EXPECT_LT(std::abs(s.lhs - s.rhs), 10 * tol);
}

TEST(ScalingCheck, ScaledCriticalBetaStaysCritical) {
  const auto s = scaling_check(couette(), 0.9, 0.9 * 1.8352, -0.9);
  EXPECT_LT(std::abs(s.lhs), 5e-3);
  EXPECT_LT(std::abs(s.lhs - s.rhs), 1e-5);
}

TEST(ScalingCheck, Errors) {
  EXPECT_THROW(scaling_check(couette(), 0.0, 1.0, -2.0), DomainError);
  EXPECT_THROW(scaling_check(couette(), 1.5, 1.0, -2.0), DomainError);
  EXPECT_THROW(scaling_check(couette(), 0.5, 1.0, -0.4), DomainError);
}
