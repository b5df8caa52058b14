#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "qgwave/sturm.hpp"

using namespace qgwave;

namespace {

Eigen::MatrixXd dense(const DirichletSchrodinger& op) {
  const auto n = static_cast<Eigen::Index>(op.size());
  const double h2 = op.h() * op.h();
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    t(i, i) = 2.0 / h2 + op.potential()[static_cast<std::size_t>(i)];
    if (i > 0) t(i, i - 1) = t(i - 1, i) = -1.0 / h2;
  }
  return t;
}

DirichletSchrodinger random_operator(std::mt19937_64& rng, std::size_t n, double amplitude) {
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return DirichletSchrodinger(2.0 / static_cast<double>(n + 1), std::move(v));
}

}  // namespace

TEST(DirichletSchrodinger, RejectsBadInput) {
  EXPECT_THROW(DirichletSchrodinger(0.0, {1.0}), DomainError);
  EXPECT_THROW(DirichletSchrodinger(0.1, {}), DomainError);
  EXPECT_THROW(DirichletSchrodinger(0.1, {1.0, NAN}), DomainError);
}

TEST(DirichletSchrodinger, FreeLaplacianMatchesClosedForm) {
  // Eigenvalues of h^-2 tridiag(-1,2,-1) are (4/h^2) sin^2(k pi / (2(n+1))).
  const std::size_t n = 255;
  const double h = 2.0 / (n + 1);
  const DirichletSchrodinger op(h, std::vector<double>(n, 0.0));
  const double exact = 4.0 / (h * h) * std::pow(std::sin(std::numbers::pi / (2.0 * (n + 1))), 2);
  EXPECT_NEAR(op.smallest_eigenvalue(), exact, 1e-12 * exact);
  EXPECT_EQ(op.count_below(exact * (1 - 1e-9)), 0u);
  EXPECT_EQ(op.count_below(exact * (1 + 1e-9)), 1u);
}

TEST(DirichletSchrodinger, SmallestEigenvalueMatchesDenseSolver) {
  std::mt19937_64 rng(7);
  for (std::size_t n : {5u, 17u, 64u, 200u}) {
    for (double amp : {0.0, 1.0, 50.0, 5000.0}) {
      const auto op = random_operator(rng, n, amp);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(op), Eigen::EigenvaluesOnly);
      const double ref = es.eigenvalues()(0);
      EXPECT_NEAR(op.smallest_eigenvalue(), ref, 1e-9 * std::max(1.0, std::abs(ref))) << n << " " << amp;
    }
  }
}

TEST(DirichletSchrodinger, CountBelowMatchesDenseSpectrum) {
  std::mt19937_64 rng(11);
  const auto op = random_operator(rng, 40, 300.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(op), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  for (Eigen::Index k = 0; k + 1 < ev.size(); ++k) {
    const double mid = 0.5 * (ev(k) + ev(k + 1));
    EXPECT_EQ(op.count_below(mid), static_cast<std::size_t>(k + 1));
  }
  EXPECT_EQ(op.count_below(ev(0) - 1.0), 0u);
}

TEST(DirichletSchrodinger, SingularLikePotentialMatchesDenseSolver) {
  // V = -c / (y + d) sampled on interior nodes, the shape met at c = min u0.
  for (std::size_t n : {63u, 255u}) {
    const double d = 1.0, h = 2.0 * d / (n + 1);
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = -1.8 / ((j + 1) * h);
    const DirichletSchrodinger op(h, v);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(op), Eigen::EigenvaluesOnly);
    EXPECT_NEAR(op.smallest_eigenvalue(), es.eigenvalues()(0), 1e-9 * std::max(1.0, std::abs(es.eigenvalues()(0))));
  }
}

TEST(DirichletSchrodinger, GroundStateMatchesDenseEigenvectorAndHasOneSign) {
  std::mt19937_64 rng(3);
  const auto op = random_operator(rng, 120, 80.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(op));
  const double lambda = op.smallest_eigenvalue();
  const auto x = op.ground_state(lambda);
  ASSERT_EQ(x.size(), op.size());
  Eigen::VectorXd ours = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  ours.normalize();
  const Eigen::VectorXd ref = es.eigenvectors().col(0);
  EXPECT_NEAR(std::abs(ours.dot(ref)), 1.0, 1e-10);
  for (double v : x) EXPECT_GT(v, 0.0);
  EXPECT_NEAR(op.rayleigh_quotient(x), lambda, 1e-9 * std::max(1.0, std::abs(lambda)));
}

TEST(DirichletSchrodinger, RayleighQuotientBoundsSmallestEigenvalue) {
  std::mt19937_64 rng(5);
  const auto op = random_operator(rng, 50, 20.0);
  const double lambda = op.smallest_eigenvalue();
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(op.size());
    for (double& v : x) v = dist(rng);
    EXPECT_GE(op.rayleigh_quotient(x), lambda - 1e-9);
  }
  EXPECT_GE(lambda, op.lower_bound());
}
