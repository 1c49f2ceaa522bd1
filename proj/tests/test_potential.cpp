#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "wallforge/potential.hpp"
#include "wallforge/validate.hpp"

using namespace wallforge;

TEST(Coupling, RejectsMuAtMostOne) {
  EXPECT_THROW(CouplingParams{1.0}, std::invalid_argument);
  EXPECT_THROW(CouplingParams{0.5}, std::invalid_argument);
  EXPECT_THROW(CouplingParams{std::numeric_limits<double>::quiet_NaN()}, std::invalid_argument);
  EXPECT_THROW(CouplingParams{INFINITY}, std::invalid_argument);
  EXPECT_DOUBLE_EQ(CouplingParams(3.0).mu(), 3.0);
}

TEST(Potential, ClosedFormValues) {
  const CouplingParams p(3.0);
  EXPECT_EQ(potential_value(p, 1.0, 0.0), 0.0);
  EXPECT_EQ(potential_value(p, 0.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(potential_value(p, 0.0, 0.0), 0.25);
  EXPECT_DOUBLE_EQ(potential_value(p, 1.0, 1.0), 1.25);
}

TEST(Potential, GradientValues) {
  const CouplingParams p(3.0);
  const Gradient2 g0 = potential_gradient(p, 1.0, 0.0);
  EXPECT_EQ(g0.du, 0.0);
  EXPECT_EQ(g0.dv, 0.0);
  const Gradient2 g1 = potential_gradient(p, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(g1.du, 3.0);
  EXPECT_DOUBLE_EQ(g1.dv, 3.0);
}

TEST(Potential, DerivativesMatchFiniteDifferences) {
  for (double mu : {1.5, 3.0, 7.0}) {
    const PotentialModel m = PotentialModel::standard(CouplingParams(mu));
    EXPECT_LE(gradient_fd_error(m), 1e-6) << "mu " << mu;
    EXPECT_LE(hessian_fd_error(m), 1e-5) << "mu " << mu;
  }
}

TEST(Potential, WellsAreNonDegenerate) {
  const CouplingParams p(3.0);
  for (auto [u, v] : {std::pair{1.0, 0.0}, std::pair{0.0, 1.0}}) {
    const Hessian2 H = potential_hessian(p, u, v);
    const auto ev = H.eigenvalues();
    EXPECT_GT(ev[0], 0.0);
    EXPECT_LE(ev[0], ev[1]);
  }
  // diag(2, mu - 1) at (1, 0)
  const auto ev = potential_hessian(p, 1.0, 0.0).eigenvalues();
  EXPECT_DOUBLE_EQ(ev[0], 2.0);
  EXPECT_DOUBLE_EQ(ev[1], 2.0);
  const auto ev5 = potential_hessian(CouplingParams(5.0), 1.0, 0.0).eigenvalues();
  EXPECT_DOUBLE_EQ(ev5[0], 2.0);
  EXPECT_DOUBLE_EQ(ev5[1], 4.0);
}

TEST(Potential, EvenInEachComponent) {
  const CouplingParams p(2.7);
  for (double u : {-1.3, 0.2, 0.9}) {
    for (double v : {-0.4, 0.7, 1.8}) {
      EXPECT_EQ(potential_value(p, u, v), potential_value(p, -u, v));
      EXPECT_EQ(potential_value(p, u, v), potential_value(p, u, -v));
    }
  }
}

TEST(Potential, CoercivityScan) {
  const CouplingParams p(3.0);
  EXPECT_TRUE(verify_w4(p, 2.0, 0.1, 10000));
  EXPECT_FALSE(verify_w4(p, 0.1, 0.1, 10000));
  EXPECT_THROW(verify_w4(p, -1.0, 0.1, 100), std::invalid_argument);
  EXPECT_THROW(verify_w4(p, 1.0, 0.0, 100), std::invalid_argument);
  EXPECT_THROW(verify_w4(p, 1.0, 0.1, 0), std::invalid_argument);
}

TEST(Potential, CoercivityOnAxis) {
  // grad V . (R, 0) = R^2 (R^2 - 1)
  const CouplingParams p(4.0);
  for (double R : {1.2, 2.0, 5.0}) {
    const Gradient2 g = potential_gradient(p, R, 0.0);
    EXPECT_NEAR(g.du * R, R * R * (R * R - 1.0), 1e-12 * R * R * R * R);
  }
}
