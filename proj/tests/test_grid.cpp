#include <cmath>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "wallforge/grid.hpp"
#include "wallforge/tf_limit.hpp"

using namespace wallforge;

namespace {

Profile tf_profile(const Grid& g, double mu) {
  const CouplingParams p(mu);
  const TFProfile tf = tf_build(p, tf_centered_z(p));
  Profile prof = Profile::sample(g, [&](double x) { return tf_u(tf, x); }, [&](double x) { return tf_v(tf, x); });
  prof.pin_boundary();
  return prof;
}

// Smooth, non-trivial test profile with both fields varying.
Profile smooth_profile(const Grid& g) {
  Profile p = Profile::sample(
      g, [](double x) { return 0.5 * (1.0 + std::tanh(x / 1.7)); },
      [](double x) { return 0.5 * (1.0 - std::tanh((x + 0.3) / 0.9)); });
  p.pin_boundary();
  return p;
}

}  // namespace

TEST(Grid, Validation) {
  EXPECT_THROW(Grid(20.0, 200), std::invalid_argument);
  EXPECT_THROW(Grid(20.0, 199), std::invalid_argument);
  EXPECT_THROW(Grid(0.0, 301), std::invalid_argument);
  const Grid g(20.0, 401);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.1);
  EXPECT_EQ(g.x(g.center()), 0.0);
  EXPECT_DOUBLE_EQ(g.x(0), -20.0);
  EXPECT_NEAR(g.x(400), 20.0, 1e-13);
}

TEST(Grid, ResolutionRule) {
  for (double eps : {0.3, 0.1, 0.02}) {
    const Grid g = Grid::for_eps(20.0, eps);
    EXPECT_TRUE(g.resolves(eps));
    EXPECT_LE(g.spacing(), std::cbrt(eps * eps) / 20.0);
    EXPECT_EQ(g.size() % 2, 1);
  }
  EXPECT_FALSE(Grid(20.0, 301).resolves(0.1));
}

TEST(Grid, BoundaryPinning) {
  Profile p = smooth_profile(Grid(10.0, 201));
  EXPECT_TRUE(p.boundary_pinned());
  p.u.front() = 0.1;
  EXPECT_FALSE(p.boundary_pinned());
  EXPECT_THROW(Profile(Grid(10.0, 201), std::vector<double>(5), std::vector<double>(201)), std::invalid_argument);
}

TEST(Grid, ReducedEnergyConvergesToTF) {
  // Trapezoid/forward-difference energy of the sampled TF wall at eps = 0
  // approaches the exact value at second order away from the corner; the
  // corner kink limits the rate, so only shrinking errors are asserted.
  const double e0 = tf_energy(tf_build(CouplingParams(3.0), 0.0));
  double prev = INFINITY;
  for (int n : {2001, 8001, 32001}) {
    const double err = std::abs(discrete_energy(tf_profile(Grid(20.0, n), 3.0), 0.0, CouplingParams(3.0)) - e0);
    EXPECT_LT(err, prev);
    prev = err;
  }
  EXPECT_LT(prev, 1e-5);
}

TEST(Grid, EnergyRejectsNegativeEps) {
  EXPECT_THROW(discrete_energy(smooth_profile(Grid(10.0, 201)), -0.1, CouplingParams(3.0)), std::invalid_argument);
  EXPECT_THROW(el_residual(smooth_profile(Grid(10.0, 201)), 0.0, CouplingParams(3.0)), std::invalid_argument);
}

TEST(Grid, EnergyGradientMatchesFiniteDifferences) {
  const CouplingParams params(3.0);
  const double eps = 0.3;
  Profile p = smooth_profile(Grid(10.0, 201));
  const FieldPair g = discrete_energy_gradient(p, eps, params);
  for (std::size_t i : {1u, 57u, 100u, 163u, 199u}) {
    for (int comp = 0; comp < 2; ++comp) {
      std::vector<double>& f = comp == 0 ? p.u : p.v;
      const double keep = f[i];
      const double d = 1e-6;
      f[i] = keep + d;
      const double ep = discrete_energy(p, eps, params);
      f[i] = keep - d;
      const double em = discrete_energy(p, eps, params);
      f[i] = keep;
      const double fd = (ep - em) / (2 * d);
      const double an = comp == 0 ? g.u[i] : g.v[i];
      EXPECT_NEAR(an, fd, 1e-8 + 1e-6 * std::abs(fd)) << "node " << i << " comp " << comp;
    }
  }
  EXPECT_EQ(g.u.front(), 0.0);
  EXPECT_EQ(g.v.back(), 0.0);
}

TEST(Grid, GradientIsScaledResidual) {
  // dE/du_i = -h * (EL residual)_i on a uniform grid
  const CouplingParams params(2.5);
  const double eps = 0.2;
  const Profile p = smooth_profile(Grid(10.0, 401));
  const double h = p.grid.spacing();
  const FieldPair g = discrete_energy_gradient(p, eps, params);
  const FieldPair r = el_residual(p, eps, params);
  for (std::size_t i = 1; i + 1 < p.u.size(); ++i) {
    EXPECT_NEAR(g.u[i], -h * r.u[i], 1e-12);
    EXPECT_NEAR(g.v[i], -h * r.v[i], 1e-12);
  }
}

TEST(Grid, ResidualOfTanhKink) {
  // u = tanh(x/sqrt2), v = 0 solves the u-equation exactly; the discrete
  // residual is the O(h^2) truncation error.
  const CouplingParams params(3.0);
  for (int n : {401, 801}) {
    Profile p = Profile::sample(Grid(10.0, n), [](double x) { return std::tanh(x / std::sqrt(2.0)); },
                                [](double) { return 0.0; });
    const FieldPair r = el_residual(p, 0.1, params);
    const double h = p.grid.spacing();
    EXPECT_LT(residual_norm(r), 0.2 * h * h);
  }
}

TEST(Grid, VPrimeSquaredOfLinearRamp) {
  const Grid g(10.0, 201);
  const Profile p = Profile::sample(g, [](double) { return 0.0; }, [](double x) { return 0.05 * x; });
  EXPECT_NEAR(vprime_squared(p), 0.05 * 0.05 * 20.0, 1e-14);
}

TEST(Grid, LevelFinder) {
  const Grid g(10.0, 2001);
  const Profile p = smooth_profile(g);
  const double x = find_level(g, p.u, 0.75);
  EXPECT_NEAR(x, 1.7 * std::atanh(0.5), 1e-7);
  EXPECT_NEAR(level_point(p, 0.75), x, 1e-15);
  EXPECT_THROW(find_level(g, p.u, 2.0), LevelError);

  std::vector<double> bumpy(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) bumpy[static_cast<std::size_t>(i)] = std::sin(g.x(i));
  EXPECT_THROW(find_level(g, bumpy, 0.1), LevelError);
}

TEST(Grid, CrossingOfSymmetricPair) {
  const Profile p = Profile::sample(
      Grid(10.0, 1001), [](double x) { return 0.5 * (1.0 + std::tanh(x - 0.25)); },
      [](double x) { return 0.5 * (1.0 - std::tanh(x - 0.25)); });
  EXPECT_NEAR(crossing_point(p), 0.25, 1e-9);
}

TEST(Grid, Interpolation) {
  const Grid g(10.0, 2001);
  const Profile p = smooth_profile(g);
  const auto [u, v] = interpolate(p, 0.123);
  EXPECT_NEAR(u, 0.5 * (1.0 + std::tanh(0.123 / 1.7)), 1e-7);
  EXPECT_NEAR(v, 0.5 * (1.0 - std::tanh((0.123 + 0.3) / 0.9)), 1e-7);
  const MonotoneInterpolant f(g, p.u);
  EXPECT_EQ(f(g.x(37)), p.u[37]);
  EXPECT_NEAR(f.derivative(0.0), 0.5 / 1.7, 1e-5);
  EXPECT_THROW(f(10.5), std::out_of_range);
}

TEST(Grid, ProfileCsv) {
  const Profile p = smooth_profile(Grid(10.0, 201));
  std::ostringstream os;
  write_profile_csv(os, p);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "x,u,v");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 201);
  EXPECT_NE(os.str().find("\n-10,0,1\n"), std::string::npos);
}
