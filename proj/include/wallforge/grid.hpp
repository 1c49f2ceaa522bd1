#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wallforge/potential.hpp"

namespace wallforge {

/// Uniform grid on [-L, L] with an odd node count, so x = 0 is a node.
class Grid {
public:
  /// Throws std::invalid_argument unless L > 0 and n >= 201 is odd.
  Grid(double half_width, int n);

  /// Coarsest admissible grid on [-L, L] whose spacing resolves the corner
  /// layer of width eps^{2/3} with at least `nodes_per_layer` cells.
  static Grid for_eps(double half_width, double eps, double nodes_per_layer = 20.0);

  double half_width() const noexcept { return half_width_; }
  int size() const noexcept { return n_; }
  double spacing() const noexcept { return h_; }
  double x(int i) const noexcept { return -half_width_ + i * h_; }
  int center() const noexcept { return (n_ - 1) / 2; }
  std::vector<double> nodes() const;

  /// True when h <= eps^{2/3} / nodes_per_layer.
  bool resolves(double eps, double nodes_per_layer = 20.0) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;

private:
  double half_width_;
  int n_;
  double h_;
};

/// Samples (u_i, v_i) of a wall profile on a grid.
struct Profile {
  Grid grid;
  std::vector<double> u;
  std::vector<double> v;

  Profile(Grid g, std::vector<double> u_values, std::vector<double> v_values);

  /// Samples f and g on the grid nodes.
  static Profile sample(const Grid& g, const std::function<double(double)>& f,
                        const std::function<double(double)>& g_fn);

  /// Overwrites the end values with (u, v)(-L) = (0, 1) and (u, v)(L) = (1, 0).
  void pin_boundary() noexcept;
  bool boundary_pinned() const noexcept;
};

struct FieldPair {
  std::vector<double> u;
  std::vector<double> v;
};

/// Discrete E_eps: cell sums of 1/2 u'^2 + 1/2 eps^2 v'^2 with forward
/// differences plus the trapezoid rule on V. eps = 0 gives the reduced energy.
/// Throws std::invalid_argument for eps < 0.
double discrete_energy(const Profile& p, double eps, const CouplingParams& params);

/// Gradient of discrete_energy with respect to the interior values.
FieldPair discrete_energy_gradient(const Profile& p, double eps, const CouplingParams& params);

/// Central-difference residuals of  u'' + u(1-u^2-mu v^2)  and
/// eps^2 v'' + v(1-v^2-mu u^2)  at the interior nodes (boundary entries 0).
/// Throws std::invalid_argument for eps <= 0.
FieldPair el_residual(const Profile& p, double eps, const CouplingParams& params);

/// Infinity norm over both components.
double residual_norm(const FieldPair& r);

/// Integral of v'^2 with forward differences on cells.
double vprime_squared(const Profile& p);

class LevelError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Shape-preserving piecewise-cubic interpolant of one sampled field.
class MonotoneInterpolant {
public:
  MonotoneInterpolant(const Grid& g, std::span<const double> values);
  /// Arbitrary strictly increasing abscissae (at least four).
  MonotoneInterpolant(std::vector<double> xs, std::span<const double> values);
  ~MonotoneInterpolant();
  MonotoneInterpolant(MonotoneInterpolant&&) noexcept;
  MonotoneInterpolant& operator=(MonotoneInterpolant&&) noexcept;

  double operator()(double x) const;
  double derivative(double x) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// (u, v) at an arbitrary x in [-L, L].
std::pair<double, double> interpolate(const Profile& p, double x);

/// x with f(x) = c for a sampled monotone field. Fails with LevelError if c is
/// not bracketed by the samples or if f - c changes sign more than once.
double find_level(const Grid& g, std::span<const double> values, double c, double tol = 1e-12);

/// The unique x with u(x) = v(x).
double crossing_point(const Profile& p, double tol = 1e-12);
/// The unique x with u(x) = c.
double level_point(const Profile& p, double c, double tol = 1e-12);

/// CSV with header `x,u,v`, 17 significant digits.
void write_profile_csv(std::ostream& out, const Profile& p);

}  // namespace wallforge
