#pragma once

#include <array>

namespace wallforge {

/// Inter-component coupling. Only the segregated regime mu > 1 is supported.
class CouplingParams {
public:
  /// Throws std::invalid_argument unless mu is finite and mu > 1.
  explicit CouplingParams(double mu);

  double mu() const noexcept { return mu_; }

private:
  double mu_;
};

struct Gradient2 {
  double du;
  double dv;
};

struct Hessian2 {
  double uu;
  double uv;
  double vv;

  /// Ascending eigenvalues of the symmetric 2x2 matrix.
  std::array<double, 2> eigenvalues() const noexcept;
};

// V(u,v) = 1/4 (u^2+v^2-1)^2 + (mu-1)/2 u^2 v^2. The Euler-Lagrange
// equations of  1/2 u'^2 + 1/2 eps^2 v'^2 + V  are
//   u'' + u(1 - u^2 - mu v^2) = 0,   eps^2 v'' + v(1 - v^2 - mu u^2) = 0.
inline double potential_value(const CouplingParams& p, double u, double v) noexcept {
  const double u2 = u * u;
  const double v2 = v * v;
  const double s = u2 + v2 - 1.0;
  return 0.25 * s * s + 0.5 * (p.mu() - 1.0) * u2 * v2;
}

inline Gradient2 potential_gradient(const CouplingParams& p, double u, double v) noexcept {
  const double s = u * u + v * v - 1.0;
  const double m1 = p.mu() - 1.0;
  return {u * s + m1 * u * v * v, v * s + m1 * u * u * v};
}

inline Hessian2 potential_hessian(const CouplingParams& p, double u, double v) noexcept {
  const double mu = p.mu();
  const double u2 = u * u;
  const double v2 = v * v;
  return {3.0 * u2 + mu * v2 - 1.0, 2.0 * mu * u * v, mu * u2 + 3.0 * v2 - 1.0};
}

/// Coercivity scan: checks  grad V(u,v).(u,v) >= c0 |(u,v)|^2  on a
/// deterministic polar lattice of the closed positive quadrant with radii in
/// [r0, 2 r0 + 1]. sample_count is the approximate total number of points.
/// Throws std::invalid_argument for r0 <= 0, c0 <= 0 or sample_count < 1.
bool verify_w4(const CouplingParams& p, double r0, double c0, int sample_count);

}  // namespace wallforge
