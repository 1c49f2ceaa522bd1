#pragma once

#include <vector>

#include "wallforge/potential.hpp"
#include "wallforge/solver.hpp"

namespace wallforge {

/// Coefficients of the corner-layer limit  phi'' = phi^3 + a t phi:
/// k = (u0^2)'(z) = sqrt2 (mu-1) / mu^{3/2} and a = mu k.
struct PainleveCoefficient {
  double k;
  double a;
};

PainleveCoefficient painleve_coefficient(const CouplingParams& params);

/// Boundary-value problem for  phi'' = phi^3 + a t phi  on [t_minus, t_plus]
/// with phi(t_minus) = sqrt(-a t_minus) and phi(t_plus) = 0, m nodes.
struct PainleveProblem {
  double a;
  double t_minus;
  double t_plus;
  int m;

  /// Validates a > 0, t_minus < 0 < t_plus and m >= 5.
  PainleveProblem(double coefficient, double t_minus, double t_plus, int m);

  /// Coefficient a = mu (u0^2)'(z) of the given coupling.
  static PainleveProblem for_coupling(const CouplingParams& params, double t_minus, double t_plus, int m);
  /// Symmetric window +-scale * a^{-1/3}.
  static PainleveProblem for_coupling(const CouplingParams& params, double scale = 12.0, int m = 2001);

  double spacing() const noexcept { return (t_plus - t_minus) / (m - 1); }
};

struct PainleveSolution {
  std::vector<double> t;
  std::vector<double> phi;
  double residual = 0.0;
  int iterations = 0;
};

/// Finite-difference residual  phi'' - phi^3 - a t phi  at the interior nodes.
std::vector<double> painleve_residual(const PainleveProblem& prob, const std::vector<double>& phi);

/// Damped Newton from phi = sqrt(max(-a t, 0)) with tridiagonal solves.
/// Throws SolverError on divergence or if the converged solution is not
/// positive in the interior and decreasing for t >= 0.
PainleveSolution hastings_mcleod_solve(const PainleveProblem& prob, double tol = 1e-10, int max_iterations = 100);

/// phi_eps(t) = eps^{-1/3} v_eps(z_eps + eps^{2/3} t) sampled on `count`
/// equally spaced t in [t_minus, t_plus].
struct RescaledProfile {
  std::vector<double> t;
  std::vector<double> phi;
  double eps = 0.0;
  double z_eps = 0.0;
};

/// Throws std::invalid_argument if the window maps outside the grid.
RescaledProfile rescale_profile(const SolveResult& sr, double t_minus, double t_plus, int count);

/// sup |phi_eps - phi0| over the samples of rp inside [lo, hi] and inside the
/// domain of phi0; phi0 is resampled by monotone cubic interpolation.
double painleve_distance(const RescaledProfile& rp, const PainleveSolution& phi0, double lo, double hi);

/// (u_eps^2)'(z_eps) from the monotone interpolant.
double measured_corner_slope(const SolveResult& sr);

/// max over t in [-R, R] of |h_eps(t)| / eps^{2/3} with
/// h_eps(t) = -mu [ u^2(z + eps^{2/3} t) - u^2(z) - (u^2)'(z) eps^{2/3} t ].
double corner_remainder(const SolveResult& sr, const CouplingParams& params, double R = 5.0, int samples = 401);

}  // namespace wallforge
