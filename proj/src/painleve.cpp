#include "wallforge/painleve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wallforge/tf_limit.hpp"

namespace wallforge {
namespace {

// Thomas algorithm for a tridiagonal system with constant off-diagonal `off`.
void solve_tridiagonal(std::vector<double>& diag, double off, std::vector<double>& rhs) {
  const std::size_t m = diag.size();
  for (std::size_t k = 1; k < m; ++k) {
    const double w = off / diag[k - 1];
    diag[k] -= w * off;
    rhs[k] -= w * rhs[k - 1];
  }
  rhs[m - 1] /= diag[m - 1];
  for (std::size_t k = m - 1; k-- > 0;) {
    rhs[k] = (rhs[k] - off * rhs[k + 1]) / diag[k];
  }
}

double l2(const std::vector<double>& a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

PainleveCoefficient painleve_coefficient(const CouplingParams& params) {
  const double k = tf_u_sq_prime_at_corner(params);
  return {k, params.mu() * k};
}

PainleveProblem::PainleveProblem(double coefficient, double lo, double hi, int nodes)
    : a(coefficient), t_minus(lo), t_plus(hi), m(nodes) {
  if (!(a > 0.0) || !(t_minus < 0.0) || !(t_plus > 0.0) || m < 5) {
    throw std::invalid_argument("PainleveProblem: need a > 0, t_minus < 0 < t_plus and m >= 5");
  }
}

PainleveProblem PainleveProblem::for_coupling(const CouplingParams& params, double lo, double hi, int nodes) {
  return PainleveProblem(painleve_coefficient(params).a, lo, hi, nodes);
}

PainleveProblem PainleveProblem::for_coupling(const CouplingParams& params, double scale, int nodes) {
  const double unit = std::cbrt(1.0 / painleve_coefficient(params).a);
  return for_coupling(params, -scale * unit, scale * unit, nodes);
}

std::vector<double> painleve_residual(const PainleveProblem& prob, const std::vector<double>& phi) {
  const double h = prob.spacing();
  const double inv_h2 = 1.0 / (h * h);
  std::vector<double> r(static_cast<std::size_t>(prob.m - 2));
  for (int j = 1; j + 1 < prob.m; ++j) {
    const auto i = static_cast<std::size_t>(j);
    const double t = prob.t_minus + j * h;
    r[i - 1] = (phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) * inv_h2 - phi[i] * phi[i] * phi[i] - prob.a * t * phi[i];
  }
  return r;
}

PainleveSolution hastings_mcleod_solve(const PainleveProblem& prob, double tol, int max_iterations) {
  const double h = prob.spacing();
  const double inv_h2 = 1.0 / (h * h);
  const auto m = static_cast<std::size_t>(prob.m);

  PainleveSolution sol;
  sol.t.resize(m);
  sol.phi.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    sol.t[j] = prob.t_minus + static_cast<double>(j) * h;
    sol.phi[j] = std::sqrt(std::max(-prob.a * sol.t[j], 0.0));
  }
  sol.t.back() = prob.t_plus;
  sol.phi.front() = std::sqrt(-prob.a * prob.t_minus);
  sol.phi.back() = 0.0;

  std::vector<double> r = painleve_residual(prob, sol.phi);
  for (int it = 0;; ++it) {
    sol.residual = max_abs(r);
    sol.iterations = it;
    if (sol.residual <= tol) {
      break;
    }
    if (it >= max_iterations) {
      throw SolverError(SolverError::Kind::NonConvergence,
                        "hastings_mcleod_solve: no convergence in " + std::to_string(max_iterations) + " iterations",
                        it, sol.residual);
    }
    std::vector<double> diag(m - 2);
    std::vector<double> step(m - 2);
    for (std::size_t i = 1; i + 1 < m; ++i) {
      diag[i - 1] = -2.0 * inv_h2 - 3.0 * sol.phi[i] * sol.phi[i] - prob.a * sol.t[i];
      step[i - 1] = -r[i - 1];
    }
    solve_tridiagonal(diag, inv_h2, step);
    if (!std::all_of(step.begin(), step.end(), [](double x) { return std::isfinite(x); })) {
      throw SolverError(SolverError::Kind::SingularJacobian, "hastings_mcleod_solve: singular Jacobian", it,
                        sol.residual);
    }

    const double merit = l2(r);
    double lambda = 1.0;
    std::vector<double> trial = sol.phi;
    std::vector<double> trial_r;
    bool accepted = false;
    for (int bt = 0; bt <= 30; ++bt) {
      for (std::size_t i = 1; i + 1 < m; ++i) {
        trial[i] = sol.phi[i] + lambda * step[i - 1];
      }
      trial_r = painleve_residual(prob, trial);
      if (l2(trial_r) < (1.0 - 1e-4 * lambda) * merit) {
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      throw SolverError(SolverError::Kind::NonConvergence, "hastings_mcleod_solve: line search failed", it,
                        sol.residual);
    }
    sol.phi = std::move(trial);
    r = std::move(trial_r);
  }

  for (std::size_t i = 1; i + 1 < m; ++i) {
    if (!(sol.phi[i] > 0.0)) {
      throw SolverError(SolverError::Kind::InvariantViolation,
                        "hastings_mcleod_solve: non-positive value at t = " + std::to_string(sol.t[i]), -1,
                        sol.residual);
    }
    if (sol.t[i] >= 0.0 && !(sol.phi[i + 1] < sol.phi[i])) {
      throw SolverError(SolverError::Kind::InvariantViolation,
                        "hastings_mcleod_solve: not decreasing at t = " + std::to_string(sol.t[i]), -1,
                        sol.residual);
    }
  }
  return sol;
}

RescaledProfile rescale_profile(const SolveResult& sr, double t_minus, double t_plus, int count) {
  if (!(t_minus < t_plus) || count < 2) {
    throw std::invalid_argument("rescale_profile: need t_minus < t_plus and count >= 2");
  }
  const double layer = std::cbrt(sr.eps * sr.eps);
  const double amplitude = std::cbrt(sr.eps);
  const double L = sr.profile.grid.half_width();
  if (sr.z_eps + layer * t_minus < -L || sr.z_eps + layer * t_plus > L) {
    throw std::invalid_argument("rescale_profile: window maps outside the grid");
  }
  const MonotoneInterpolant v(sr.profile.grid, sr.profile.v);
  RescaledProfile rp;
  rp.eps = sr.eps;
  rp.z_eps = sr.z_eps;
  rp.t.resize(static_cast<std::size_t>(count));
  rp.phi.resize(rp.t.size());
  for (int j = 0; j < count; ++j) {
    const double t = j + 1 == count ? t_plus : t_minus + (t_plus - t_minus) * j / (count - 1);
    rp.t[static_cast<std::size_t>(j)] = t;
    rp.phi[static_cast<std::size_t>(j)] = std::max(0.0, v(sr.z_eps + layer * t) / amplitude);
  }
  return rp;
}

double painleve_distance(const RescaledProfile& rp, const PainleveSolution& phi0, double lo, double hi) {
  const double from = std::max(lo, phi0.t.front());
  const double to = std::min(hi, phi0.t.back());
  const MonotoneInterpolant limit(phi0.t, phi0.phi);
  double dist = 0.0;
  bool any = false;
  for (std::size_t j = 0; j < rp.t.size(); ++j) {
    const double t = rp.t[j];
    if (t < from || t > to) {
      continue;
    }
    any = true;
    dist = std::max(dist, std::abs(rp.phi[j] - limit(t)));
  }
  if (!any) {
    throw std::invalid_argument("painleve_distance: empty overlap");
  }
  return dist;
}

double measured_corner_slope(const SolveResult& sr) {
  const MonotoneInterpolant u(sr.profile.grid, sr.profile.u);
  return 2.0 * u(sr.z_eps) * u.derivative(sr.z_eps);
}

double corner_remainder(const SolveResult& sr, const CouplingParams& params, double R, int samples) {
  const MonotoneInterpolant u(sr.profile.grid, sr.profile.u);
  const double layer = std::cbrt(sr.eps * sr.eps);
  const double uz = u(sr.z_eps);
  const double slope = 2.0 * uz * u.derivative(sr.z_eps);
  double worst = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double t = -R + 2.0 * R * j / (samples - 1);
    const double ux = u(sr.z_eps + layer * t);
    const double rem = -params.mu() * ((ux * ux - uz * uz) - slope * layer * t);
    worst = std::max(worst, std::abs(rem) / layer);
  }
  return worst;
}

}  // namespace wallforge
