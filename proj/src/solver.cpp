#include "wallforge/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <lapacke.h>

#include "wallforge/kernels.hpp"
#include "wallforge/tf_limit.hpp"

namespace wallforge {
namespace {

// Solves (1 + 2a) y_i - a (y_{i-1} + y_{i+1}) = rhs_i on interior nodes with
// the end values of y held fixed. Overwrites y's interior.
void implicit_diffusion(std::vector<double>& y, const std::vector<double>& rhs, double a) {
  const std::size_t n = y.size();
  const std::size_t m = n - 2;
  std::vector<double> c(m);
  std::vector<double> d(m);
  const double diag = 1.0 + 2.0 * a;
  for (std::size_t k = 0; k < m; ++k) {
    double r = rhs[k + 1];
    if (k == 0) r += a * y[0];
    if (k + 1 == m) r += a * y[n - 1];
    const double denom = k == 0 ? diag : diag + a * c[k - 1];
    c[k] = -a / denom;
    d[k] = (k == 0 ? r : r + a * d[k - 1]) / denom;
  }
  y[m] = d[m - 1];
  for (std::size_t k = m - 1; k-- > 0;) {
    y[k + 1] = d[k] - c[k] * y[k + 2];
  }
}

double l2(const std::vector<double>& a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

struct NewtonSystem {
  const CouplingParams& params;
  double eps;
  int center;
  int phase_row;
  double phase_scale;

  // Working residual: EL residual interleaved, with the centre u-row
  // replaced by the gauge condition.
  std::vector<double> residual(const Profile& p, FieldPair& full) const {
    full = el_residual(p, eps, params);
    const std::size_t m = p.u.size() - 2;
    std::vector<double> b(2 * m);
    for (std::size_t k = 0; k < m; ++k) {
      b[2 * k] = full.u[k + 1];
      b[2 * k + 1] = full.v[k + 1];
    }
    const auto c = static_cast<std::size_t>(center);
    b[static_cast<std::size_t>(phase_row)] = phase_scale * (p.u[c] - p.v[c]);
    return b;
  }

  std::vector<double> jacobian(const Profile& p) const {
    const int unknowns = 2 * (p.grid.size() - 2);
    std::vector<double> band(static_cast<std::size_t>(kernels::kBandLd) * unknowns);
    kernels::assemble_jacobian(p.u, p.v, p.grid.spacing(), eps, params, band);
    for (int col = std::max(0, phase_row - kernels::kBandUpper);
         col <= std::min(unknowns - 1, phase_row + kernels::kBandLower); ++col) {
      band[kernels::band_index(phase_row, col)] = 0.0;
    }
    band[kernels::band_index(phase_row, phase_row)] = phase_scale;
    band[kernels::band_index(phase_row, phase_row + 1)] = -phase_scale;
    return band;
  }
};

}  // namespace

void check_profile_invariants(const Profile& p, double tol) {
  const auto fail = [](const std::string& what) {
    throw SolverError(SolverError::Kind::InvariantViolation, what, -1, 0.0);
  };
  for (std::size_t i = 0; i < p.u.size(); ++i) {
    const double u = p.u[i];
    const double v = p.v[i];
    std::ostringstream where;
    where << " at node " << i << " (x = " << p.grid.x(static_cast<int>(i)) << ")";
    if (u < -tol || u > 1.0 + tol || v < -tol || v > 1.0 + tol) {
      fail("profile leaves [0, 1]" + where.str());
    }
    if (u * u + v * v > 1.0 + tol) {
      fail("u^2 + v^2 exceeds 1" + where.str());
    }
    if (i + 1 < p.u.size()) {
      if (p.u[i + 1] < u - tol) fail("u is not non-decreasing" + where.str());
      if (p.v[i + 1] > v + tol) fail("v is not non-increasing" + where.str());
    }
  }
}

Profile init_from_tf(const Grid& grid, const CouplingParams& params, double eps, const SolverConfig& cfg) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("init_from_tf: eps must be > 0");
  }
  if (!grid.resolves(eps, cfg.nodes_per_layer)) {
    throw std::invalid_argument("init_from_tf: grid spacing exceeds eps^{2/3}/" +
                                std::to_string(cfg.nodes_per_layer));
  }
  const TFProfile tf = tf_build(params, tf_centered_z(params));
  const double width = std::cbrt(eps * eps);
  const double floor = cfg.v_floor.value_or(std::cbrt(eps) / 10.0);

  Profile p = Profile::sample(
      grid, [&](double x) { return tf_u(tf, x); },
      [&](double x) {
        const double v0 = tf_v(tf, x);
        const double lift = floor / (1.0 + std::exp((x - tf.z) / width));
        return std::sqrt(v0 * v0 + (1.0 - v0 * v0) * lift * lift);
      });
  p.pin_boundary();
  return p;
}

RelaxOutcome relax(const Profile& start, double eps, const CouplingParams& params, const SolverConfig& cfg) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("relax: eps must be > 0");
  }
  RelaxOutcome out{start, 0, 0.0, {}};
  out.residual = residual_norm(el_residual(out.profile, eps, params));
  out.energies.push_back(discrete_energy(out.profile, eps, params));
  if (out.residual <= cfg.newton_tol) {
    return out;
  }

  const double h = start.grid.spacing();
  const std::size_t n = start.u.size();
  double dt = cfg.flow_dt;
  std::vector<double> rhs_u(n), rhs_v(n);
  Profile trial = start;

  while (out.steps < cfg.flow_iterations) {
    const Profile& cur = out.profile;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const Gradient2 g = potential_gradient(params, cur.u[i], cur.v[i]);
      rhs_u[i] = cur.u[i] - dt * g.du;
      rhs_v[i] = cur.v[i] - dt * g.dv;
    }
    trial.u = cur.u;
    trial.v = cur.v;
    implicit_diffusion(trial.u, rhs_u, dt / (h * h));
    implicit_diffusion(trial.v, rhs_v, eps * eps * dt / (h * h));

    const double e_old = out.energies.back();
    const double e_new = discrete_energy(trial, eps, params);
    if (e_new > e_old) {
      if (e_new - e_old <= 1e-14 * std::max(1.0, std::abs(e_old))) {
        break;  // stalled at round-off
      }
      dt *= 0.5;
      if (dt < cfg.flow_dt * std::ldexp(1.0, -cfg.max_dt_halvings)) {
        throw SolverError(SolverError::Kind::EnergyIncrease,
                          "relax: energy increases even after the maximum number of step halvings", out.steps,
                          out.residual);
      }
      continue;
    }
    std::swap(out.profile, trial);
    out.energies.push_back(e_new);
    ++out.steps;
    if (out.steps % 10 == 0 || out.steps == cfg.flow_iterations) {
      out.residual = residual_norm(el_residual(out.profile, eps, params));
      if (out.residual <= cfg.flow_handoff) {
        break;
      }
    }
  }
  out.residual = residual_norm(el_residual(out.profile, eps, params));
  return out;
}

SolveResult newton_solve(const Profile& start, double eps, const CouplingParams& params, const SolverConfig& cfg) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("newton_solve: eps must be > 0");
  }
  if (!start.boundary_pinned()) {
    throw std::invalid_argument("newton_solve: boundary values must be (0,1) at -L and (1,0) at L");
  }
  const Grid& grid = start.grid;
  const int center = grid.center();
  const double h = grid.spacing();
  const NewtonSystem sys{params, eps, center, 2 * (center - 1), 1.0 / (h * h)};
  const int unknowns = 2 * (grid.size() - 2);

  Profile cur = start;
  FieldPair full;
  std::vector<double> b = sys.residual(cur, full);
  double res = residual_norm(full);
  std::vector<double> history;
  std::vector<lapack_int> pivots(static_cast<std::size_t>(unknowns));

  int it = 0;
  for (;; ++it) {
    history.push_back(res);
    const double gauge = std::abs(cur.u[static_cast<std::size_t>(center)] - cur.v[static_cast<std::size_t>(center)]);
    if (res <= cfg.newton_tol && gauge <= cfg.newton_tol) {
      break;
    }
    if (it >= cfg.max_newton_iterations) {
      throw SolverError(SolverError::Kind::NonConvergence,
                        "newton_solve: no convergence within " + std::to_string(cfg.max_newton_iterations) +
                            " iterations",
                        it, res);
    }

    std::vector<double> band = sys.jacobian(cur);
    std::vector<double> step(b.size());
    std::transform(b.begin(), b.end(), step.begin(), [](double x) { return -x; });
    const lapack_int info = LAPACKE_dgbsv(LAPACK_COL_MAJOR, unknowns, kernels::kBandLower, kernels::kBandUpper, 1,
                                          band.data(), kernels::kBandLd, pivots.data(), step.data(), unknowns);
    if (info != 0) {
      throw SolverError(SolverError::Kind::SingularJacobian,
                        "newton_solve: singular Jacobian at iteration " + std::to_string(it) +
                            " (dgbsv info " + std::to_string(info) + ")",
                        it, res);
    }

    const double merit = l2(b);
    double lambda = 1.0;
    bool accepted = false;
    Profile trial = cur;
    FieldPair trial_full;
    std::vector<double> trial_b;
    for (int bt = 0; bt <= cfg.max_backtracks; ++bt) {
      for (int k = 0; k < grid.size() - 2; ++k) {
        const auto i = static_cast<std::size_t>(k + 1);
        trial.u[i] = cur.u[i] + lambda * step[static_cast<std::size_t>(2 * k)];
        trial.v[i] = cur.v[i] + lambda * step[static_cast<std::size_t>(2 * k + 1)];
      }
      trial_b = sys.residual(trial, trial_full);
      if (l2(trial_b) < (1.0 - 1e-4 * lambda) * merit) {
        accepted = true;
        break;
      }
      lambda *= cfg.backtrack_factor;
    }
    if (!accepted) {
      throw SolverError(SolverError::Kind::NonConvergence,
                        "newton_solve: line search failed at iteration " + std::to_string(it), it, res);
    }
    cur = std::move(trial);
    b = std::move(trial_b);
    full = std::move(trial_full);
    res = residual_norm(full);
  }

  check_profile_invariants(cur, cfg.invariant_tol);

  const double z_eps = level_point(cur, 1.0 / std::sqrt(params.mu()));
  const double crossing = crossing_point(cur);
  const double energy = discrete_energy(cur, eps, params);
  return SolveResult{std::move(cur), eps, energy, res, it, 0, z_eps, crossing, std::move(history)};
}

SolveResult solve(const CouplingParams& params, double eps, const Grid& grid, const SolverConfig& cfg) {
  const Profile init = init_from_tf(grid, params, eps, cfg);
  const RelaxOutcome relaxed = relax(init, eps, params, cfg);
  SolveResult result = newton_solve(relaxed.profile, eps, params, cfg);
  result.flow_iterations = relaxed.steps;
  return result;
}

}  // namespace wallforge
