#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wallforge/grid.hpp"
#include "wallforge/potential.hpp"

namespace wallforge {

struct SolverConfig {
  double newton_tol = 1e-10;       // infinity norm of the EL residual
  int max_newton_iterations = 50;
  double backtrack_factor = 0.5;
  int max_backtracks = 30;
  double flow_dt = 0.1;
  int flow_iterations = 1000;
  double flow_handoff = 1e-6;      // relax stops once the residual is below this
  int max_dt_halvings = 30;
  std::optional<double> v_floor;   // defaults to eps^{1/3} / 10
  double nodes_per_layer = 20.0;   // resolution rule h <= eps^{2/3} / nodes_per_layer
  double invariant_tol = 1e-10;
};

struct SolveResult {
  Profile profile;
  double eps = 0.0;
  double energy = 0.0;
  double residual = 0.0;
  int newton_iterations = 0;
  int flow_iterations = 0;
  double z_eps = 0.0;
  double crossing = 0.0;
  std::vector<double> residual_history;  // residual before each Newton step
};

class SolverError : public std::runtime_error {
public:
  enum class Kind { NonConvergence, SingularJacobian, InvariantViolation, EnergyIncrease };

  SolverError(Kind kind, const std::string& what, int iteration, double residual)
      : std::runtime_error(what), kind_(kind), iteration_(iteration), residual_(residual) {}

  Kind kind() const noexcept { return kind_; }
  int iteration() const noexcept { return iteration_; }
  double residual() const noexcept { return residual_; }

private:
  Kind kind_;
  int iteration_;
  double residual_;
};

/// Thomas-Fermi wall sampled on the grid with the crossing u0 = v0 at x = 0.
/// v is lifted to a positive floor that blends in over the corner window
/// |x - z| <~ eps^{2/3} and vanishes at the far left, keeping v monotone and
/// below 1. Throws std::invalid_argument if the grid does not resolve eps.
Profile init_from_tf(const Grid& grid, const CouplingParams& params, double eps, const SolverConfig& cfg);

struct RelaxOutcome {
  Profile profile;
  int steps = 0;
  double residual = 0.0;
  std::vector<double> energies;  // energy after each accepted step, starting with the input
};

/// Semi-implicit L2 gradient flow of E_eps: diffusion implicit (one
/// tridiagonal solve per component), potential explicit. A step that would
/// raise the energy is retried with half the time step.
RelaxOutcome relax(const Profile& start, double eps, const CouplingParams& params, const SolverConfig& cfg);

/// Damped Newton on the discrete Euler-Lagrange system with the translation
/// gauge u(0) = v(0) (the u-equation at the centre node is replaced by it;
/// it is satisfied automatically up to exponentially small truncation
/// terms and is still part of the reported residual). Post-checks the
/// bounds, u^2 + v^2 <= 1 and monotonicity of the converged profile.
SolveResult newton_solve(const Profile& start, double eps, const CouplingParams& params, const SolverConfig& cfg);

/// init_from_tf -> relax -> newton_solve.
SolveResult solve(const CouplingParams& params, double eps, const Grid& grid, const SolverConfig& cfg = {});

/// Throws SolverError(InvariantViolation) describing the first violated
/// property of a converged profile.
void check_profile_invariants(const Profile& p, double tol);

}  // namespace wallforge
