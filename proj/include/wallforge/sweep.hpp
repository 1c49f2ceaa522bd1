#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "wallforge/painleve.hpp"
#include "wallforge/solver.hpp"

namespace wallforge {

/// Grid per eps: [-L, L] with h <= eps^{2/3} / nodes_per_layer.
struct GridRule {
  double half_width = 20.0;
  double nodes_per_layer = 20.0;

  Grid grid_for(double eps) const { return Grid::for_eps(half_width, eps, nodes_per_layer); }
};

struct SweepOptions {
  double compact_radius = 5.0;        // R of the sup-norm metrics
  double corner_exclusion = 5.0;      // v compared outside |x - z| <= this * eps^{2/3}
  double painleve_lo = -5.0;          // window of the Painleve distance
  double painleve_hi = 5.0;
  double painleve_scale = 12.0;       // limit BVP on +-scale * a^{-1/3}
  int painleve_nodes = 2001;
  double painleve_tol = 1e-10;
  int rescale_samples = 1001;
  int threads = 1;
};

struct SweepRecord {
  double eps;
  double energy;         // E_eps
  double tf_energy;      // E0 = reduced energy of the TF wall
  double gap;            // E_eps - E0
  double vprime_sq;      // int (v_eps')^2
  double z_eps;
  double crossing;
  double sup_u_err;      // |u_eps - u0|_inf on [-R, R]
  double sup_du_err;     // |u_eps' - u0'|_inf on [-R, R], 2h around the corner excluded
  double sup_v_err_out;  // |v_eps - v0|_inf on [-R, R] outside the corner window
  double painleve_dist;
  double measured_k;     // (u_eps^2)'(z_eps)
};

struct SweepResult {
  std::vector<SweepRecord> records;
  std::vector<SolveResult> solutions;
  PainleveSolution limit;
};

class SweepError : public std::runtime_error {
public:
  SweepError(double eps, const std::string& what)
      : std::runtime_error("eps = " + std::to_string(eps) + ": " + what), eps_(eps) {}
  double eps() const noexcept { return eps_; }

private:
  double eps_;
};

/// Per-eps metrics of a converged solution against the TF wall shifted so
/// that its corner sits at z_eps.
SweepRecord make_record(const SolveResult& sr, const CouplingParams& params, double tf_energy_value,
                        const PainleveSolution& limit, const SweepOptions& opts);

/// One independent solve per eps (strictly decreasing, all positive). Solves
/// run on up to opts.threads OpenMP workers; records come back in eps order
/// and are bitwise independent of the worker count.
SweepResult run_sweep(const CouplingParams& params, const std::vector<double>& eps_list, const GridRule& rule,
                      const SolverConfig& cfg, const SweepOptions& opts = {});

struct GapFit {
  double A;
  double B;
  double r2;
};

/// Least squares  gap = A eps^2 ln(1/eps) + B eps^2.
GapFit fit_gap(const std::vector<SweepRecord>& records);

struct LineFit {
  double slope;
  double intercept;
  double r2;
};

/// Least squares  vprime_sq = slope ln(1/eps) + intercept.
LineFit fit_vprime(const std::vector<SweepRecord>& records);

/// Distance over which v_eps falls from 0.5 to 0.1 of v_eps(z_eps - 5 eps^{2/3}).
double corner_width(const SolveResult& sr);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records);

}  // namespace wallforge
