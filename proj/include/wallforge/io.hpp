#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "wallforge/painleve.hpp"
#include "wallforge/solver.hpp"
#include "wallforge/sweep.hpp"

namespace wallforge {

/// Unreadable, unwritable or malformed files.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// {mu, eps, L, n, energy, residual, z_eps, crossing, iterations, x, u, v}
void write_solution_json(std::ostream& out, const CouplingParams& params, const SolveResult& sr);

struct StoredSolution {
  double mu;
  SolveResult result;
};

/// Inverse of write_solution_json; the grid is rebuilt from L and n and must
/// reproduce the stored x values. Throws IoError on malformed input.
StoredSolution read_solution_json(std::istream& in);
StoredSolution load_solution(const std::string& path);

/// {A, B, r2_gap, slope, intercept, r2_vprime}
void write_fits_json(std::ostream& out, const GapFit& gap, const LineFit& vprime);

/// `t,phi_eps,phi_limit,abs_err` on the t samples of `rp`.
void write_painleve_csv(std::ostream& out, const PainleveSolution& limit, const RescaledProfile& rp);

/// `t,phi_limit` on `count` uniform samples of [lo, hi].
void write_painleve_csv(std::ostream& out, const PainleveSolution& limit, double lo, double hi, int count);

}  // namespace wallforge
