#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "wallforge/potential.hpp"

namespace wallforge {

/// The potential as seen by the checks. Defaults forward to the library;
/// overriding a member lets a test feed the suite a broken model.
struct PotentialModel {
  std::function<double(double, double)> value;
  std::function<Gradient2(double, double)> gradient;
  std::function<Hessian2(double, double)> hessian;

  static PotentialModel standard(const CouplingParams& params);
};

struct CheckResult {
  std::string name;
  double measured;
  double threshold;
  bool passed;
};

/// Finite-difference checks of the model on n deterministic points of
/// [-2, 2]^2; returns the worst error relative to max(1, |analytic|).
double gradient_fd_error(const PotentialModel& model, int n = 1000);
double hessian_fd_error(const PotentialModel& model, int n = 1000);

/// Structural checks of the potential, the TF wall and a small eps sweep
/// at mu = 3.
std::vector<CheckResult> run_validation(const PotentialModel& model, const CouplingParams& params);

void print_report(std::ostream& out, const std::vector<CheckResult>& checks);

}  // namespace wallforge
