#pragma once

#include <optional>
#include <stdexcept>

#include "wallforge/potential.hpp"

namespace wallforge {

/// Composite Gauss-Legendre rule on panels aligned with the corner point.
struct QuadratureSpec {
  double panel_width = 0.5;
  int nodes_per_panel = 32;
  double tail_cutoff = 20.0;  // integrate over [z - cutoff, z + cutoff]
};

class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

private:
  double estimate_;
};

/// Closed-form Thomas-Fermi (eps = 0) wall with its corner at z.
///
/// Left of z the pair sits on the constraint branch v^2 = 1 - mu u^2 with
///   u0 = sqrt(2/(mu+1)) sech(c2 (x - x1)),  v0^2 = 1 - c1 sech^2(c2 (x - x1)),
/// right of z it is the scalar kink u0 = tanh((x - x0)/sqrt 2), v0 = 0.
/// x1 = z + c3 is the branch on which u0 increases; x0 is fixed by
/// u0(z) = 1/sqrt(mu).
struct TFProfile {
  CouplingParams params;
  double z;
  double x0;
  double x1;
  double c1;
  double c2;
  double c3;
};

TFProfile tf_build(const CouplingParams& params, double z);

/// Corner location that puts the crossing u0 = v0 at x = 0.
double tf_centered_z(const CouplingParams& params);
/// Location of the crossing u0 = v0 (always left of z).
double tf_crossing(const TFProfile& tf);

double tf_u(const TFProfile& tf, double x);
double tf_v(const TFProfile& tf, double x);
/// u0'. At x = z both one-sided formulas agree; the right one is returned.
double tf_u_prime(const TFProfile& tf, double x);
/// One-sided (left) derivative of u0' at z or the plain derivative elsewhere.
double tf_u_prime_left(const TFProfile& tf, double x);
/// u0''; discontinuous at z, where the right-hand value is returned.
double tf_u_second(const TFProfile& tf, double x);
/// (v0^2)' = -mu (u0^2)' on the left piece, 0 for x >= z.
double tf_v_sq_prime(const TFProfile& tf, double x);
/// (u0^2)'(z) = sqrt2 (mu-1) / mu^{3/2}.
double tf_u_sq_prime_at_corner(const CouplingParams& params);

/// Reduced energy  int 1/2 u0'^2 + V(u0, v0)  by composite Gauss-Legendre.
/// The achieved error is estimated against a half-order rule; throws
/// QuadratureError when it exceeds tol.
double tf_energy(const TFProfile& tf, const QuadratureSpec& quad = {}, double tol = 1e-12);

struct TFResidual {
  std::optional<double> u;  // empty at x = z, where u0'' jumps
  double v;
};

/// Residuals of  u'' + u(1-u^2-mu v^2)  and  v(1-v^2-mu u^2)  at x.
TFResidual tf_residual(const TFProfile& tf, double x);

struct HolderFit {
  double exponent;
  double coefficient;
};

/// Least-squares fit of log v0(z - h) = log C + alpha log h over `samples`
/// logarithmically spaced h in [h_min, h_max].
HolderFit tf_holder_fit(const TFProfile& tf, double h_min, double h_max, int samples);

}  // namespace wallforge
