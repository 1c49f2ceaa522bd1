#include "wallforge/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "wallforge/sweep.hpp"
#include "wallforge/tf_limit.hpp"

namespace wallforge {

PotentialModel PotentialModel::standard(const CouplingParams& params) {
  return {[params](double u, double v) { return potential_value(params, u, v); },
          [params](double u, double v) { return potential_gradient(params, u, v); },
          [params](double u, double v) { return potential_hessian(params, u, v); }};
}

namespace {

// Points of a ceil(sqrt n)^2 lattice on [-2, 2]^2, offset so no point hits
// the axes or the circle u^2 + v^2 = 1 exactly.
std::vector<std::pair<double, double>> probe_points(int n) {
  const int side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < side && static_cast<int>(pts.size()) < n; ++i) {
    for (int j = 0; j < side && static_cast<int>(pts.size()) < n; ++j) {
      pts.emplace_back(-2.0 + 4.0 * (i + 0.37) / side, -2.0 + 4.0 * (j + 0.61) / side);
    }
  }
  return pts;
}

double rel(double analytic, double approx) { return std::abs(analytic - approx) / std::max(1.0, std::abs(analytic)); }

CheckResult at_most(std::string name, double measured, double threshold) {
  return {std::move(name), measured, threshold, measured <= threshold};
}

CheckResult at_least(std::string name, double measured, double threshold) {
  return {std::move(name), measured, threshold, measured >= threshold};
}

}  // namespace

double gradient_fd_error(const PotentialModel& model, int n) {
  constexpr double d = 1e-6;
  double worst = 0.0;
  for (auto [u, v] : probe_points(n)) {
    const Gradient2 g = model.gradient(u, v);
    const double fu = (model.value(u + d, v) - model.value(u - d, v)) / (2 * d);
    const double fv = (model.value(u, v + d) - model.value(u, v - d)) / (2 * d);
    worst = std::max({worst, rel(g.du, fu), rel(g.dv, fv)});
  }
  return worst;
}

double hessian_fd_error(const PotentialModel& model, int n) {
  constexpr double d = 1e-6;
  double worst = 0.0;
  for (auto [u, v] : probe_points(n)) {
    const Hessian2 H = model.hessian(u, v);
    const Gradient2 up = model.gradient(u + d, v), um = model.gradient(u - d, v);
    const Gradient2 vp = model.gradient(u, v + d), vm = model.gradient(u, v - d);
    worst = std::max({worst, rel(H.uu, (up.du - um.du) / (2 * d)), rel(H.uv, (up.dv - um.dv) / (2 * d)),
                      rel(H.uv, (vp.du - vm.du) / (2 * d)), rel(H.vv, (vp.dv - vm.dv) / (2 * d))});
  }
  return worst;
}

std::vector<CheckResult> run_validation(const PotentialModel& model, const CouplingParams& params) {
  std::vector<CheckResult> out;
  out.push_back(at_most("gradient vs finite differences", gradient_fd_error(model), 1e-6));
  out.push_back(at_most("hessian vs finite differences", hessian_fd_error(model), 1e-5));

  // 401 x 401 lattice on [-2, 2]^2: V >= 0 everywhere, zero only at the wells.
  double min_value = INFINITY, min_away = INFINITY, asym = 0.0;
  for (int i = 0; i <= 400; ++i) {
    for (int j = 0; j <= 400; ++j) {
      const double u = -2.0 + 0.01 * i, v = -2.0 + 0.01 * j;
      const double V = model.value(u, v);
      min_value = std::min(min_value, V);
      asym = std::max({asym, std::abs(V - model.value(-u, v)), std::abs(V - model.value(u, -v))});
      if (u >= 0.0 && v >= 0.0 && std::hypot(u - 1.0, v) > 1e-6 && std::hypot(u, v - 1.0) > 1e-6) {
        min_away = std::min(min_away, V);
      }
    }
  }
  out.push_back(at_least("V >= 0 on lattice", min_value, 0.0));
  out.push_back({"V > 0 off the wells", min_away, 0.0, min_away > 0.0});
  out.push_back(at_most("V even in u and v", asym, 0.0));

  double min_eig = INFINITY;
  for (auto [u, v] : {std::pair{1.0, 0.0}, std::pair{0.0, 1.0}}) {
    const auto [lo, hi] = model.hessian(u, v).eigenvalues();
    min_eig = std::min({min_eig, lo, hi});
  }
  out.push_back({"wells non-degenerate", min_eig, 0.0, min_eig > 0.0});

  const bool w4 = verify_w4(params, 2.0, 0.1, 10000);
  out.push_back({"coercivity r0=2 c0=0.1", w4 ? 1.0 : 0.0, 1.0, w4});

  for (double mu : {2.0, 3.0, 5.0}) {
    const TFProfile tf = tf_build(CouplingParams(mu), 0.0);
    double worst = 0.0, identity = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double x = -15.0 + 30.0 * (i + 0.5) / 10000.0;
      const TFResidual r = tf_residual(tf, x);
      worst = std::max({worst, std::abs(r.u.value_or(0.0)), std::abs(r.v)});
      if (x < tf.z) {
        const double u = tf_u(tf, x), v = tf_v(tf, x);
        identity = std::max(identity, std::abs(v * v + mu * u * u - 1.0));
      }
    }
    const double jump = std::abs(tf_u_prime_left(tf, tf.z) - tf_u_prime(tf, tf.z));
    char tag[32];
    std::snprintf(tag, sizeof tag, " mu=%g", mu);
    out.push_back(at_most(std::string("TF residual") + tag, worst, 1e-12));
    out.push_back(at_most(std::string("TF slope jump at corner") + tag, jump, 1e-12));
    out.push_back(at_most(std::string("TF left identity") + tag, identity, 1e-12));
  }

  const TFProfile tf = tf_build(params, 0.0);
  const HolderFit fit = tf_holder_fit(tf, 1e-6, 1e-3, 40);
  const double expected = std::sqrt(params.mu() * tf_u_sq_prime_at_corner(params));
  out.push_back(at_most("Hoelder exponent |p - 1/2|", std::abs(fit.exponent - 0.5), 0.02));
  out.push_back(at_most("Hoelder coefficient rel. error", std::abs(fit.coefficient / expected - 1.0), 0.02));

  // Small sweep: the gap to the TF energy stays nonnegative and shrinks.
  try {
    const SweepResult sw = run_sweep(params, {0.2, 0.1, 0.05}, GridRule{}, SolverConfig{});
    double min_gap = INFINITY, worst_step = -INFINITY;
    for (std::size_t i = 0; i < sw.records.size(); ++i) {
      min_gap = std::min(min_gap, sw.records[i].gap);
      if (i > 0) worst_step = std::max(worst_step, sw.records[i].gap - sw.records[i - 1].gap);
    }
    out.push_back(at_least("sweep gap >= -1e-8", min_gap, -1e-8));
    out.push_back({"sweep gap decreasing", worst_step, 0.0, worst_step < 0.0});
  } catch (const std::exception&) {
    out.push_back({"sweep converged", 0.0, 1.0, false});
  }
  return out;
}

void print_report(std::ostream& out, const std::vector<CheckResult>& checks) {
  char line[160];
  for (const CheckResult& c : checks) {
    std::snprintf(line, sizeof line, "%-4s  %-36s  measured %-12.5g threshold %.5g\n", c.passed ? "ok" : "FAIL",
                  c.name.c_str(), c.measured, c.threshold);
    out << line;
  }
}

}  // namespace wallforge
