#include "wallforge/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>
#include <ostream>
#include <set>

#include <omp.h>

#include "wallforge/tf_limit.hpp"

namespace wallforge {

SweepRecord make_record(const SolveResult& sr, const CouplingParams& params, double tf_energy_value,
                        const PainleveSolution& limit, const SweepOptions& opts) {
  const Profile& p = sr.profile;
  const Grid& g = p.grid;
  const double h = g.spacing();
  const double layer = std::cbrt(sr.eps * sr.eps);
  const TFProfile tf = tf_build(params, sr.z_eps);
  const double R = opts.compact_radius;

  double sup_u = 0.0, sup_du = 0.0, sup_v = 0.0;
  for (int i = 1; i + 1 < g.size(); ++i) {
    const double x = g.x(i);
    if (std::abs(x) > R) {
      continue;
    }
    const auto k = static_cast<std::size_t>(i);
    sup_u = std::max(sup_u, std::abs(p.u[k] - tf_u(tf, x)));
    if (std::abs(x - tf.z) > 2.0 * h) {
      const double du = (p.u[k + 1] - p.u[k - 1]) / (2.0 * h);
      sup_du = std::max(sup_du, std::abs(du - tf_u_prime(tf, x)));
    }
    if (std::abs(x - tf.z) > opts.corner_exclusion * layer) {
      sup_v = std::max(sup_v, std::abs(p.v[k] - tf_v(tf, x)));
    }
  }

  const RescaledProfile rp = rescale_profile(sr, opts.painleve_lo, opts.painleve_hi, opts.rescale_samples);
  return SweepRecord{sr.eps,
                     sr.energy,
                     tf_energy_value,
                     sr.energy - tf_energy_value,
                     vprime_squared(p),
                     sr.z_eps,
                     sr.crossing,
                     sup_u,
                     sup_du,
                     sup_v,
                     painleve_distance(rp, limit, opts.painleve_lo, opts.painleve_hi),
                     measured_corner_slope(sr)};
}

SweepResult run_sweep(const CouplingParams& params, const std::vector<double>& eps_list, const GridRule& rule,
                      const SolverConfig& cfg, const SweepOptions& opts) {
  if (eps_list.empty()) {
    throw std::invalid_argument("run_sweep: empty eps list");
  }
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0) || (i > 0 && !(eps_list[i] < eps_list[i - 1]))) {
      throw std::invalid_argument("run_sweep: eps list must be positive and strictly decreasing");
    }
  }

  const double e0 = tf_energy(tf_build(params, 0.0));
  PainleveSolution limit = hastings_mcleod_solve(
      PainleveProblem::for_coupling(params, opts.painleve_scale, opts.painleve_nodes), opts.painleve_tol);

  const auto count = static_cast<std::ptrdiff_t>(eps_list.size());
  std::vector<std::optional<SolveResult>> solutions(eps_list.size());
  std::vector<std::optional<SweepRecord>> records(eps_list.size());
  std::vector<std::exception_ptr> errors(eps_list.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, opts.threads))
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      SolveResult sr = solve(params, eps_list[k], rule.grid_for(eps_list[k]), cfg);
      records[k] = make_record(sr, params, e0, limit, opts);
      solutions[k] = std::move(sr);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }

  SweepResult out;
  out.limit = std::move(limit);
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    if (errors[k]) {
      try {
        std::rethrow_exception(errors[k]);
      } catch (const std::exception& e) {
        throw SweepError(eps_list[k], e.what());
      }
    }
    out.records.push_back(*records[k]);
    out.solutions.push_back(std::move(*solutions[k]));
  }
  return out;
}

namespace {

void require_distinct(const std::vector<SweepRecord>& records, const char* who) {
  std::set<double> distinct;
  for (const SweepRecord& r : records) distinct.insert(r.eps);
  if (records.size() < 3 || distinct.size() < 3) {
    throw std::invalid_argument(std::string(who) + ": need at least three records with distinct eps");
  }
}

double r_squared(const std::vector<double>& y, const std::vector<double>& fitted) {
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    ss_res += (y[i] - fitted[i]) * (y[i] - fitted[i]);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  if (ss_tot == 0.0) {
    return ss_res == 0.0 ? 1.0 : 0.0;
  }
  return 1.0 - ss_res / ss_tot;
}

}  // namespace

GapFit fit_gap(const std::vector<SweepRecord>& records) {
  require_distinct(records, "fit_gap");
  double s11 = 0.0, s12 = 0.0, s22 = 0.0, b1 = 0.0, b2 = 0.0;
  for (const SweepRecord& r : records) {
    const double f2 = r.eps * r.eps;
    const double f1 = f2 * std::log(1.0 / r.eps);
    s11 += f1 * f1;
    s12 += f1 * f2;
    s22 += f2 * f2;
    b1 += f1 * r.gap;
    b2 += f2 * r.gap;
  }
  const double det = s11 * s22 - s12 * s12;
  if (!(std::abs(det) > 1e-12 * s11 * s22)) {
    throw std::invalid_argument("fit_gap: singular normal equations");
  }
  const double A = (b1 * s22 - b2 * s12) / det;
  const double B = (s11 * b2 - s12 * b1) / det;
  std::vector<double> y, fitted;
  for (const SweepRecord& r : records) {
    const double f2 = r.eps * r.eps;
    y.push_back(r.gap);
    fitted.push_back(A * f2 * std::log(1.0 / r.eps) + B * f2);
  }
  return {A, B, r_squared(y, fitted)};
}

LineFit fit_vprime(const std::vector<SweepRecord>& records) {
  require_distinct(records, "fit_vprime");
  const double n = static_cast<double>(records.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const SweepRecord& r : records) {
    const double x = std::log(1.0 / r.eps);
    sx += x;
    sy += r.vprime_sq;
    sxx += x * x;
    sxy += x * r.vprime_sq;
  }
  const double det = n * sxx - sx * sx;
  if (!(det > 1e-12 * n * sxx)) {
    throw std::invalid_argument("fit_vprime: singular normal equations");
  }
  const double slope = (n * sxy - sx * sy) / det;
  const double intercept = (sy - slope * sx) / n;
  std::vector<double> y, fitted;
  for (const SweepRecord& r : records) {
    y.push_back(r.vprime_sq);
    fitted.push_back(slope * std::log(1.0 / r.eps) + intercept);
  }
  return {slope, intercept, r_squared(y, fitted)};
}

double corner_width(const SolveResult& sr) {
  const Profile& p = sr.profile;
  const double layer = std::cbrt(sr.eps * sr.eps);
  const double reference = MonotoneInterpolant(p.grid, p.v)(sr.z_eps - 5.0 * layer);
  if (!(reference > 0.0)) {
    throw LevelError("corner_width: v vanishes at the reference point");
  }
  const double upper = find_level(p.grid, p.v, 0.5 * reference);
  const double lower = find_level(p.grid, p.v, 0.1 * reference);
  return lower - upper;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
  out << "eps,E_eps,E0,gap,vprime_sq,z_eps,crossing,sup_u_err,sup_du_err,sup_v_err_out,painleve_dist,measured_k\n";
  char line[512];
  for (const SweepRecord& r : records) {
    std::snprintf(line, sizeof line,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.eps, r.energy,
                  r.tf_energy, r.gap, r.vprime_sq, r.z_eps, r.crossing, r.sup_u_err, r.sup_du_err, r.sup_v_err_out,
                  r.painleve_dist, r.measured_k);
    out << line;
  }
}

}  // namespace wallforge
