#include "wallforge/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include <math.h>  // boost 1.74 pchip calls unqualified isnan

#include <boost/math/interpolators/pchip.hpp>

#include "wallforge/kernels.hpp"

namespace wallforge {

Grid::Grid(double half_width, int n) : half_width_(half_width), n_(n), h_(0.0) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw std::invalid_argument("grid half width must be positive");
  }
  if (n < 201 || n % 2 == 0) {
    throw std::invalid_argument("grid node count must be odd and >= 201, got " + std::to_string(n));
  }
  h_ = 2.0 * half_width / (n - 1);
}

Grid Grid::for_eps(double half_width, double eps, double nodes_per_layer) {
  if (!(eps > 0.0) || !(nodes_per_layer > 0.0)) {
    throw std::invalid_argument("Grid::for_eps: eps and nodes_per_layer must be positive");
  }
  const double cells_per_half = std::ceil(half_width * nodes_per_layer / std::cbrt(eps * eps) - 1e-9);
  const int n = std::max(201, 2 * static_cast<int>(cells_per_half) + 1);
  return Grid(half_width, n);
}

std::vector<double> Grid::nodes() const {
  std::vector<double> xs(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    xs[static_cast<std::size_t>(i)] = x(i);
  }
  return xs;
}

bool Grid::resolves(double eps, double nodes_per_layer) const noexcept {
  return h_ <= std::cbrt(eps * eps) / nodes_per_layer * (1.0 + 1e-12);
}

Profile::Profile(Grid g, std::vector<double> u_values, std::vector<double> v_values)
    : grid(g), u(std::move(u_values)), v(std::move(v_values)) {
  const auto n = static_cast<std::size_t>(grid.size());
  if (u.size() != n || v.size() != n) {
    throw std::invalid_argument("profile arrays must match the grid size");
  }
}

Profile Profile::sample(const Grid& g, const std::function<double(double)>& f,
                        const std::function<double(double)>& g_fn) {
  std::vector<double> u(static_cast<std::size_t>(g.size()));
  std::vector<double> v(u.size());
  for (int i = 0; i < g.size(); ++i) {
    u[static_cast<std::size_t>(i)] = f(g.x(i));
    v[static_cast<std::size_t>(i)] = g_fn(g.x(i));
  }
  return Profile(g, std::move(u), std::move(v));
}

void Profile::pin_boundary() noexcept {
  u.front() = 0.0;
  v.front() = 1.0;
  u.back() = 1.0;
  v.back() = 0.0;
}

bool Profile::boundary_pinned() const noexcept {
  return u.front() == 0.0 && v.front() == 1.0 && u.back() == 1.0 && v.back() == 0.0;
}

double discrete_energy(const Profile& p, double eps, const CouplingParams& params) {
  if (!(eps >= 0.0)) {
    throw std::invalid_argument("discrete_energy: eps must be >= 0");
  }
  return kernels::energy(p.u, p.v, p.grid.spacing(), eps, params);
}

FieldPair discrete_energy_gradient(const Profile& p, double eps, const CouplingParams& params) {
  if (!(eps >= 0.0)) {
    throw std::invalid_argument("discrete_energy_gradient: eps must be >= 0");
  }
  FieldPair g{std::vector<double>(p.u.size()), std::vector<double>(p.u.size())};
  kernels::energy_gradient(p.u, p.v, p.grid.spacing(), eps, params, g.u, g.v);
  return g;
}

FieldPair el_residual(const Profile& p, double eps, const CouplingParams& params) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("el_residual: eps must be > 0");
  }
  FieldPair r{std::vector<double>(p.u.size()), std::vector<double>(p.u.size())};
  kernels::el_residual(p.u, p.v, p.grid.spacing(), eps, params, r.u, r.v);
  return r;
}

double residual_norm(const FieldPair& r) {
  return std::max(kernels::max_abs(r.u), kernels::max_abs(r.v));
}

double vprime_squared(const Profile& p) {
  const double h = p.grid.spacing();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < p.v.size(); ++i) {
    const double dv = p.v[i + 1] - p.v[i];
    total += dv * dv / h;
  }
  return total;
}

struct MonotoneInterpolant::Impl {
  double lo;
  double hi;
  boost::math::interpolators::pchip<std::vector<double>> spline;
};

MonotoneInterpolant::MonotoneInterpolant(const Grid& g, std::span<const double> values) {
  if (values.size() != static_cast<std::size_t>(g.size())) {
    throw std::invalid_argument("interpolant values must match the grid size");
  }
  std::vector<double> xs = g.nodes();
  std::vector<double> ys(values.begin(), values.end());
  impl_ = std::make_unique<Impl>(Impl{g.x(0), g.x(g.size() - 1),
                                      boost::math::interpolators::pchip<std::vector<double>>(
                                          std::move(xs), std::move(ys))});
}

MonotoneInterpolant::MonotoneInterpolant(std::vector<double> xs, std::span<const double> values) {
  if (values.size() != xs.size() || xs.size() < 4) {
    throw std::invalid_argument("interpolant needs at least four matching samples");
  }
  const double lo = xs.front();
  const double hi = xs.back();
  std::vector<double> ys(values.begin(), values.end());
  impl_ = std::make_unique<Impl>(
      Impl{lo, hi, boost::math::interpolators::pchip<std::vector<double>>(std::move(xs), std::move(ys))});
}

MonotoneInterpolant::~MonotoneInterpolant() = default;
MonotoneInterpolant::MonotoneInterpolant(MonotoneInterpolant&&) noexcept = default;
MonotoneInterpolant& MonotoneInterpolant::operator=(MonotoneInterpolant&&) noexcept = default;

double MonotoneInterpolant::operator()(double x) const {
  if (x < impl_->lo || x > impl_->hi) {
    throw std::out_of_range("interpolation point outside the grid");
  }
  return impl_->spline(x);
}

double MonotoneInterpolant::derivative(double x) const {
  if (x < impl_->lo || x > impl_->hi) {
    throw std::out_of_range("interpolation point outside the grid");
  }
  return impl_->spline.prime(x);
}

std::pair<double, double> interpolate(const Profile& p, double x) {
  return {MonotoneInterpolant(p.grid, p.u)(x), MonotoneInterpolant(p.grid, p.v)(x)};
}

namespace {

int sign_of(double d) { return (d > 0.0) - (d < 0.0); }

// Root of f on the grid, given the nodal values of f. Exactly one sign change
// among the non-zero nodal values is required.
template <typename F>
double locate_root(const Grid& g, std::span<const double> nodal, F&& f, double tol) {
  int changes = 0;
  int last_sign = 0;
  for (double d : nodal) {
    const int s = sign_of(d);
    if (s != 0) {
      if (last_sign != 0 && s != last_sign) {
        ++changes;
      }
      last_sign = s;
    }
  }
  if (changes == 0) {
    throw LevelError("level is not bracketed by the profile");
  }
  if (changes > 1) {
    throw LevelError("multiple sign changes: profile is not monotone");
  }

  int last_nonzero = -1;
  for (int i = 0; i < g.size(); ++i) {
    const int s = sign_of(nodal[static_cast<std::size_t>(i)]);
    if (s == 0) {
      continue;
    }
    if (last_nonzero >= 0 && s != sign_of(nodal[static_cast<std::size_t>(last_nonzero)])) {
      if (i - last_nonzero > 1) {
        return g.x(last_nonzero + 1);
      }
      double lo = g.x(last_nonzero);
      double hi = g.x(i);
      const int s_lo = sign_of(nodal[static_cast<std::size_t>(last_nonzero)]);
      for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const int s_mid = sign_of(f(mid));
        if (s_mid == 0) {
          return mid;
        }
        (s_mid == s_lo ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
    last_nonzero = i;
  }
  throw LevelError("level is not bracketed by the profile");
}

}  // namespace

double find_level(const Grid& g, std::span<const double> values, double c, double tol) {
  std::vector<double> diff(values.size());
  std::transform(values.begin(), values.end(), diff.begin(), [c](double y) { return y - c; });
  const MonotoneInterpolant f(g, values);
  return locate_root(g, diff, [&](double x) { return f(x) - c; }, tol);
}

double crossing_point(const Profile& p, double tol) {
  std::vector<double> diff(p.u.size());
  std::transform(p.u.begin(), p.u.end(), p.v.begin(), diff.begin(), std::minus<>());
  const MonotoneInterpolant fu(p.grid, p.u);
  const MonotoneInterpolant fv(p.grid, p.v);
  return locate_root(p.grid, diff, [&](double x) { return fu(x) - fv(x); }, tol);
}

double level_point(const Profile& p, double c, double tol) { return find_level(p.grid, p.u, c, tol); }

void write_profile_csv(std::ostream& out, const Profile& p) {
  out << "x,u,v\n";
  char line[96];
  for (int i = 0; i < p.grid.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", p.grid.x(i), p.u[k], p.v[k]);
    out << line;
  }
}

}  // namespace wallforge
