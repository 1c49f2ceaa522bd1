#include <algorithm>
#include <cmath>

#include "wallforge/kernels.hpp"

namespace wallforge::kernels::serial {

double energy(std::span<const double> u, std::span<const double> v, double h, double eps,
              const CouplingParams& p) {
  const std::size_t n = u.size();
  const double eps2 = eps * eps;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double weight = (i == 0 || i + 1 == n) ? 0.5 * h : h;
    total += weight * potential_value(p, u[i], v[i]);
    if (i + 1 < n) {
      const double du = u[i + 1] - u[i];
      const double dv = v[i + 1] - v[i];
      total += (du * du + eps2 * dv * dv) / (2.0 * h);
    }
  }
  return total;
}

void energy_gradient(std::span<const double> u, std::span<const double> v, double h, double eps,
                     const CouplingParams& p, std::span<double> gu, std::span<double> gv) {
  const std::size_t n = u.size();
  const double eps2 = eps * eps;
  gu[0] = gv[0] = gu[n - 1] = gv[n - 1] = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Gradient2 g = potential_gradient(p, u[i], v[i]);
    gu[i] = (2.0 * u[i] - u[i - 1] - u[i + 1]) / h + h * g.du;
    gv[i] = eps2 * (2.0 * v[i] - v[i - 1] - v[i + 1]) / h + h * g.dv;
  }
}

void el_residual(std::span<const double> u, std::span<const double> v, double h, double eps,
                 const CouplingParams& p, std::span<double> ru, std::span<double> rv) {
  const std::size_t n = u.size();
  const double inv_h2 = 1.0 / (h * h);
  const double eps2 = eps * eps;
  ru[0] = rv[0] = ru[n - 1] = rv[n - 1] = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Gradient2 g = potential_gradient(p, u[i], v[i]);
    ru[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_h2 - g.du;
    rv[i] = eps2 * (v[i + 1] - 2.0 * v[i] + v[i - 1]) * inv_h2 - g.dv;
  }
}

void assemble_jacobian(std::span<const double> u, std::span<const double> v, double h, double eps,
                       const CouplingParams& p, std::span<double> band) {
  const int interior = static_cast<int>(u.size()) - 2;
  const double inv_h2 = 1.0 / (h * h);
  const double eps2 = eps * eps;
  std::fill(band.begin(), band.end(), 0.0);
  for (int k = 0; k < interior; ++k) {
    const std::size_t i = static_cast<std::size_t>(k) + 1;
    const Hessian2 hv = potential_hessian(p, u[i], v[i]);
    const int ru = 2 * k;
    const int rv = 2 * k + 1;
    band[band_index(ru, ru)] = -2.0 * inv_h2 - hv.uu;
    band[band_index(ru, rv)] = -hv.uv;
    band[band_index(rv, ru)] = -hv.uv;
    band[band_index(rv, rv)] = -2.0 * eps2 * inv_h2 - hv.vv;
    if (k > 0) {
      band[band_index(ru, ru - 2)] = inv_h2;
      band[band_index(rv, rv - 2)] = eps2 * inv_h2;
    }
    if (k + 1 < interior) {
      band[band_index(ru, ru + 2)] = inv_h2;
      band[band_index(rv, rv + 2)] = eps2 * inv_h2;
    }
  }
}

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double x : a) {
    m = std::max(m, std::abs(x));
  }
  return m;
}

}  // namespace wallforge::kernels::serial
