#include <algorithm>
#include <cmath>
#include <vector>

#include "wallforge/kernels.hpp"

namespace wallforge::kernels {
namespace {

bool go_parallel(std::size_t n) { return n >= kParallelThreshold; }

}  // namespace

double energy(std::span<const double> u, std::span<const double> v, double h, double eps,
              const CouplingParams& p) {
  const std::size_t n = u.size();
  const double eps2 = eps * eps;
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
  const auto nb = static_cast<std::ptrdiff_t>(blocks);

#pragma omp parallel for schedule(static) if (go_parallel(n))
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    double sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double weight = (i == 0 || i + 1 == n) ? 0.5 * h : h;
      sum += weight * potential_value(p, u[i], v[i]);
      if (i + 1 < n) {
        const double du = u[i + 1] - u[i];
        const double dv = v[i + 1] - v[i];
        sum += (du * du + eps2 * dv * dv) / (2.0 * h);
      }
    }
    partial[static_cast<std::size_t>(b)] = sum;
  }

  double total = 0.0;
  for (double s : partial) {
    total += s;
  }
  return total;
}

void energy_gradient(std::span<const double> u, std::span<const double> v, double h, double eps,
                     const CouplingParams& p, std::span<double> gu, std::span<double> gv) {
  const auto n = static_cast<std::ptrdiff_t>(u.size());
  const double eps2 = eps * eps;
  gu[0] = gv[0] = gu[n - 1] = gv[n - 1] = 0.0;

#pragma omp parallel for schedule(static) if (go_parallel(u.size()))
  for (std::ptrdiff_t i = 1; i < n - 1; ++i) {
    const Gradient2 g = potential_gradient(p, u[i], v[i]);
    gu[i] = (2.0 * u[i] - u[i - 1] - u[i + 1]) / h + h * g.du;
    gv[i] = eps2 * (2.0 * v[i] - v[i - 1] - v[i + 1]) / h + h * g.dv;
  }
}

void el_residual(std::span<const double> u, std::span<const double> v, double h, double eps,
                 const CouplingParams& p, std::span<double> ru, std::span<double> rv) {
  const auto n = static_cast<std::ptrdiff_t>(u.size());
  const double inv_h2 = 1.0 / (h * h);
  const double eps2 = eps * eps;
  ru[0] = rv[0] = ru[n - 1] = rv[n - 1] = 0.0;

#pragma omp parallel for schedule(static) if (go_parallel(u.size()))
  for (std::ptrdiff_t i = 1; i < n - 1; ++i) {
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

  // Each iteration owns the two columns of node k, so the fill is race free.
#pragma omp parallel for schedule(static) if (go_parallel(u.size()))
  for (int k = 0; k < interior; ++k) {
    std::fill_n(band.begin() + static_cast<std::ptrdiff_t>(2 * k) * kBandLd, 2 * kBandLd, 0.0);
    const std::size_t i = static_cast<std::size_t>(k) + 1;
    const int cu = 2 * k;
    const int cv = 2 * k + 1;
    const Hessian2 hv = potential_hessian(p, u[i], v[i]);
    band[band_index(cu, cu)] = -2.0 * inv_h2 - hv.uu;
    band[band_index(cv, cu)] = -hv.uv;
    band[band_index(cu, cv)] = -hv.uv;
    band[band_index(cv, cv)] = -2.0 * eps2 * inv_h2 - hv.vv;
    if (k > 0) {
      band[band_index(cu - 2, cu)] = inv_h2;
      band[band_index(cv - 2, cv)] = eps2 * inv_h2;
    }
    if (k + 1 < interior) {
      band[band_index(cu + 2, cu)] = inv_h2;
      band[band_index(cv + 2, cv)] = eps2 * inv_h2;
    }
  }
}

double max_abs(std::span<const double> a) {
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  double m = 0.0;
#pragma omp parallel for reduction(max : m) schedule(static) if (go_parallel(a.size()))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    m = std::max(m, std::abs(a[i]));
  }
  return m;
}

}  // namespace wallforge::kernels
