#include "wallforge/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wallforge {

CouplingParams::CouplingParams(double mu) : mu_(mu) {
  if (!std::isfinite(mu) || !(mu > 1.0)) {
    throw std::invalid_argument("coupling mu must be finite and > 1, got " + std::to_string(mu));
  }
}

std::array<double, 2> Hessian2::eigenvalues() const noexcept {
  const double mean = 0.5 * (uu + vv);
  const double half_diff = 0.5 * (uu - vv);
  const double radius = std::hypot(half_diff, uv);
  return {mean - radius, mean + radius};
}

bool verify_w4(const CouplingParams& p, double r0, double c0, int sample_count) {
  if (!(r0 > 0.0) || !(c0 > 0.0)) {
    throw std::invalid_argument("verify_w4: r0 and c0 must be positive");
  }
  if (sample_count < 1) {
    throw std::invalid_argument("verify_w4: sample_count must be >= 1");
  }
  const int per_axis = std::max(2, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(sample_count)))));
  const double r_max = 2.0 * r0 + 1.0;
  const double half_pi = 0.5 * std::acos(-1.0);
  for (int i = 0; i < per_axis; ++i) {
    const double r = r0 + (r_max - r0) * i / (per_axis - 1);
    for (int j = 0; j < per_axis; ++j) {
      const double theta = half_pi * j / (per_axis - 1);
      const double u = r * std::cos(theta);
      const double v = r * std::sin(theta);
      const Gradient2 g = potential_gradient(p, u, v);
      if (g.du * u + g.dv * v < c0 * (u * u + v * v)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace wallforge
