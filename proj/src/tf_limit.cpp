#include "wallforge/tf_limit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/legendre.hpp>

#include "wallforge/potential.hpp"

namespace wallforge {
namespace {

double sech(double y) { return 1.0 / std::cosh(y); }

double arcsech(double s) { return std::acosh(1.0 / s); }

double left_amplitude(const CouplingParams& p) { return std::sqrt(2.0 / (p.mu() + 1.0)); }

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

GaussRule gauss_legendre(int n) {
  GaussRule rule;
  // legendre_p_zeros returns the non-negative zeros in ascending order.
  const std::vector<double> half = boost::math::legendre_p_zeros<double>(n);
  for (double x : half) {
    const double dp = boost::math::legendre_p_prime(n, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes.push_back(x);
    rule.weights.push_back(w);
    if (x != 0.0) {
      rule.nodes.push_back(-x);
      rule.weights.push_back(w);
    }
  }
  return rule;
}

template <typename F>
double composite_gauss(F&& f, double a, double b, int panels, const GaussRule& rule) {
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double mid = a + (k + 0.5) * width;
    double panel = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      panel += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
    }
    total += 0.5 * width * panel;
  }
  return total;
}

}  // namespace

TFProfile tf_build(const CouplingParams& params, double z) {
  const double mu = params.mu();
  const double c1 = 2.0 * mu / (mu + 1.0);
  const double c2 = std::sqrt(mu - 1.0);
  const double c3 = arcsech(std::sqrt((mu + 1.0) / (2.0 * mu))) / c2;
  const double x0 = z - std::numbers::sqrt2 * std::atanh(1.0 / std::sqrt(mu));
  return TFProfile{params, z, x0, z + c3, c1, c2, c3};
}

double tf_crossing(const TFProfile& tf) {
  // u0 = v0 on the constraint branch means sech(c2 (x - x1)) = 1/sqrt2.
  return tf.x1 - arcsech(1.0 / std::numbers::sqrt2) / tf.c2;
}

double tf_centered_z(const CouplingParams& params) {
  const TFProfile at_origin = tf_build(params, 0.0);
  return -tf_crossing(at_origin);
}

double tf_u(const TFProfile& tf, double x) {
  if (x < tf.z) {
    return left_amplitude(tf.params) * sech(tf.c2 * (x - tf.x1));
  }
  return std::tanh((x - tf.x0) / std::numbers::sqrt2);
}

double tf_v(const TFProfile& tf, double x) {
  if (x < tf.z) {
    const double s = sech(tf.c2 * (x - tf.x1));
    return std::sqrt(std::max(0.0, 1.0 - tf.c1 * s * s));
  }
  return 0.0;
}

double tf_u_prime_left(const TFProfile& tf, double x) {
  if (x <= tf.z) {
    const double y = tf.c2 * (x - tf.x1);
    return -left_amplitude(tf.params) * tf.c2 * sech(y) * std::tanh(y);
  }
  return tf_u_prime(tf, x);
}

double tf_u_prime(const TFProfile& tf, double x) {
  if (x < tf.z) {
    return tf_u_prime_left(tf, x);
  }
  const double s = sech((x - tf.x0) / std::numbers::sqrt2);
  return s * s / std::numbers::sqrt2;
}

double tf_u_second(const TFProfile& tf, double x) {
  if (x < tf.z) {
    const double y = tf.c2 * (x - tf.x1);
    const double s = sech(y);
    return left_amplitude(tf.params) * tf.c2 * tf.c2 * s * (1.0 - 2.0 * s * s);
  }
  const double w = (x - tf.x0) / std::numbers::sqrt2;
  const double s = sech(w);
  return -s * s * std::tanh(w);
}

double tf_v_sq_prime(const TFProfile& tf, double x) {
  if (x < tf.z) {
    const double y = tf.c2 * (x - tf.x1);
    const double s = sech(y);
    return 2.0 * tf.c1 * tf.c2 * s * s * std::tanh(y);
  }
  return 0.0;
}

double tf_u_sq_prime_at_corner(const CouplingParams& params) {
  const double mu = params.mu();
  return std::numbers::sqrt2 * (mu - 1.0) / std::pow(mu, 1.5);
}

double tf_energy(const TFProfile& tf, const QuadratureSpec& quad, double tol) {
  if (!(quad.panel_width > 0.0) || quad.nodes_per_panel < 4 || !(quad.tail_cutoff > 0.0)) {
    throw std::invalid_argument("tf_energy: need positive widths and at least 4 nodes per panel");
  }
  const auto density = [&](double x) {
    const double du = tf_u_prime(tf, x);
    return 0.5 * du * du + potential_value(tf.params, tf_u(tf, x), tf_v(tf, x));
  };
  const int panels = static_cast<int>(std::ceil(quad.tail_cutoff / quad.panel_width - 1e-12));
  const auto integrate = [&](const GaussRule& rule) {
    return composite_gauss(density, tf.z - quad.tail_cutoff, tf.z, panels, rule) +
           composite_gauss(density, tf.z, tf.z + quad.tail_cutoff, panels, rule);
  };
  const double fine = integrate(gauss_legendre(quad.nodes_per_panel));
  const double coarse = integrate(gauss_legendre(quad.nodes_per_panel / 2));
  const double estimate = std::abs(fine - coarse);
  if (!(estimate <= tol)) {
    throw QuadratureError("tf_energy: quadrature did not reach tolerance", estimate);
  }
  return fine;
}

TFResidual tf_residual(const TFProfile& tf, double x) {
  const double mu = tf.params.mu();
  const double u = tf_u(tf, x);
  const double v = tf_v(tf, x);
  TFResidual r{std::nullopt, v * (1.0 - v * v - mu * u * u)};
  if (x != tf.z) {
    r.u = tf_u_second(tf, x) + u * (1.0 - u * u - mu * v * v);
  }
  return r;
}

HolderFit tf_holder_fit(const TFProfile& tf, double h_min, double h_max, int samples) {
  if (!(h_min > 0.0) || !(h_max > h_min) || samples < 2) {
    throw std::invalid_argument("tf_holder_fit: need 0 < h_min < h_max and samples >= 2");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double log_lo = std::log(h_min);
  const double log_hi = std::log(h_max);
  for (int i = 0; i < samples; ++i) {
    const double lh = log_lo + (log_hi - log_lo) * i / (samples - 1);
    const double v = tf_v(tf, tf.z - std::exp(lh));
    if (!(v > 0.0)) {
      throw std::invalid_argument("tf_holder_fit: v0 vanishes inside the sample window");
    }
    const double lv = std::log(v);
    sx += lh;
    sy += lv;
    sxx += lh * lh;
    sxy += lh * lv;
  }
  const double n = samples;
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  return {slope, std::exp(intercept)};
}

}  // namespace wallforge
