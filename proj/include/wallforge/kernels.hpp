#pragma once

#include <span>

#include "wallforge/potential.hpp"

// Grid kernels shared by the energy, residual and Newton code paths.
//
// The default namespace holds the OpenMP versions. Reductions are taken over
// fixed-size blocks whose partial sums are combined in block order, so the
// result does not depend on the number of threads. `serial` holds the plain
// loop references the parallel kernels are tested and benchmarked against.
namespace wallforge::kernels {

/// Node count below which the OpenMP kernels stay on the calling thread.
inline constexpr std::size_t kParallelThreshold = 4096;
/// Reduction block length.
inline constexpr std::size_t kBlock = 2048;

/// Band layout of the Newton Jacobian: unknowns interleaved as
/// (u_1, v_1, u_2, v_2, ..., u_{n-2}, v_{n-2}), LAPACK general-band storage
/// with kl = ku = 2 and room for pivoting fill-in.
inline constexpr int kBandLower = 2;
inline constexpr int kBandUpper = 2;
inline constexpr int kBandLd = 2 * kBandLower + kBandUpper + 1;

/// Index of entry (row, col) inside column-major band storage.
inline std::size_t band_index(int row, int col) {
  return static_cast<std::size_t>(col) * kBandLd + static_cast<std::size_t>(kBandLower + kBandUpper + row - col);
}

/// Trapezoid energy: forward-difference cell gradients plus trapezoid-weighted V.
double energy(std::span<const double> u, std::span<const double> v, double h, double eps,
              const CouplingParams& p);

/// Exact gradient of `energy` with respect to interior node values; boundary
/// entries are set to zero.
void energy_gradient(std::span<const double> u, std::span<const double> v, double h, double eps,
                     const CouplingParams& p, std::span<double> gu, std::span<double> gv);

/// Central-difference Euler-Lagrange residuals
///   (u_{i+1} - 2u_i + u_{i-1})/h^2 - V_u,  eps^2 (v_{i+1} - 2v_i + v_{i-1})/h^2 - V_v
/// on interior nodes; boundary entries are zero.
void el_residual(std::span<const double> u, std::span<const double> v, double h, double eps,
                 const CouplingParams& p, std::span<double> ru, std::span<double> rv);

/// Jacobian of `el_residual` in band storage; `band` must hold
/// kBandLd * 2 (n - 2) entries and is fully overwritten.
void assemble_jacobian(std::span<const double> u, std::span<const double> v, double h, double eps,
                       const CouplingParams& p, std::span<double> band);

double max_abs(std::span<const double> a);

namespace serial {
double energy(std::span<const double> u, std::span<const double> v, double h, double eps,
              const CouplingParams& p);
void energy_gradient(std::span<const double> u, std::span<const double> v, double h, double eps,
                     const CouplingParams& p, std::span<double> gu, std::span<double> gv);
void el_residual(std::span<const double> u, std::span<const double> v, double h, double eps,
                 const CouplingParams& p, std::span<double> ru, std::span<double> rv);
void assemble_jacobian(std::span<const double> u, std::span<const double> v, double h, double eps,
                       const CouplingParams& p, std::span<double> band);
double max_abs(std::span<const double> a);
}  // namespace serial

}  // namespace wallforge::kernels
