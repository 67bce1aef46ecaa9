#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "ergrates/geometry.hpp"
#include "ergrates/vec.hpp"

namespace ergrates {

using Complex = std::complex<double>;

/// F[I_K](x) = \int_K e^{i(y,x)} dy for the ball of radius R centered at 0,
/// in the dimension of x.
Complex ft_ball(double radius, const VecD& x);

/// Transform of the unit cube [0,1]^d: prod_k (e^{i x_k} - 1) / (i x_k).
Complex ft_cube(const VecD& x);

/// Closed-form transform of any supported body.
Complex ft(const ConvexBody& body, const VecD& x);

/// Transform of the dilated body K⊙t: (prod t_k) F[I_K](x⊙t).
Complex ft_scaled(const ConvexBody& body, const VecD& t, const VecD& x);

/// F[I_B](x) / L_d(B) for a ball B of radius R as a function of z = R |x|:
/// Gamma(nu + 1) 2^nu J_nu(z) / z^nu with nu = d / 2. Equals 1 at z = 0.
double ball_profile(std::size_t dim, double z);

/// |F[I_K](x)|^2 / L_d(K)^2, the integrand of I_K. Lies in [0, 1].
double normalized_modulus_sq(const ConvexBody& body, const VecD& x);

struct QuadratureResult {
  Complex value;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Largest |x| accepted by the quadrature oracle.
inline constexpr double kQuadratureMaxFrequency = 200.0;

/// Independent oracle for ft: adaptive tensor-product Gauss-Legendre over a
/// smooth parametrization of the body, with every cell spanning at most a
/// quarter oscillation period per axis. Requires d <= 3 and |x| <= 200.
/// Throws BudgetExceeded if `tol` (absolute) is not met within
/// `max_evaluations` integrand evaluations.
QuadratureResult ft_quadrature(const ConvexBody& body, const VecD& x, double tol,
                               std::size_t max_evaluations = 100'000'000);

/// Two-point stationary-phase approximation to F[I_K](x) for a strictly
/// convex body.
struct HerzAmplitude {
  Complex value;
  double modulus_envelope = 0.0;  // amplitude_plus + amplitude_minus
  double amplitude_plus = 0.0;
  double amplitude_minus = 0.0;
  double phase_plus = 0.0;
  double phase_minus = 0.0;
};

/// Calibrated constants of the stationary-phase formula under the
/// e^{i(y,x)} convention. Fixed by matching the exact ball transform.
namespace herz {
/// Amplitude coefficient (2 pi)^{(d-1)/2}.
double amplitude_coefficient(std::size_t dim);
/// Phase offset pi (d+1) / 4, subtracted at x^+ and added at x^-.
double phase_offset(std::size_t dim);
}  // namespace herz

HerzAmplitude herz_asymptotic(const ConvexBody& body, const VecD& x);

/// max over samples of |F[I_K](x)| |x|^{(d+1)/2}.
double decay_bound_constant(const ConvexBody& body, std::span<const VecD> samples);

struct RayPeak {
  double r;
  double modulus;
};

/// Local maxima of r -> |F[I_K](r eta)| on [r_lo, r_hi].
std::vector<RayPeak> modulus_peaks_along_ray(const ConvexBody& body,
                                             const VecD& direction, double r_lo,
                                             double r_hi);

/// Zeros of r -> Re F[I_K](r eta) on [r_lo, r_hi].
std::vector<double> real_part_zeros_along_ray(const ConvexBody& body,
                                              const VecD& direction, double r_lo,
                                              double r_hi);

}  // namespace ergrates
