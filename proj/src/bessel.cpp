#include "ergrates/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ergrates/error.hpp"

namespace ergrates {

namespace {

void check_args(double nu, double z) {
  if (!(nu >= 0.0 && nu <= kBesselMaxOrder)) {
    throw InvalidArgument("bessel_j: order outside [0, 4]");
  }
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw InvalidArgument("bessel_j: argument must be finite and >= 0");
  }
}

// sum_k (-z^2/4)^k / (k! Gamma(k + nu + 1)), the entire part of J_nu(z)/(z/2)^nu.
long double entire_series(double nu, double z) {
  const long double q = -0.25L * static_cast<long double>(z) * z;
  long double term = 1.0L / std::tgamma(static_cast<long double>(nu) + 1.0L);
  long double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<long double>(k) * (k + static_cast<long double>(nu)));
    sum += term;
    if (std::fabs(term) <= 1e-21L * std::fabs(sum) && k > z) break;
  }
  return sum;
}

bool is_half_integer(double nu) {
  const double twice = 2.0 * nu;
  return twice == std::floor(twice) && std::fmod(twice, 2.0) == 1.0;
}

// J_{n+1/2}(z) = sqrt(2z/pi) j_n(z) by upward recurrence of the spherical
// Bessel functions; stable for z > n.
double half_integer_closed_form(double nu, double z) {
  const int n = static_cast<int>(nu - 0.5);
  const double s = std::sin(z);
  const double c = std::cos(z);
  double j_prev = s / z;
  if (n == 0) return std::sqrt(2.0 * z / std::numbers::pi) * j_prev;
  double j_cur = s / (z * z) - c / z;
  for (int k = 1; k < n; ++k) {
    const double next = (2.0 * k + 1.0) / z * j_cur - j_prev;
    j_prev = j_cur;
    j_cur = next;
  }
  return std::sqrt(2.0 * z / std::numbers::pi) * j_cur;
}

}  // namespace

double bessel_j_series(double nu, double z) {
  check_args(nu, z);
  if (z == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const long double half = 0.5L * static_cast<long double>(z);
  return static_cast<double>(std::pow(half, static_cast<long double>(nu)) *
                             entire_series(nu, z));
}

double bessel_j_hankel(double nu, double z) {
  check_args(nu, z);
  if (z <= 0.0) throw InvalidArgument("bessel_j_hankel: argument must be > 0");
  const double mu = 4.0 * nu * nu;
  // a_k = prod_{j<=k} (mu - (2j-1)^2) / (k! 8^k z^k); P takes even k with
  // alternating signs, Q odd k.
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (8.0 * k * z);
    const double mag = std::abs(term);
    if (mag == 0.0) break;
    if (mag > last) break;  // asymptotic series: stop at the smallest term
    last = mag;
    // sign pattern: k=1 -> +Q, k=2 -> -P, k=3 -> -Q, k=4 -> +P, ...
    const int r = k % 4;
    if (r == 1) q += term;
    else if (r == 2) p -= term;
    else if (r == 3) q -= term;
    else p += term;
    if (mag < 1e-17 * std::abs(p)) break;
  }
  // omega = z - (nu/2 + 1/4) pi, expanded to keep the large argument exact.
  const double shift = (0.5 * nu + 0.25) * std::numbers::pi;
  const double cz = std::cos(z);
  const double sz = std::sin(z);
  const double cs = std::cos(shift);
  const double ss = std::sin(shift);
  const double cos_w = cz * cs + sz * ss;
  const double sin_w = sz * cs - cz * ss;
  return std::sqrt(2.0 / (std::numbers::pi * z)) * (p * cos_w - q * sin_w);
}

double bessel_j(double nu, double z) {
  check_args(nu, z);
  if (is_half_integer(nu) && z >= std::max(4.0, 2.0 * nu)) {
    return half_integer_closed_form(nu, z);
  }
  if (z < kBesselSwitchover) return bessel_j_series(nu, z);
  return bessel_j_hankel(nu, z);
}

double bessel_j_over_power(double nu, double z) {
  check_args(nu, z);
  if (z < kBesselSwitchover) {
    return static_cast<double>(entire_series(nu, z) /
                               std::pow(2.0L, static_cast<long double>(nu)));
  }
  return bessel_j(nu, z) / std::pow(z, nu);
}

}  // namespace ergrates
