#pragma once

namespace ergrates {

/// Argument at which J_nu switches from the power series to the Hankel
/// expansion. Both branches agree to better than 1e-12 on [16, 19].
inline constexpr double kBesselSwitchover = 17.5;

/// Largest supported order.
inline constexpr double kBesselMaxOrder = 4.0;

/// Bessel function of the first kind J_nu(z), nu in [0, 4], z >= 0.
/// Absolute accuracy ~1e-13 for z up to 1e4 and beyond.
double bessel_j(double nu, double z);

/// J_nu(z) / z^nu. Finite at z = 0, where it equals 1 / (2^nu Gamma(nu + 1)).
double bessel_j_over_power(double nu, double z);

/// Ascending power series, summed in extended precision.
double bessel_j_series(double nu, double z);

/// Hankel large-argument expansion, truncated at its smallest term.
double bessel_j_hankel(double nu, double z);

}  // namespace ergrates
