#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "ergrates/vec.hpp"

namespace ergrates {

enum class MeasureKind { Atomic, RadialPower, AnisotropicPower, Sum };

struct Atom {
  VecD location;
  double weight;
};

/// Continuous part of a measure in polar coordinates:
///   d sigma = angular(w) r^{exponent - 1} dr dw   on 0 < r <= cutoff(w).
struct PolarDensity {
  double exponent = 0.0;
  std::function<double(const VecD&)> angular;
  std::function<double(const VecD&)> cutoff;
  /// Which smooth formula `cutoff` uses at w (kinks sit at the switches).
  std::function<int(const VecD&)> cutoff_branch;
  bool isotropic = false;      // angular and cutoff do not depend on w
  bool axis_singular = false;  // angular weight not smooth on coordinate planes
};

/// Finite Borel measure on R^d without an atom at the origin. Variants:
///   Atomic            sum_j w_j delta_{x_j}, x_j != 0, w_j > 0
///   RadialPower       density c |x|^{gamma - d} on 0 < |x| <= R
///   AnisotropicPower  density c prod |x_k|^{alpha_k - 1} on the box |x_k| <= b_k
///   Sum               sum of the above
/// The total mass plays the role of |h - Ph|^2.
class SpectralMeasure {
 public:
  static SpectralMeasure zero(std::size_t dim);
  static SpectralMeasure atomic(std::size_t dim, std::vector<Atom> atoms);
  static SpectralMeasure radial_power(std::size_t dim, double gamma, double cutoff,
                                      double scale);
  static SpectralMeasure radial_power_with_mass(std::size_t dim, double gamma,
                                                double cutoff, double total_mass);
  static SpectralMeasure anisotropic_power(VecD alpha, VecD half_widths, double scale);
  static SpectralMeasure anisotropic_power_with_mass(VecD alpha, VecD half_widths,
                                                     double total_mass);
  static SpectralMeasure sum(std::vector<SpectralMeasure> parts);

  MeasureKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  double total_mass() const { return total_mass_; }
  bool is_zero() const { return total_mass_ == 0.0; }

  const std::vector<Atom>& atoms() const { return atoms_; }
  double gamma() const { return gamma_; }
  double cutoff() const { return cutoff_; }
  double scale() const { return scale_; }
  const VecD& alpha() const { return alpha_; }
  const VecD& half_widths() const { return half_widths_; }
  const std::vector<SpectralMeasure>& parts() const { return parts_; }

  /// True when no part of the measure is atomic.
  bool has_density() const;
  /// All atoms of the measure, collected through sums.
  std::vector<Atom> atomic_part() const;
  /// All continuous parts in polar form, collected through sums.
  std::vector<PolarDensity> polar_parts() const;

  /// Text form (`atomic:[...]`, `radial:gamma,R,mass`, `aniso:...`, `sum:[...]`).
  std::string describe() const;

 private:
  SpectralMeasure() = default;

  MeasureKind kind_ = MeasureKind::Atomic;
  std::size_t dim_ = 0;
  double total_mass_ = 0.0;
  std::vector<Atom> atoms_;
  double gamma_ = 0.0;
  double cutoff_ = 0.0;
  double scale_ = 0.0;
  VecD alpha_;
  VecD half_widths_;
  std::vector<SpectralMeasure> parts_;
};

enum class NeighborhoodShape { Ellipsoid, Box };

/// Neighborhood of zero: the ellipsoid E(delta) = {sum x_k^2 / delta_k^2 < 1}
/// or the box Pi(t^{-1}) = {-1 < t_k x_k <= 1}.
class Neighborhood {
 public:
  static Neighborhood ellipsoid(VecD delta);
  /// E(t^{-1}).
  static Neighborhood ellipsoid_inverse(const VecD& t);
  /// Pi(t^{-1}).
  static Neighborhood box(VecD t);

  NeighborhoodShape shape() const { return shape_; }
  /// delta for ellipsoids, t for boxes.
  const VecD& parameter() const { return parameter_; }
  std::size_t dim() const { return parameter_.dim(); }

  bool contains(const VecD& x) const;
  /// sup { r : r w in N } for a unit vector w (infinite allowed for boxes).
  double radial_extent(const VecD& omega) const;
  /// Index of the face of a box that bounds the ray along w; 0 for ellipsoids.
  int extent_branch(const VecD& omega) const;

 private:
  Neighborhood(NeighborhoodShape shape, VecD parameter)
      : shape_(shape), parameter_(std::move(parameter)) {}

  NeighborhoodShape shape_;
  VecD parameter_;
};

/// sigma(N). Closed forms where available, otherwise angular quadrature to
/// relative tolerance `rel_tol`.
double mass(const SpectralMeasure& sigma, const Neighborhood& n, double rel_tol = 1e-7);

struct SingularIntegral {
  enum class Status { Finite, Infinite, Undetermined };
  Status status = Status::Undetermined;
  double value = 0.0;  // meaningful only when Finite
};

/// Dyadic-shell divergence test parameters.
inline constexpr int kShellCount = 40;
inline constexpr int kShellWindow = 10;
inline constexpr double kShellDecayRatio = 0.95;
inline constexpr double kShellDivergenceBound = 1e12;

/// \int d sigma(x) / |x|^q. Atomic and radial parts are exact; other parts go
/// through the dyadic-shell test near the origin.
SingularIntegral singular_integral(const SpectralMeasure& sigma, double q);

/// The dyadic-shell route for every continuous part, including the ones with
/// closed forms. Used to cross-check the analytic branch.
SingularIntegral singular_integral_by_shells(const SpectralMeasure& sigma, double q);

/// Pointwise density; 0 outside the support. Rejects measures with atoms.
double density_at(const SpectralMeasure& sigma, const VecD& x);

std::string to_string(SingularIntegral::Status status);

}  // namespace ergrates
