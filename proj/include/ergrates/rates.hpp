#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ergrates/geometry.hpp"
#include "ergrates/spectral.hpp"
#include "ergrates/vec.hpp"

namespace ergrates {

/// Positively homogeneous function phi(r t) = r^theta phi(t) on t > 0, stored
/// as its degree and its values on the unit sphere.
class HomogeneousFunction {
 public:
  using SphereRule = std::function<double(const VecD&)>;

  HomogeneousFunction(std::size_t dim, double degree, SphereRule rule, std::string description);

  /// |t|^degree.
  static HomogeneousFunction power(std::size_t dim, double degree);
  /// prod t_k^{-a_k}, of degree -sum a_k.
  static HomogeneousFunction monomial(const VecD& a);

  std::size_t dim() const { return dim_; }
  double degree() const { return degree_; }
  /// |t|^theta rule(t / |t|). Requires t > 0.
  double operator()(const VecD& t) const;
  double on_sphere(const VecD& omega) const { return rule_(omega); }
  /// Text form: `power:g` for |t|^{-g}, `monomial:a1,...` or a free label.
  const std::string& describe() const { return description_; }

 private:
  std::size_t dim_;
  double degree_;
  SphereRule rule_;
  std::string description_;
};

/// The cone X_B = {t > 0 : t_i <= B t_j for all i, j}.
class Sector {
 public:
  explicit Sector(double bound);

  double bound() const { return bound_; }
  bool contains(const VecD& t) const;
  /// Unit directions in X_B. In d = 2 they are evenly spaced in angle from
  /// atan(1/B) to atan(B); in general they form a grid in log-ratio
  /// coordinates log(t_k / t_1). `per_axis` >= 1; with 1 only the diagonal.
  std::vector<VecD> sample_directions(std::size_t dim, std::size_t per_axis) const;

 private:
  double bound_;
};

struct RateSample {
  double p;
  double value;
};

/// log I = theta log p + beta log log p + c, fitted by least squares.
struct RateFit {
  double theta_hat = 0.0;
  double log_power_hat = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  std::size_t points = 0;
  std::string path;
};

inline constexpr std::size_t kMinFitPoints = 8;
inline constexpr double kMinFitDecades = 2.0;

/// Requires >= 8 samples with increasing p > 1 spanning >= 2 decades and
/// positive values.
RateFit fit_rate(std::span<const RateSample> samples, std::string path = {});
/// Same requirements; the log power is held at zero.
RateFit fit_power(std::span<const RateSample> samples, std::string path = {});

/// Geometric ladder from p_min to p_max inclusive with ratio <= max_ratio.
std::vector<double> geometric_ladder(double p_min, double p_max, double max_ratio = 1.4142135623730951);

/// Default relative tolerance of the continuous evaluators.
inline constexpr double kRateTolerance = 1e-6;
/// Dilations per window in i_k_window_averaged.
inline constexpr int kWindowSamples = 64;

/// sum_j w_j |F[I_K](x_j ⊙ t) / L_d(K)|^2 over an atomic measure.
double i_k_atomic(const ConvexBody& body, const SpectralMeasure& sigma, const VecD& t);

/// \int |F[I_K](x ⊙ t) / L_d(K)|^2 d sigma for a measure with a density, in
/// polar coordinates. Radial panels span a quarter period of |F|^2, computed
/// from the width of K. Requires d <= 3. Throws BudgetExceeded when `tol`
/// (relative) is out of reach.
double i_k_continuous(const ConvexBody& body, const SpectralMeasure& sigma, const VecD& t,
                      double tol = kRateTolerance);

/// Atomic and continuous parts together.
double i_k(const ConvexBody& body, const SpectralMeasure& sigma, const VecD& t,
           double tol = kRateTolerance);

/// I_K(t) = 2 \int_0^1 u sigma({x : |F[I_K](x ⊙ t)| / L_d(K) > u}) du, with
/// the level sets built lobe by lobe from the zeros and peaks of
/// J_nu(z) / z^nu. Only balls with radial-power measures are supported.
double i_k_distribution_form(const ConvexBody& body, const SpectralMeasure& sigma,
                             const VecD& t, double tol = kRateTolerance);

/// Atomic part averaged over the dilations lambda t, lambda in [1, 2], plus
/// the continuous part at t. Removes the oscillation of atomic spectra.
double i_k_window_averaged(const ConvexBody& body, const SpectralMeasure& sigma, const VecD& t,
                           double tol = kRateTolerance);

/// Evidence that a ratio sequence stays bounded: it is declared unbounded
/// when its last value exceeds 4x its median and its log-log trend rises.
struct BoundednessTest {
  bool bounded = true;
  double last = 0.0;
  double median = 0.0;
  double slope = 0.0;
  /// last / (4 median); above 1 with a positive slope means unbounded.
  double margin = 0.0;
};

BoundednessTest doubling_test(std::span<const double> p, std::span<const double> values);

/// t = p s for every direction s and every p on the ladder.
struct RateGrid {
  std::vector<VecD> directions;
  std::vector<double> p;
};

inline constexpr std::size_t kMinGridLevels = 5;

/// For each p, the sup over directions of a ratio, with its doubling test.
struct RatioSeries {
  std::vector<double> p;
  std::vector<double> sup_ratio;
  BoundednessTest test;
};

struct Theorem1Report {
  RatioSeries i_ratio;     // I_K(t) / phi(t)
  RatioSeries mass_ratio;  // sigma(E(t^{-1})) / phi(t)
  bool consistent = false;
  std::string verdict;
};

/// Requires phi.degree() > -(d+1).
Theorem1Report check_theorem1(const ConvexBody& body, const SpectralMeasure& sigma,
                              const HomogeneousFunction& phi, const RateGrid& grid,
                              double tol = kRateTolerance);

struct Theorem2Report {
  RatioSeries scaled_i;  // |t|^{d+1} I_K(t)
  SingularIntegral singular;
  bool in_sector = true;
  bool consistent = false;
  std::string verdict;
};

/// With `require_sector` the grid must lie in X_B; without it the sweep is
/// exploratory and `in_sector` records whether it did.
Theorem2Report check_theorem2(const ConvexBody& body, const SpectralMeasure& sigma,
                              const Sector& sector, const RateGrid& grid,
                              double tol = kRateTolerance, bool require_sector = true);

struct Theorem3Report {
  std::vector<double> p;
  std::vector<double> i_values;  // I along p s (window-averaged for atoms)
  std::vector<double> scaled;    // p^{d+1} I
  RateFit fit;                   // pure power fit of I
  bool sigma_zero = false;
  bool consistent = false;
  std::string verdict;
};

/// Fitted exponent margin below -(d+1) tolerated before a fit counts as
/// faster than the critical rate.
inline constexpr double kCriticalFitSlack = 0.1;

/// Requires theta < -(d+1) and a positive unit direction s.
Theorem3Report check_theorem3(const ConvexBody& body, const SpectralMeasure& sigma, double theta,
                              const VecD& direction, std::span<const double> p,
                              double tol = kRateTolerance);

/// Rate of I_K implied by sigma(E(t^{-1})) = O(|t|^{-gamma}).
struct PredictedRate {
  double theta = 0.0;
  int log_power = 0;
  std::string regime;  // "subcritical", "critical", "supercritical"
};

PredictedRate proposition2_bound(double gamma, std::size_t dim);

/// E = inf, F = sup of phi on the unit sphere of X_B, so that
/// E |t|^theta <= phi(t) <= F |t|^theta on X_B.
struct EquivalenceBounds {
  double lower = 0.0;
  double upper = 0.0;
  VecD argmin;
  VecD argmax;
};

/// Relative safety margin applied to the sampled extremes.
inline constexpr double kEquivalenceGuard = 1e-9;

EquivalenceBounds homog_equivalence_bounds(const HomogeneousFunction& phi, const Sector& sector);

}  // namespace ergrates
