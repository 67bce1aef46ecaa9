#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ergrates/vec.hpp"

namespace ergrates {

/// How r counts ties among the sorted exponents.
enum class TieMode {
  AllSuccessive,  // zero differences among all successive sorted coordinates
  AtMax,          // only ties with the maximum
};

/// Exponents of a power singularity sigma(Pi(t^{-1})) = O(t^{-alpha}).
struct PowerParams {
  explicit PowerParams(VecD alpha, TieMode mode = TieMode::AllSuccessive);

  VecD alpha;
  VecD alpha_star;  // sorted increasing
  double m = 0.0;   // max alpha_k
  int r = 0;        // tie count
  double theta = 0.0;  // -sum alpha_k
  TieMode mode;
};

enum class RegimeFamily {
  SquareSubcritical,
  SquareCritical,
  SquareSupercritical,
  CircleSubcritical,
  CircleCritical,
  CircleSupercritical,
};

/// I = O(t^{exponents} ln^{log_power}(t^alpha)).
struct RegimeLabel {
  RegimeFamily family;
  VecD exponents;
  int log_power = 0;
};

enum class Comparison { SquareBetter, CircleBetter, Equal };

/// Tolerance of the boundary tests m = 2 and theta = -(d+1).
inline constexpr double kRegimeTolerance = 1e-12;

std::string to_string(RegimeFamily family);
std::string to_string(Comparison c);

/// Cube averages.
RegimeLabel square_regime(const PowerParams& p);
/// Ball averages in dimension alpha.dim().
RegimeLabel circle_regime(const PowerParams& p);
/// Compares the rates along t = p (1, ..., 1): the exponent sum decides, then
/// the smaller log power.
Comparison compare_along_diagonal(const PowerParams& p);

struct RegionCell {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  RegimeLabel square;
  RegimeLabel circle;
  Comparison verdict = Comparison::Equal;
};

/// d = 2 map over (0, alpha1_max] x (0, alpha2_max].
struct RegionMap {
  std::vector<RegionCell> cells;  // row-major in (alpha2, alpha1)
  std::size_t square_labels = 0;  // distinct (family, log power)
  std::size_t circle_labels = 0;
  std::size_t square_components = 0;  // 8-connected, on the regular lattice
  std::size_t circle_components = 0;
};

inline constexpr std::size_t kMinRegionResolution = 8;

/// Regular lattice alpha = max i / (resolution - 1), i >= 1, merged with
/// points placed exactly on m = 2, alpha_1 = alpha_2 and theta = -3.
RegionMap region_map(double alpha1_max, double alpha2_max, std::size_t resolution,
                     TieMode mode = TieMode::AllSuccessive);

}  // namespace ergrates
