#include "ergrates/classify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include "ergrates/error.hpp"
#include "ergrates/parallel.hpp"

namespace ergrates {

namespace {

bool near(double a, double b) { return std::abs(a - b) <= kRegimeTolerance * std::max(1.0, std::abs(b)); }

double sum_of(const VecD& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

using LabelKey = std::pair<RegimeFamily, int>;

LabelKey key(const RegimeLabel& l) { return {l.family, l.log_power}; }

// Connected components of equal labels on an n x n lattice, 8-neighbour.
std::size_t components(const std::vector<LabelKey>& labels, std::size_t nx, std::size_t ny) {
  std::vector<char> seen(labels.size(), 0);
  std::size_t count = 0;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < labels.size(); ++start) {
    if (seen[start]) continue;
    ++count;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t c = stack.back();
      stack.pop_back();
      const auto x = static_cast<long>(c % nx);
      const auto y = static_cast<long>(c / nx);
      for (long dy = -1; dy <= 1; ++dy) {
        for (long dx = -1; dx <= 1; ++dx) {
          const long xx = x + dx, yy = y + dy;
          if (xx < 0 || yy < 0 || xx >= static_cast<long>(nx) || yy >= static_cast<long>(ny)) continue;
          const auto n = static_cast<std::size_t>(yy) * nx + static_cast<std::size_t>(xx);
          if (!seen[n] && labels[n] == labels[start]) {
            seen[n] = 1;
            stack.push_back(n);
          }
        }
      }
    }
  }
  return count;
}

}  // namespace

PowerParams::PowerParams(VecD a, TieMode tie_mode) : alpha(std::move(a)), mode(tie_mode) {
  if (alpha.dim() < 1) throw InvalidArgument("alpha must be nonempty");
  for (double v : alpha) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument("alpha must be positive and finite");
  }
  alpha_star = alpha;
  std::sort(alpha_star.begin(), alpha_star.end());
  const std::size_t d = alpha.dim();
  m = alpha_star[d - 1];
  theta = -sum_of(alpha);
  for (std::size_t k = 0; k + 1 < d; ++k) {
    const bool tie = alpha_star[k + 1] - alpha_star[k] == 0.0;
    if (tie && (mode == TieMode::AllSuccessive || alpha_star[k + 1] == m)) ++r;
  }
}

std::string to_string(RegimeFamily family) {
  switch (family) {
    case RegimeFamily::SquareSubcritical: return "square-subcritical";
    case RegimeFamily::SquareCritical: return "square-critical";
    case RegimeFamily::SquareSupercritical: return "square-supercritical";
    case RegimeFamily::CircleSubcritical: return "circle-subcritical";
    case RegimeFamily::CircleCritical: return "circle-critical";
    case RegimeFamily::CircleSupercritical: return "circle-supercritical";
  }
  return "unknown";
}

std::string to_string(Comparison c) {
  switch (c) {
    case Comparison::SquareBetter: return "square-better";
    case Comparison::CircleBetter: return "circle-better";
    case Comparison::Equal: return "equal";
  }
  return "unknown";
}

RegimeLabel square_regime(const PowerParams& p) {
  if (near(p.m, 2.0)) return {RegimeFamily::SquareCritical, -1.0 * p.alpha, p.r + 1};
  if (p.m < 2.0) return {RegimeFamily::SquareSubcritical, -1.0 * p.alpha, 0};
  return {RegimeFamily::SquareSupercritical, (-2.0 / p.m) * p.alpha, p.r};
}

RegimeLabel circle_regime(const PowerParams& p) {
  const double critical = -(static_cast<double>(p.alpha.dim()) + 1.0);
  if (near(p.theta, critical)) return {RegimeFamily::CircleCritical, -1.0 * p.alpha, 1};
  if (p.theta > critical) return {RegimeFamily::CircleSubcritical, -1.0 * p.alpha, 0};
  return {RegimeFamily::CircleSupercritical, (-critical / p.theta) * p.alpha, 0};
}

Comparison compare_along_diagonal(const PowerParams& p) {
  const auto sq = square_regime(p);
  const auto ci = circle_regime(p);
  const double es = sum_of(sq.exponents);
  const double ec = sum_of(ci.exponents);
  if (!near(es, ec)) return es < ec ? Comparison::SquareBetter : Comparison::CircleBetter;
  if (sq.log_power != ci.log_power) {
    return sq.log_power < ci.log_power ? Comparison::SquareBetter : Comparison::CircleBetter;
  }
  return Comparison::Equal;
}

RegionMap region_map(double alpha1_max, double alpha2_max, std::size_t resolution, TieMode mode) {
  if (resolution < kMinRegionResolution) {
    throw InvalidArgument("region map resolution must be at least " +
                          std::to_string(kMinRegionResolution));
  }
  if (!(alpha1_max > 0.0) || !(alpha2_max > 0.0)) {
    throw InvalidArgument("region map bounds must be positive");
  }
  const std::size_t n = resolution - 1;
  auto axis = [&](double top) {
    std::vector<double> v;
    for (std::size_t i = 1; i <= n; ++i) v.push_back(top * static_cast<double>(i) / static_cast<double>(n));
    return v;
  };
  const auto a1 = axis(alpha1_max);
  const auto a2 = axis(alpha2_max);

  std::set<std::pair<double, double>> points;  // (alpha2, alpha1) for row-major order
  for (double y : a2) for (double x : a1) points.insert({y, x});
  auto add = [&](double x, double y) {
    if (x > 0.0 && y > 0.0 && x <= alpha1_max && y <= alpha2_max) points.insert({y, x});
  };
  // Measure-zero boundaries, sampled exactly.
  for (double s : a1) {
    add(s, 2.0);
    add(s, s);
    add(s, 3.0 - s);
  }
  for (double s : a2) add(2.0, s);
  add(2.0, 2.0);
  add(1.5, 1.5);

  const std::vector<std::pair<double, double>> ordered(points.begin(), points.end());
  RegionMap map;
  map.cells = parallel_map(ordered.size(), [&](std::size_t i) {
    const auto [y, x] = ordered[i];
    const PowerParams p(VecD{x, y}, mode);
    return RegionCell{x, y, square_regime(p), circle_regime(p), compare_along_diagonal(p)};
  });
  std::set<LabelKey> square, circle;
  for (const auto& c : map.cells) {
    square.insert(key(c.square));
    circle.insert(key(c.circle));
  }
  map.square_labels = square.size();
  map.circle_labels = circle.size();

  std::vector<LabelKey> sq_grid, ci_grid;
  for (double y : a2) {
    for (double x : a1) {
      const PowerParams p(VecD{x, y}, mode);
      sq_grid.push_back(key(square_regime(p)));
      ci_grid.push_back(key(circle_regime(p)));
    }
  }
  map.square_components = components(sq_grid, n, n);
  map.circle_components = components(ci_grid, n, n);
  return map;
}

}  // namespace ergrates
