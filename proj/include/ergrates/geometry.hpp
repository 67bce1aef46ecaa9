#pragma once

#include <cstddef>
#include <string>

#include "ergrates/vec.hpp"

namespace ergrates {

enum class BodyKind { Ball, Ellipsoid, Cube };

/// Largest dimension supported by the closed-form geometry.
inline constexpr std::size_t kMaxDim = 4;

/// Relative tolerance for boundary membership in the body's defining equation.
inline constexpr double kBoundaryTolerance = 1e-8;

/// A convex body from the parametric family used throughout the library:
/// a centered ball, a centered ellipsoid, or the unit cube [0,1]^d.
/// Balls and ellipsoids are strictly convex; the cube is not and is rejected
/// by every operation that needs unique extremal points or curvature.
class ConvexBody {
 public:
  static ConvexBody ball(double radius, std::size_t dim);
  static ConvexBody ellipsoid(VecD semi_axes);
  static ConvexBody cube(std::size_t dim);

  BodyKind kind() const { return kind_; }
  std::size_t dim() const { return axes_.dim(); }
  /// Ball radius. Throws InvalidArgument for other kinds.
  double radius() const;
  /// Semi-axes; for a ball all equal to the radius, for the cube all 1/2.
  const VecD& semi_axes() const { return axes_; }
  bool strictly_convex() const { return kind_ != BodyKind::Cube; }
  double volume() const;
  /// Text form: `ball:R`, `ellipsoid:a1,a2[,a3]` or `cube`.
  std::string describe() const;

 private:
  ConvexBody(BodyKind kind, VecD axes) : kind_(kind), axes_(std::move(axes)) {}

  BodyKind kind_;
  VecD axes_;
};

struct ExtremalPoints {
  VecD plus;
  VecD minus;
};

/// Lebesgue measure of the unit ball in R^d.
double unit_ball_volume(std::size_t dim);
/// Surface area of the unit sphere S^{d-1}.
double unit_sphere_area(std::size_t dim);

/// max_{y in K} (y, eta). The direction is normalized first; zero throws.
double support(const ConvexBody& body, const VecD& direction);

/// Unique boundary maximizer / minimizer of (y, eta).
ExtremalPoints extremal_points(const ConvexBody& body, const VecD& direction);

/// Product of the d-1 principal curvatures of the boundary at `point`.
double gaussian_curvature(const ConvexBody& body, const VecD& point);

/// (x^+ - x^-, eta) = support(eta) + support(-eta).
double width(const ConvexBody& body, const VecD& direction);

/// True when `point` satisfies the body's boundary equation to
/// kBoundaryTolerance (relative).
bool on_boundary(const ConvexBody& body, const VecD& point);

}  // namespace ergrates
