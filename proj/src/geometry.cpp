#include "ergrates/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "ergrates/error.hpp"

namespace ergrates {

namespace {

void check_dim(std::size_t dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw InvalidArgument("dimension must be in [1, " +
                          std::to_string(kMaxDim) + "], got " +
                          std::to_string(dim));
  }
}

void require_strict(const ConvexBody& body, const char* what) {
  if (!body.strictly_convex()) {
    throw NotStrictlyConvex(std::string(what) +
                            ": the cube is not strictly convex");
  }
}

void require_dim(const ConvexBody& body, const VecD& v) {
  if (v.dim() != body.dim()) throw DimensionMismatch(body.dim(), v.dim());
}

// sqrt(sum a_k^2 eta_k^2) for a unit eta.
double ellipsoid_support(const VecD& axes, const VecD& eta) {
  double s = 0.0;
  for (std::size_t k = 0; k < axes.dim(); ++k) {
    const double v = axes[k] * eta[k];
    s += v * v;
  }
  return std::sqrt(s);
}

}  // namespace

ConvexBody ConvexBody::ball(double radius, std::size_t dim) {
  check_dim(dim);
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument("ball radius must be positive");
  }
  return ConvexBody(BodyKind::Ball, VecD(dim, radius));
}

ConvexBody ConvexBody::ellipsoid(VecD semi_axes) {
  check_dim(semi_axes.dim());
  for (double a : semi_axes) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw InvalidArgument("ellipsoid semi-axes must be positive");
    }
  }
  return ConvexBody(BodyKind::Ellipsoid, std::move(semi_axes));
}

ConvexBody ConvexBody::cube(std::size_t dim) {
  check_dim(dim);
  return ConvexBody(BodyKind::Cube, VecD(dim, 0.5));
}

double ConvexBody::radius() const {
  if (kind_ != BodyKind::Ball) throw InvalidArgument("radius: not a ball");
  return axes_[0];
}

double ConvexBody::volume() const {
  if (kind_ == BodyKind::Cube) return 1.0;
  return unit_ball_volume(dim()) * axes_.product();
}

std::string ConvexBody::describe() const {
  switch (kind_) {
    case BodyKind::Ball:
      return "ball:" + format_double(axes_[0]);
    case BodyKind::Ellipsoid:
      return "ellipsoid:" + to_string(axes_);
    case BodyKind::Cube:
      return "cube";
  }
  return {};
}

double unit_ball_volume(std::size_t dim) {
  const double h = 0.5 * static_cast<double>(dim);
  return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

double unit_sphere_area(std::size_t dim) {
  const double h = 0.5 * static_cast<double>(dim);
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

double support(const ConvexBody& body, const VecD& direction) {
  require_dim(body, direction);
  const VecD eta = direction.normalized();
  if (body.kind() == BodyKind::Cube) {
    double s = 0.0;
    for (double v : eta) s += std::max(v, 0.0);
    return s;
  }
  return ellipsoid_support(body.semi_axes(), eta);
}

ExtremalPoints extremal_points(const ConvexBody& body, const VecD& direction) {
  require_strict(body, "extremal_points");
  require_dim(body, direction);
  const VecD eta = direction.normalized();
  const VecD& a = body.semi_axes();
  const double h = ellipsoid_support(a, eta);
  VecD plus(body.dim());
  for (std::size_t k = 0; k < body.dim(); ++k) plus[k] = a[k] * a[k] * eta[k] / h;
  return {plus, -plus};
}

bool on_boundary(const ConvexBody& body, const VecD& point) {
  require_dim(body, point);
  if (body.kind() == BodyKind::Cube) {
    bool inside = true;
    bool on_face = false;
    for (double v : point) {
      if (v < -kBoundaryTolerance || v > 1.0 + kBoundaryTolerance) inside = false;
      if (std::abs(v) <= kBoundaryTolerance || std::abs(v - 1.0) <= kBoundaryTolerance) {
        on_face = true;
      }
    }
    return inside && on_face;
  }
  const VecD& a = body.semi_axes();
  double s = 0.0;
  for (std::size_t k = 0; k < body.dim(); ++k) {
    const double u = point[k] / a[k];
    s += u * u;
  }
  return std::abs(s - 1.0) <= kBoundaryTolerance;
}

double gaussian_curvature(const ConvexBody& body, const VecD& point) {
  require_strict(body, "gaussian_curvature");
  if (!on_boundary(body, point)) {
    throw InvalidArgument("gaussian_curvature: point is not on the boundary");
  }
  if (body.kind() == BodyKind::Ball) {
    return std::pow(body.radius(), 1.0 - static_cast<double>(body.dim()));
  }
  // Centered ellipsoid: K = 1 / (prod a_k^2 * (sum p_k^2 / a_k^4)^{(d+1)/2}).
  const VecD& a = body.semi_axes();
  double axes_sq = 1.0;
  double s = 0.0;
  for (std::size_t k = 0; k < body.dim(); ++k) {
    const double a2 = a[k] * a[k];
    axes_sq *= a2;
    s += point[k] * point[k] / (a2 * a2);
  }
  const double d = static_cast<double>(body.dim());
  return 1.0 / (axes_sq * std::pow(s, 0.5 * (d + 1.0)));
}

double width(const ConvexBody& body, const VecD& direction) {
  return support(body, direction) + support(body, -direction);
}

}  // namespace ergrates
