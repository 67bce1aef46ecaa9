#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ergrates/error.hpp"
#include "ergrates/geometry.hpp"

using namespace ergrates;

namespace {

VecD random_direction(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> g;
  VecD v(d);
  for (auto& c : v) c = g(rng);
  return v.normalized();
}

// Ellipse boundary point at parameter s.
VecD ellipse_point(double a, double b, double s) { return {a * std::cos(s), b * std::sin(s)}; }

}  // namespace

TEST_CASE("vector arithmetic") {
  CHECK(dot(VecD{1, 0}, VecD{0, 1}) == 0.0);
  CHECK(dot(VecD{1, 2, 3}, VecD{1, 1, 1}) == 6.0);
  CHECK(dot(VecD{3, 4}, VecD{3, 4}) == 25.0);
  CHECK(VecD{3, 4}.norm() == 5.0);
  CHECK(hadamard(VecD{1, 2}, VecD{3, 4}) == VecD{3, 8});
  CHECK(hadamard(VecD{1.5, -2}, VecD{1, 1}) == VecD{1.5, -2});
  CHECK_THROWS_AS(dot(VecD{1, 2}, VecD{1, 2, 3}), DimensionMismatch);
  CHECK_THROWS_AS(hadamard(VecD{1}, VecD{1, 2}), DimensionMismatch);
  CHECK_THROWS_AS(VecD(2).normalized(), InvalidArgument);
}

TEST_CASE("dilating a body scales its volume by the product of t") {
  const auto k = ConvexBody::ball(1.0, 2);
  const VecD t{2, 2};
  const auto kt = ConvexBody::ellipsoid(hadamard(k.semi_axes(), t));
  CHECK(kt.volume() == doctest::Approx(4.0 * k.volume()).epsilon(1e-14));
}

TEST_CASE("support values") {
  const auto ball = ConvexBody::ball(1.0, 3);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) CHECK(support(ball, random_direction(rng, 3)) == doctest::Approx(1.0));

  const auto e = ConvexBody::ellipsoid({2, 1});
  CHECK(support(e, {1, 0}) == doctest::Approx(2.0));
  const VecD diag = VecD{1, 1}.normalized();
  CHECK(support(e, diag) == doctest::Approx(std::sqrt(2.5)).epsilon(1e-14));

  // Brute-force sweep of the boundary parametrization.
  double best = -1.0;
  for (int i = 0; i < 200000; ++i) {
    const double s = 2.0 * std::numbers::pi * i / 200000.0;
    best = std::max(best, dot(ellipse_point(2, 1, s), diag));
  }
  CHECK(support(e, diag) == doctest::Approx(best).epsilon(1e-9));

  CHECK(support(ConvexBody::cube(2), {1, 0}) == doctest::Approx(1.0));
  CHECK(support(ConvexBody::cube(2), diag) == doctest::Approx(std::sqrt(2.0)));
  CHECK(support(ConvexBody::cube(2), {-1, 0}) == 0.0);
  CHECK_THROWS_AS(support(e, {0, 0}), InvalidArgument);
}

TEST_CASE("support is unchanged by positive rescaling of the direction") {
  const auto e = ConvexBody::ellipsoid({2, 1, 0.5});
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const VecD eta = random_direction(rng, 3);
    CHECK(support(e, 7.5 * eta) == doctest::Approx(support(e, eta)).epsilon(1e-14));
  }
}

TEST_CASE("extremal points") {
  const auto ball = ConvexBody::ball(1.0, 2);
  const auto bp = extremal_points(ball, {0, 1});
  CHECK(bp.plus == VecD{0, 1});
  CHECK(bp.minus == VecD{0, -1});

  const auto e = ConvexBody::ellipsoid({2, 1});
  const auto ep = extremal_points(e, {1, 0});
  CHECK(ep.plus[0] == doctest::Approx(2.0));
  CHECK(ep.plus[1] == doctest::Approx(0.0));
  CHECK(ep.minus[0] == doctest::Approx(-2.0));

  const VecD diag = VecD{1, 1}.normalized();
  const auto dp = extremal_points(e, diag);
  CHECK(dp.plus[0] == doctest::Approx(4.0 / std::sqrt(5.0)).epsilon(1e-14));
  CHECK(dp.plus[1] == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-14));

  // Dense boundary sampling: the maximizer of (y, eta).
  double best = -1.0;
  VecD arg;
  for (int i = 0; i < 400000; ++i) {
    const VecD y = ellipse_point(2, 1, 2.0 * std::numbers::pi * i / 400000.0);
    if (dot(y, diag) > best) {
      best = dot(y, diag);
      arg = y;
    }
  }
  CHECK((arg - dp.plus).norm() < 1e-4);

  CHECK_THROWS_AS(extremal_points(ConvexBody::cube(2), diag), NotStrictlyConvex);
}

TEST_CASE("extremal points are boundary maximizers") {
  std::mt19937_64 rng(3);
  const ConvexBody bodies[] = {ConvexBody::ball(1.5, 2), ConvexBody::ellipsoid({2, 1}),
                               ConvexBody::ball(1.0, 3), ConvexBody::ellipsoid({2, 1, 0.5}),
                               ConvexBody::ellipsoid({1, 3, 2, 0.7})};
  for (const auto& k : bodies) {
    for (int i = 0; i < 100; ++i) {
      const VecD eta = random_direction(rng, k.dim());
      const auto [plus, minus] = extremal_points(k, eta);
      CHECK(dot(plus, eta) == doctest::Approx(support(k, eta)).epsilon(1e-10));
      CHECK(width(k, eta) == doctest::Approx(support(k, eta) + support(k, -eta)).epsilon(1e-10));
      CHECK(dot(plus - minus, eta) == doctest::Approx(width(k, eta)).epsilon(1e-10));
      double s = 0.0;
      for (std::size_t j = 0; j < k.dim(); ++j) s += std::pow(plus[j] / k.semi_axes()[j], 2);
      CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(on_boundary(k, plus));
      CHECK(on_boundary(k, minus));
    }
  }
}

TEST_CASE("gaussian curvature") {
  CHECK(gaussian_curvature(ConvexBody::ball(1.0, 2), {0.6, 0.8}) == 1.0);
  CHECK(gaussian_curvature(ConvexBody::ball(2.0, 2), {0.0, 2.0}) == 0.5);
  for (double r : {0.5, 1.0, 2.0, 3.0}) {
    CHECK(gaussian_curvature(ConvexBody::ball(r, 2), {r, 0.0}) == std::pow(r, -1.0));
    CHECK(gaussian_curvature(ConvexBody::ball(r, 3), {0.0, 0.0, r}) == std::pow(r, -2.0));
  }
  const auto e = ConvexBody::ellipsoid({2, 1});
  CHECK(gaussian_curvature(e, {2, 0}) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(gaussian_curvature(e, {0, 1}) == doctest::Approx(0.25).epsilon(1e-14));

  // Finite-difference curvature of the parametrized ellipse.
  for (double s : {0.0, 0.3, 1.1, 2.0}) {
    const double h = 1e-4;
    const VecD p0 = ellipse_point(2, 1, s - h);
    const VecD p1 = ellipse_point(2, 1, s);
    const VecD p2 = ellipse_point(2, 1, s + h);
    const double dx = (p2[0] - p0[0]) / (2 * h);
    const double dy = (p2[1] - p0[1]) / (2 * h);
    const double ddx = (p2[0] - 2 * p1[0] + p0[0]) / (h * h);
    const double ddy = (p2[1] - 2 * p1[1] + p0[1]) / (h * h);
    const double kappa = std::abs(dx * ddy - dy * ddx) / std::pow(dx * dx + dy * dy, 1.5);
    CHECK(gaussian_curvature(e, p1) == doctest::Approx(kappa).epsilon(1e-6));
  }

  CHECK_THROWS_AS(gaussian_curvature(e, {1, 0}), InvalidArgument);
  CHECK_THROWS_AS(gaussian_curvature(ConvexBody::cube(2), {1, 0.5}), NotStrictlyConvex);
}

TEST_CASE("width") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 10; ++i) CHECK(width(ConvexBody::ball(1.0, 2), random_direction(rng, 2)) == doctest::Approx(2.0));
  const auto e = ConvexBody::ellipsoid({2, 1});
  CHECK(width(e, {1, 0}) == doctest::Approx(4.0));
  CHECK(width(e, VecD{1, 1}.normalized()) == doctest::Approx(2.0 * std::sqrt(2.5)));
}

TEST_CASE("body validation and description") {
  CHECK_THROWS_AS(ConvexBody::ball(0.0, 2), InvalidArgument);
  CHECK_THROWS_AS(ConvexBody::ball(1.0, 0), InvalidArgument);
  CHECK_THROWS_AS(ConvexBody::ellipsoid({1, -1}), InvalidArgument);
  CHECK(ConvexBody::ball(1.0, 2).describe() == "ball:1");
  CHECK(ConvexBody::ellipsoid({2, 0.5}).describe() == "ellipsoid:2,0.5");
  CHECK(ConvexBody::cube(3).describe() == "cube");
  CHECK(ConvexBody::cube(3).volume() == 1.0);
  CHECK(ConvexBody::ball(1.0, 2).volume() == doctest::Approx(std::numbers::pi));
  CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * std::numbers::pi));
}
