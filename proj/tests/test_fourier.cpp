#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "ergrates/error.hpp"
#include "ergrates/fourier.hpp"
#include "ergrates/numerics.hpp"

using namespace ergrates;

namespace {

VecD random_point(std::mt19937_64& rng, std::size_t d, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  VecD v(d);
  for (auto& c : v) c = u(rng);
  return v;
}

double rel_diff(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("ball transform closed form") {
  CHECK(ft_ball(1.0, {0.0, 0.0}).real() == doctest::Approx(std::numbers::pi));
  CHECK(ft_ball(1.0, {0.0, 0.0, 0.0}).real() == doctest::Approx(4.0 * std::numbers::pi / 3.0));
  for (double z : {0.3, 1.0, 9.9, 123.4}) {
    const Complex f = ft_ball(1.0, VecD{z});
    CHECK(f.real() == doctest::Approx(2.0 * std::sin(z) / z).epsilon(1e-13));
    CHECK(f.imag() == 0.0);
  }
  const auto q = ft_quadrature(ConvexBody::ball(1.0, 2), {10.0, 0.0}, 1e-10);
  CHECK(rel_diff(ft_ball(1.0, {10.0, 0.0}), q.value) < 1e-6);
  CHECK_THROWS_AS(ft_ball(-1.0, {1.0, 0.0}), InvalidArgument);
}

TEST_CASE("cube transform closed form") {
  CHECK(ft_cube({0.0, 0.0}) == Complex(1.0, 0.0));
  CHECK(std::abs(ft_cube(VecD{2.0 * std::numbers::pi})) < 1e-15);
  const auto q = ft_quadrature(ConvexBody::cube(2), {3.0, 5.0}, 1e-12);
  CHECK(std::abs(ft_cube({3.0, 5.0}) - q.value) < 1e-8);
}

TEST_CASE("scaling identity") {
  const auto ball2 = ConvexBody::ball(1.0, 2);
  CHECK(ft_scaled(ball2, {1.0, 1.0}, {2.0, -1.0}) == ft(ball2, {2.0, -1.0}));
  for (double z : {0.5, 3.0, 40.0}) {
    const Complex f = ft_scaled(ConvexBody::ball(1.0, 1), VecD{2.0}, VecD{z});
    CHECK(f.real() == doctest::Approx(2.0 * std::sin(2.0 * z) / z).epsilon(1e-13));
  }
  std::mt19937_64 rng(5);
  const ConvexBody bodies[] = {ball2, ConvexBody::ellipsoid({2, 1}), ConvexBody::cube(2),
                               ConvexBody::ellipsoid({1, 0.5, 2})};
  for (const auto& k : bodies) {
    for (int i = 0; i < 20; ++i) {
      std::uniform_real_distribution<double> u(0.1, 5.0);
      VecD t(k.dim());
      for (auto& c : t) c = u(rng);
      const VecD x = random_point(rng, k.dim(), 10.0);
      const Complex lhs = ft_scaled(k, t, x);
      const Complex rhs = t.product() * ft(k, hadamard(x, t));
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
  // The dilated ball is the ellipse with semi-axes (2, 3).
  const VecD t{2.0, 3.0};
  for (int i = 0; i < 3; ++i) {
    const VecD x = random_point(rng, 2, 5.0);
    const auto q = ft_quadrature(ConvexBody::ellipsoid({2, 3}), x, 1e-10);
    CHECK(rel_diff(ft_scaled(ball2, t, x), q.value) < 1e-6);
  }
  CHECK_THROWS_AS(ft_scaled(ball2, {1.0, 0.0}, {1.0, 1.0}), InvalidArgument);
}

TEST_CASE("quadrature oracle") {
  const ConvexBody bodies[] = {ConvexBody::ball(1.0, 2), ConvexBody::ellipsoid({2, 1}),
                               ConvexBody::cube(2), ConvexBody::ball(1.0, 3),
                               ConvexBody::cube(3)};
  for (const auto& k : bodies) {
    const auto q = ft_quadrature(k, VecD(k.dim()), 1e-10);
    CHECK(std::abs(q.value - k.volume()) < 1e-10);
  }
  const auto q3 = ft_quadrature(ConvexBody::ellipsoid({2, 1, 0.5}), {1.0, -2.0, 3.0}, 1e-10);
  CHECK(std::abs(q3.value - ft(ConvexBody::ellipsoid({2, 1, 0.5}), {1.0, -2.0, 3.0})) < 1e-9);

  CHECK_THROWS_AS(ft_quadrature(ConvexBody::ball(1.0, 2), {30.0, 0.0}, 1e-12, 1000),
                  BudgetExceeded);
  CHECK_THROWS_AS(ft_quadrature(ConvexBody::ball(1.0, 4), VecD(4), 1e-6), InvalidArgument);
  CHECK_THROWS_AS(ft_quadrature(ConvexBody::ball(1.0, 2), {201.0, 0.0}, 1e-6), InvalidArgument);
}

TEST_CASE("conjugate symmetry and the volume bound") {
  std::mt19937_64 rng(6);
  const ConvexBody bodies[] = {ConvexBody::ball(1.0, 2), ConvexBody::ellipsoid({2, 1}),
                               ConvexBody::cube(2), ConvexBody::ball(0.7, 3),
                               ConvexBody::cube(3)};
  for (const auto& k : bodies) {
    for (int i = 0; i < 50; ++i) {
      const VecD x = random_point(rng, k.dim(), 30.0);
      CHECK(std::abs(ft(k, -x) - std::conj(ft(k, x))) < 1e-10);
      CHECK(std::abs(ft(k, x)) <= k.volume() * (1.0 + 1e-14));
    }
    const VecD x = random_point(rng, k.dim(), 8.0);
    const auto qp = ft_quadrature(k, x, 1e-11);
    const auto qm = ft_quadrature(k, -x, 1e-11);
    CHECK(std::abs(qm.value - std::conj(qp.value)) < 1e-10);
    CHECK(std::abs(ft(k, VecD(k.dim()))) == doctest::Approx(k.volume()).epsilon(1e-15));
  }
}

TEST_CASE("herz calibration against the exact ball transform") {
  // Peak moduli of 2 pi J_1(r) / r decay like C r^{-3/2}; C must be the
  // calibrated two-point amplitude 2 (2 pi)^{1/2}.
  const auto ball = ConvexBody::ball(1.0, 2);
  const auto peaks = modulus_peaks_along_ray(ball, {1.0, 0.0}, 50.0, 500.0);
  REQUIRE(peaks.size() > 100);
  double mean_log_c = 0.0;
  for (const auto& p : peaks) mean_log_c += std::log(p.modulus * std::pow(p.r, 1.5));
  mean_log_c /= static_cast<double>(peaks.size());
  CHECK(std::exp(mean_log_c) == doctest::Approx(2.0 * std::sqrt(2.0 * std::numbers::pi)).epsilon(2e-3));

  const auto h = herz_asymptotic(ball, {300.0, 0.0});
  CHECK(h.modulus_envelope == doctest::Approx(2.0 * std::sqrt(2.0 * std::numbers::pi) * std::pow(300.0, -1.5)));
  CHECK(h.amplitude_plus == doctest::Approx(h.amplitude_minus));

  // Value, not just envelope, for d = 2 and d = 3 balls.
  for (std::size_t d : {2u, 3u}) {
    const auto k = ConvexBody::ball(1.0, d);
    for (double r : {200.0, 451.3, 1000.0}) {
      VecD x(d);
      x[0] = r * 0.6;
      x[1] = r * 0.8;
      const auto hz = herz_asymptotic(k, x);
      CHECK(std::abs(hz.value - ft(k, x)) < 0.01 * hz.modulus_envelope);
    }
  }
  CHECK_THROWS_AS(herz_asymptotic(ConvexBody::cube(2), {10.0, 1.0}), NotStrictlyConvex);
  CHECK_THROWS_AS(herz_asymptotic(ball, {0.0, 0.0}), InvalidArgument);
}

TEST_CASE("herz envelope of the ellipse along its major axis uses curvature 2") {
  const auto e = ConvexBody::ellipsoid({2, 1});
  const auto h = herz_asymptotic(e, {100.0, 0.0});
  const double expected = std::sqrt(2.0 * std::numbers::pi) * std::pow(2.0, -0.5) * std::pow(100.0, -1.5);
  CHECK(h.amplitude_plus == doctest::Approx(expected));
  CHECK(h.amplitude_minus == doctest::Approx(expected));
  for (const auto& p : modulus_peaks_along_ray(e, {1.0, 0.0}, 50.0, 200.0)) {
    const double env = herz_asymptotic(e, {p.r, 0.0}).modulus_envelope;
    CHECK(std::abs(p.modulus / env - 1.0) < 0.05);
  }
}

TEST_CASE("envelope exponent and oscillation frequency") {
  for (std::size_t d : {2u, 3u}) {
    VecD eta(d);
    eta[0] = 1.0;
    const auto peaks = modulus_peaks_along_ray(ConvexBody::ball(1.0, d), eta, 50.0, 500.0);
    std::vector<double> lx, ly;
    for (const auto& p : peaks) {
      lx.push_back(std::log(p.r));
      ly.push_back(std::log(p.modulus));
    }
    CHECK(numerics::least_squares_slope(lx, ly) == doctest::Approx(-0.5 * (d + 1.0)).epsilon(0.05 / (0.5 * (d + 1.0))));
  }
  const VecD diag = VecD{1.0, 1.0}.normalized();
  for (const auto& k : {ConvexBody::ball(1.0, 2), ConvexBody::ellipsoid({2, 1})}) {
    const auto zeros = real_part_zeros_along_ray(k, diag, 200.0, 300.0);
    REQUIRE(zeros.size() > 10);
    const double spacing = (zeros.back() - zeros.front()) / static_cast<double>(zeros.size() - 1);
    CHECK(spacing == doctest::Approx(2.0 * std::numbers::pi / width(k, diag)).epsilon(0.01));
  }
}

TEST_CASE("decay bound constant") {
  std::vector<VecD> line;
  for (int i = 0; i < 20000; ++i) line.push_back(VecD{0.05 + 0.05 * i});
  CHECK(decay_bound_constant(ConvexBody::ball(1.0, 1), line) == doctest::Approx(2.0).epsilon(1e-4));

  std::vector<VecD> plane;
  for (int i = 0; i < 20000; ++i) plane.push_back(VecD{1.0 + 0.025 * i, 0.0});
  // The supremum is attained near the origin; the tail settles on the
  // envelope coefficient 2 (2 pi)^{1/2}.
  const double envelope = 2.0 * std::sqrt(2.0 * std::numbers::pi);
  const double c2 = decay_bound_constant(ConvexBody::ball(1.0, 2), plane);
  CHECK(c2 == doctest::Approx(envelope).epsilon(0.05));
  const std::vector<VecD> tail(plane.begin() + 4000, plane.end());
  CHECK(decay_bound_constant(ConvexBody::ball(1.0, 2), tail) == doctest::Approx(envelope).epsilon(0.01));

  std::vector<VecD> dirs;
  for (int j = 0; j < 16; ++j) {
    const double a = 2.0 * std::numbers::pi * j / 16.0;
    for (int i = 1; i <= 200; ++i) dirs.push_back(VecD{std::cos(a), std::sin(a)} * (1.0 * i));
  }
  const double ce = decay_bound_constant(ConvexBody::ellipsoid({2, 1}), dirs);
  CHECK(std::isfinite(ce));
  CHECK(ce > 0.0);
  CHECK_THROWS_AS(decay_bound_constant(ConvexBody::ball(1.0, 2), std::vector<VecD>{}), InvalidArgument);
  CHECK_THROWS_AS(decay_bound_constant(ConvexBody::ball(1.0, 2), std::vector<VecD>{VecD(2)}), InvalidArgument);
}

TEST_CASE("normalized modulus agrees with the transform") {
  std::mt19937_64 rng(8);
  const ConvexBody bodies[] = {ConvexBody::ball(1.3, 2), ConvexBody::ellipsoid({2, 1}),
                               ConvexBody::cube(2), ConvexBody::ball(1.0, 3),
                               ConvexBody::ellipsoid({1, 0.5, 2}), ConvexBody::ball(1.0, 1)};
  for (const auto& k : bodies) {
    CHECK(normalized_modulus_sq(k, VecD(k.dim())) == doctest::Approx(1.0).epsilon(1e-15));
    for (int i = 0; i < 50; ++i) {
      const VecD x = random_point(rng, k.dim(), 40.0);
      const double direct = std::norm(ft(k, x)) / (k.volume() * k.volume());
      CHECK(normalized_modulus_sq(k, x) == doctest::Approx(direct).epsilon(1e-12).scale(1e-14));
    }
  }
}
