#include <cmath>
#include <random>

#include "doctest.h"
#include "ergrates/error.hpp"
#include "ergrates/hilbert_sim.hpp"
#include "ergrates/rates.hpp"

using namespace ergrates;

TEST_CASE("induced measure") {
  const AtomicAction a(2, {{VecD{1, 0}, Complex(1, 0)}, {VecD{0, 2}, Complex(0, 1)}});
  const auto s = induced_measure(a);
  REQUIRE(s.atoms().size() == 2);
  CHECK(s.atoms()[0].weight == 1.0);
  CHECK(s.atoms()[1].weight == 1.0);

  // Coefficients at one frequency add before the modulus is taken.
  const AtomicAction dup(2, {{VecD{1, 1}, Complex(1, 0)}, {VecD{1, 1}, Complex(2, 0)}});
  CHECK(dup.atoms().size() == 1);
  CHECK(induced_measure(dup).atoms()[0].weight == doctest::Approx(9.0));
  const AtomicAction cancel(2, {{VecD{1, 1}, Complex(1, 0)}, {VecD{1, 1}, Complex(-1, 0)}});
  CHECK(induced_measure(cancel).is_zero());

  CHECK(induced_measure(AtomicAction(2, {})).is_zero());
  CHECK_THROWS_AS(AtomicAction(2, {{VecD{0, 0}, Complex(1, 0)}}), InvalidArgument);
  CHECK_THROWS_AS(AtomicAction(2, {{VecD{1, 0, 0}, Complex(1, 0)}}), DimensionMismatch);
  CHECK(a.describe() == "action:[(1,0;1,0),(0,2;0,1)]");
}

TEST_CASE("unitarity and group law") {
  const auto a = AtomicAction::demo(20, 3, 5);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 20; ++i) {
    const VecD s{u(rng), u(rng), u(rng)};
    const VecD r{u(rng), u(rng), u(rng)};
    const auto us = a.apply(s);
    double n = 0.0;
    for (const auto& c : us) n += std::norm(c);
    CHECK(n == doctest::Approx(a.norm_sq()).epsilon(1e-13));
    const auto composed = a.apply(s, a.apply(r));
    const auto direct = a.apply(s + r);
    for (std::size_t j = 0; j < direct.size(); ++j) CHECK(std::abs(composed[j] - direct[j]) < 1e-12);
  }
}

TEST_CASE("demo actions") {
  const auto a = AtomicAction::demo(50, 2, 1);
  CHECK(a.atoms().size() == 50);
  for (const auto& atom : a.atoms()) {
    CHECK(atom.frequency.norm() >= 1.0 - 1e-12);
    CHECK(atom.frequency.norm() <= 3.0 + 1e-12);
  }
  CHECK(AtomicAction::demo(50, 2, 1).describe() == a.describe());
  CHECK(AtomicAction::demo(50, 2, 2).describe() != a.describe());
}

TEST_CASE("ergodic average matches the spectral integral") {
  const std::vector<ConvexBody> bodies{ConvexBody::ball(1.0, 2), ConvexBody::ellipsoid({2.0, 0.5}),
                                       ConvexBody::cube(2)};
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.01, 40.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = AtomicAction::demo(20, 2, seed);
    const auto sigma = induced_measure(a);
    for (const auto& body : bodies) {
      for (int i = 0; i < 5; ++i) {
        const VecD t{u(rng), u(rng)};
        const double direct = simulate_average(a, body, t);
        CHECK(direct == doctest::Approx(i_k_atomic(body, sigma, t)).epsilon(1e-10));
      }
    }
  }
  // One atom: the average is the normalized transform itself.
  const auto ball = ConvexBody::ball(1.0, 3);
  const AtomicAction one(3, {{VecD{0.3, -1, 2}, Complex(1, 0)}});
  const VecD t{2, 3, 4};
  CHECK(simulate_average(one, ball, t) ==
        doctest::Approx(std::norm(ft(ball, VecD{0.6, -3, 8}) / ball.volume())).epsilon(1e-12));
}

TEST_CASE("mean ergodic convergence") {
  const auto a = AtomicAction::demo(20, 2, 9);
  const auto ball = ConvexBody::ball(1.0, 2);
  CHECK(simulate_average(a, ball, VecD{1e-6, 1e-6}) == doctest::Approx(a.norm_sq()).epsilon(1e-9));
  CHECK(simulate_average(a, ball, VecD{1e3, 1e3}) < 1e-2 * a.norm_sq());
  CHECK(simulate_average(a, ball, VecD{10, 10}) < a.norm_sq());
  CHECK_THROWS_AS(simulate_average(a, ball, VecD{1, 0}), InvalidArgument);
  CHECK_THROWS_AS(simulate_average(a, ConvexBody::ball(1.0, 3), VecD{1, 1, 1}), DimensionMismatch);
}
