#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ergrates/bessel.hpp"
#include "ergrates/numerics.hpp"

using namespace ergrates;

TEST_CASE("J_nu against an independent implementation up to 1e4") {
  for (double nu : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0}) {
    double worst = 0.0;
    for (double z = 0.0; z <= 1e4; z = z < 40.0 ? z + 0.0137 : z * 1.003) {
      worst = std::max(worst, std::abs(bessel_j(nu, z) - boost::math::cyl_bessel_j(nu, z)));
    }
    CAPTURE(nu);
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("integral representation J_n(z) = (1/2pi) int_0^2pi cos(n s - z sin s) ds") {
  // The trapezoid rule is spectrally accurate for this periodic integrand.
  const int nodes = 4096;
  for (int n : {0, 1, 2, 3, 4}) {
    for (double z : {0.7, 5.0, 17.0, 18.0, 60.0, 333.3, 1500.0}) {
      double sum = 0.0;
      for (int i = 0; i < nodes; ++i) {
        const double s = 2.0 * std::numbers::pi * i / nodes;
        sum += std::cos(n * s - z * std::sin(s));
      }
      CAPTURE(n);
      CAPTURE(z);
      CHECK(std::abs(bessel_j(n, z) - sum / nodes) < 1e-12);
    }
  }
}

TEST_CASE("first zero of J_1") {
  const auto roots = numerics::find_roots([](double z) { return bessel_j(1.0, z); }, 1.0, 5.0, 0.1);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == doctest::Approx(3.8317059702075123).epsilon(1e-14));
}

TEST_CASE("series and Hankel branches agree on the overlap window") {
  for (double nu : {0.0, 1.0, 1.5, 2.0, 3.0, 4.0}) {
    for (double z = 16.0; z <= 19.0; z += 0.01) {
      CHECK(std::abs(bessel_j_series(nu, z) - bessel_j_hankel(nu, z)) < 1e-12);
    }
  }
}

TEST_CASE("half-integer orders reduce to elementary functions") {
  for (double z : {0.1, 1.0, 7.3, 25.0, 900.0}) {
    const double j05 = std::sqrt(2.0 / (std::numbers::pi * z)) * std::sin(z);
    const double j15 = std::sqrt(2.0 / (std::numbers::pi * z)) * (std::sin(z) / z - std::cos(z));
    CHECK(bessel_j(0.5, z) == doctest::Approx(j05).epsilon(1e-12).scale(1.0));
    CHECK(bessel_j(1.5, z) == doctest::Approx(j15).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("J_nu(z) / z^nu at and near zero") {
  CHECK(bessel_j_over_power(1.0, 0.0) == doctest::Approx(0.5));
  CHECK(bessel_j_over_power(1.5, 0.0) == doctest::Approx(1.0 / (std::pow(2.0, 1.5) * std::tgamma(2.5))));
  CHECK(bessel_j_over_power(1.0, 1e-3) == doctest::Approx(bessel_j(1.0, 1e-3) / 1e-3).epsilon(1e-14));
  CHECK(bessel_j_over_power(1.0, 300.0) == doctest::Approx(bessel_j(1.0, 300.0) / 300.0).epsilon(1e-13));
}
