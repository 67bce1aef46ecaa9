#include <string>

#include "doctest.h"
#include "ergrates/config.hpp"
#include "ergrates/error.hpp"
#include "ergrates/parse.hpp"

using namespace ergrates;

namespace {

std::vector<std::string> errors_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.messages();
  }
  return {};
}

}  // namespace

TEST_CASE("single keys parse to the expected objects") {
  const auto c = parse_config("body = ball:1\nmeasure = radial:2,1,1\n");
  const auto body = parse_body(c.get("body"), 2);
  CHECK(body.kind() == BodyKind::Ball);
  CHECK(body.radius() == 1.0);
  const auto sigma = parse_measure(c.get("measure"), 2);
  CHECK(sigma.kind() == MeasureKind::RadialPower);
  CHECK(sigma.gamma() == 2.0);
  CHECK(sigma.describe() == "radial:2,1,1");
}

TEST_CASE("negative gamma is rejected with its line number") {
  const auto errors = errors_of("body = ball:1\nmeasure = radial:-1,1,1\n");
  REQUIRE(errors.size() == 1);
  CHECK(errors[0].starts_with("line 2:"));
  CHECK(errors[0].find("gamma must be positive") != std::string::npos);
}

TEST_CASE("every malformed line is reported") {
  const auto errors = errors_of(
      "# header comment\n"
      "body = sphere:1\n"
      "tolerance = 2\n"
      "no equals sign\n"
      "colour = red\n"
      "p = 10:1000   # trailing comment\n"
      "grid = 0:4:3\n");
  REQUIRE(errors.size() == 5);
  CHECK(errors[0].starts_with("line 2:"));
  CHECK(errors[1].starts_with("line 3:"));
  CHECK(errors[2].starts_with("line 4:"));
  CHECK(errors[3].starts_with("line 5:"));
  CHECK(errors[4].starts_with("line 7:"));
}

TEST_CASE("emit then parse is the identity") {
  const std::string text =
      "body = ellipsoid:2,1\n"
      "measure = sum:[radial:2,1,0.5|atomic:[(1,2;0.25),(3,0.5;1)]]\n"
      "phi = monomial:1,2\n"
      "direction = 1,2\n"
      "t = 10,10;20,5\n"
      "p = 10:1000\n"
      "tolerance = 1e-6\n"
      "sector = 2\n"
      "theorem = 2\n"
      "theta = -4\n"
      "require-sector = false\n"
      "alpha = 1.5,2.5\n"
      "grid = 0:4:201\n"
      "r-mode = at-max\n"
      "out = result.csv\n";
  const auto c = parse_config(text);
  const auto emitted = emit_config(c);
  const auto again = parse_config(emitted);
  CHECK(again == c);
  CHECK(emit_config(again) == emitted);
}

TEST_CASE("values are canonicalized") {
  const auto a = parse_config("body = ball:1.0\ntolerance = 0.000001\nalpha = 1 , 2\n");
  const auto b = parse_config("body=ball:1\ntolerance=1e-6\nalpha=1,2\n");
  CHECK(a == b);
  CHECK(config_hash(a) == config_hash(b));
}

TEST_CASE("config hash ignores output paths and tracks inputs") {
  auto a = parse_config("measure = radial:2,1,1\n");
  auto b = a;
  b.set("out", "somewhere.csv");
  b.set("report", "r.json");
  CHECK(config_hash(a) == config_hash(b));
  b.set("measure", "radial:2,1,2");
  CHECK(config_hash(a) != config_hash(b));
  CHECK(config_hash(a).size() == 16);
}

TEST_CASE("cross-key validation") {
  SUBCASE("ellipsoid fixes the dimension") {
    const auto c = parse_config("body = ellipsoid:1,2,3\nmeasure = radial:1,1,1\n");
    CHECK(config_dimension(c) == 3);
    CHECK(validate_config(c).empty());
  }
  SUBCASE("dimension conflict") {
    const auto c = parse_config("body = ellipsoid:1,2\ndim = 3\n");
    CHECK_FALSE(validate_config(c).empty());
  }
  SUBCASE("atomic frequencies must match the dimension") {
    const auto c = parse_config("dim = 3\nmeasure = atomic:[(1,2;1)]\n");
    CHECK(validate_config(c).size() == 1);
  }
  SUBCASE("direction length") {
    const auto c = parse_config("direction = 1,1,1\n");
    CHECK(validate_config(c).size() == 1);
  }
}

TEST_CASE("get on a missing key throws") {
  RunConfig c;
  CHECK_THROWS_AS(c.get("body"), ConfigError);
  CHECK_THROWS_AS(c.set("nonsense", "1"), Error);
  c.set_default("body", "ball:2");
  c.set_default("body", "ball:3");
  CHECK(c.get("body") == "ball:2");
}
