#include <doctest.h>

#include <cmath>
#include <vector>

#include "tdoa/errors.hpp"
#include "tdoa/polynomial.hpp"

using namespace tdoa;

namespace {
const BivariatePoly X = BivariatePoly::x();
const BivariatePoly Y = BivariatePoly::y();
}  // namespace

TEST_CASE("cancellation drops zero terms") {
  const BivariatePoly p = (X + Rational(1)) + (-X);
  CHECK(p == BivariatePoly(Rational(1)));
  CHECK(p.size() == 1);
  CHECK((X - X).is_zero());
  CHECK_FALSE((X - X).total_degree().has_value());
}

TEST_CASE("product and power") {
  const BivariatePoly sq = (X + Y) * (X - Y);
  CHECK(sq == X * X - Y * Y);
  const BivariatePoly cube = (X + Y).pow(3);
  CHECK(cube.coefficient(2, 1) == Rational(3));
  CHECK(cube.coefficient(0, 3) == Rational(1));
  CHECK(cube.total_degree() == 3);
}

TEST_CASE("exact and numeric evaluation") {
  const BivariatePoly p = BivariatePoly::monomial(2, 1, Rational(3)) - Y + Rational(1, 2);
  CHECK(p.eval(Rational(1, 2), Rational(2)) == Rational(3, 4) * Rational(2) - Rational(2) + Rational(1, 2));
  CHECK(p.eval(0.5, 2.0) == doctest::Approx(0.0));
  const NumericPoly n(p);
  CHECK(n(0.5, 2.0) == doctest::Approx(0.0));
  CHECK(n.magnitude(0.5, 2.0) == doctest::Approx(1.5 + 2.0 + 0.5));
}

TEST_CASE("partial derivatives") {
  const BivariatePoly p = X.pow(3) * Y + Rational(5) * Y * Y;
  CHECK(p.diff(Var::X) == Rational(3) * X * X * Y);
  CHECK(p.diff(Var::Y) == X.pow(3) + Rational(10) * Y);
  CHECK(BivariatePoly(Rational(4)).diff(Var::X).is_zero());
}

TEST_CASE("homogeneous components") {
  const BivariatePoly p = X * X * Y + X * Y + Rational(7);
  CHECK(p.homogeneous_component(3) == X * X * Y);
  CHECK(p.homogeneous_component(2) == X * Y);
  CHECK(p.homogeneous_component(0) == BivariatePoly(Rational(7)));
  CHECK(p.homogeneous_component(1).is_zero());
}

TEST_CASE("restriction to a line") {
  // x^2 + y on (1, 2) + t (3, -1) = 9t^2 + 5t + 3
  const BivariatePoly p = X * X + Y;
  const std::vector<Rational> c = p.restrict_to_line(Rational(1), Rational(2), Rational(3), Rational(-1));
  REQUIRE(c.size() >= 3);
  CHECK(c[0] == Rational(3));
  CHECK(c[1] == Rational(5));
  CHECK(c[2] == Rational(9));
}

TEST_CASE("pairwise sum") {
  std::vector<double> v(1000, 0.1);
  CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("json round trip") {
  const BivariatePoly p = BivariatePoly::monomial(4, 1, Rational(-4)) + Rational(1, 3) * Y + Rational(1);
  CHECK(poly_from_json(poly_to_json(p)) == p);
}

TEST_CASE("json rejects bad terms and sums repeats") {
  CHECK_THROWS_AS(poly_from_json(nlohmann::json::parse(R"([{"i":-1,"j":0,"c":"1"}])")), ParseError);
  CHECK_THROWS_AS(poly_from_json(nlohmann::json::parse(R"([{"i":1,"c":"1"}])")), ParseError);
  CHECK_THROWS_AS(poly_from_json(nlohmann::json::parse(R"({"i":1})")), ParseError);
  const auto p = poly_from_json(nlohmann::json::parse(R"([{"i":1,"j":0,"c":"1/2"},{"i":1,"j":0,"c":"1/2"}])"));
  CHECK(p == X);
}
