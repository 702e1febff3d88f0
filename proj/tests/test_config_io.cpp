#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "tdoa/config_io.hpp"
#include "tdoa/errors.hpp"

using namespace tdoa;
using nlohmann::json;

TEST_CASE("string, integer and decimal coordinates") {
  const ConfigFile cf = parse_config(json::parse(R"({"receivers": [["0","0"], [2, 0], ["1/2", 2.5]]})"));
  CHECK(cf.config.receiver(1).x == Rational(2));
  CHECK(cf.config.receiver(2).x == Rational(1, 2));
  CHECK(cf.config.receiver(2).y == Rational(5, 2));
  CHECK(cf.tolerances.residual == Tolerances{}.residual);
}

TEST_CASE("tolerance overrides") {
  const ConfigFile cf = parse_config(
      json::parse(R"({"receivers": [["0","0"],["2","0"],["2","2"]], "tolerances": {"boundary_band": 1e-6}})"));
  CHECK(cf.tolerances.boundary_band == 1e-6);
  CHECK(cf.tolerances.degenerate == Tolerances{}.degenerate);
}

TEST_CASE("malformed configs") {
  CHECK_THROWS_AS(parse_config(json::parse(R"({})")), ParseError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"receivers": [["0","0"],["2","0"]]})")), ParseError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"receivers": [["0","0"],["2","x"],["2","2"]]})")), ParseError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"receivers": [["0","0"],["1","1"],["2","2"]]})")),
                  CollinearReceivers);
}

TEST_CASE("round trip through json") {
  const ReceiverConfig cfg = ReceiverConfig::make({Rational(1, 3), 0}, {2, Rational(-7, 2)}, {5, 5});
  const ConfigFile back = parse_config(config_to_json(cfg));
  for (int i = 0; i < 3; ++i) CHECK(back.config.receiver(i) == cfg.receiver(i));
}

TEST_CASE("load from disk") {
  const auto path = std::filesystem::temp_directory_path() / "tdoa_config_io_test.json";
  {
    std::ofstream f(path);
    f << R"({"receivers": [["0","0"],["2","0"],["-2","2"]]})";
  }
  CHECK(load_config(path).config.W() == Rational(4));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_config(path), Error);
}

TEST_CASE("rational pairs") {
  const auto [a, b] = parse_rational_pair("1/2,-3");
  CHECK(a == Rational(1, 2));
  CHECK(b == Rational(-3));
  CHECK_THROWS_AS(parse_rational_pair("1"), ParseError);
}
