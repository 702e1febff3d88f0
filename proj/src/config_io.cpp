#include "tdoa/config_io.hpp"

#include <fstream>

#include "tdoa/errors.hpp"

namespace tdoa {

namespace {

Rational coordinate(const nlohmann::json& v) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number_float()) return Rational::from_double(v.get<double>());
  throw ParseError("receiver coordinate must be a rational string or number: " + v.dump());
}

void read_tolerance(const nlohmann::json& t, const char* key, double& field) {
  if (!t.contains(key)) return;
  const auto& v = t[key];
  if (!v.is_number() || v.get<double>() <= 0.0) {
    throw ParseError(std::string("tolerance '") + key + "' must be a positive number");
  }
  field = v.get<double>();
}

}  // namespace

ConfigFile parse_config(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("receivers")) throw ParseError("config must be an object with \"receivers\"");
  const auto& rs = j["receivers"];
  if (!rs.is_array() || rs.size() != 3) throw ParseError("\"receivers\" must list exactly three points");
  std::array<QVec2, 3> m;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& p = rs[k];
    if (!p.is_array() || p.size() != 2) throw ParseError("receiver " + std::to_string(k) + " must be a pair");
    m[k] = {coordinate(p[0]), coordinate(p[1])};
  }

  Tolerances tol;
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    if (!t.is_object()) throw ParseError("\"tolerances\" must be an object");
    read_tolerance(t, "boundary_band", tol.boundary_band);
    read_tolerance(t, "residual", tol.residual);
    read_tolerance(t, "degenerate", tol.degenerate);
    read_tolerance(t, "double_root", tol.double_root);
    read_tolerance(t, "on_curve", tol.on_curve);
  }
  return {ReceiverConfig::make(m[0], m[1], m[2]), tol};
}

ConfigFile load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return parse_config(j);
}

nlohmann::json config_to_json(const ReceiverConfig& cfg) {
  nlohmann::json rs = nlohmann::json::array();
  for (int i = 0; i < 3; ++i) rs.push_back({cfg.receiver(i).x.str(), cfg.receiver(i).y.str()});
  return {{"receivers", rs}};
}

std::pair<Rational, Rational> parse_rational_pair(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
    throw ParseError("expected a pair 'a,b', got '" + std::string(text) + "'");
  }
  return {Rational::parse(text.substr(0, comma)), Rational::parse(text.substr(comma + 1))};
}

}  // namespace tdoa
