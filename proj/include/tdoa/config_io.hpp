#pragma once

#include <filesystem>
#include <string_view>
#include <utility>

#include <json.hpp>

#include "tdoa/geometry.hpp"
#include "tdoa/tolerances.hpp"

namespace tdoa {

/// {"receivers": [["0","0"],["2","0"],["2","2"]], "tolerances": {...}}
///
/// Coordinates are rational strings ("2", "1/3", "0.25"); integer JSON numbers
/// are also accepted. "tolerances" is optional and may set any Tolerances field
/// by name.
struct ConfigFile {
  ReceiverConfig config;
  Tolerances tolerances;
};

ConfigFile parse_config(const nlohmann::json& j);
ConfigFile load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const ReceiverConfig& cfg);

/// "a,b" with rational components.
std::pair<Rational, Rational> parse_rational_pair(std::string_view text);

}  // namespace tdoa
