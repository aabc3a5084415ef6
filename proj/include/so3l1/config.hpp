// config.hpp - flat "key = value" scenario-config documents.
#pragma once

#include <string>

#include "so3l1/harness.hpp"

namespace so3l1 {

// Parses a line-oriented key = value document ('#' starts a comment) and
// returns a validated config with the standard defaults filled for omitted
// keys. Throws ParseError (with line number and key) or ValidationError.
ScenarioConfig parse_config(const std::string& text);

ScenarioConfig load_config(const std::string& path);  // IoError + parse_config

// Canonical serialization; parse_config(serialize_config(cfg)) reproduces
// cfg exactly.
std::string serialize_config(const ScenarioConfig& cfg);

}  // namespace so3l1
