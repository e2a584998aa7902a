#pragma once

#include <string>

#include <json.hpp>

#include "kpp/profiles.hpp"
#include "kpp/reaction.hpp"

namespace kpp {

using json = nlohmann::json;

/// Parses a config file. TOML (a flat subset: [table] headers, key = value
/// with strings, numbers, booleans, and arrays) or JSON, chosen by
/// extension; anything that is not .toml is parsed as JSON.
json parse_config_file(const std::string& path);

/// Parses TOML text (the subset above) into a JSON document.
json parse_toml(const std::string& text);

/// {"family": "fisher"|"periodic_fisher"|"table", "amplitude", "period",
/// "table_path"}.
Nonlinearity reaction_from_config(const json& fragment);

/// {"family": "algebraic"|"stretched"|"log_algebraic"|"table", "alpha",
/// "beta", "gamma", "plateau", "table_path"}.
InitialData initial_data_from_config(const json& fragment);

struct ExperimentConfig {
  std::string experiment;
  std::string out_dir = "out";
  unsigned seed = 0;
  json raw;
};

/// Validates the top-level shape ("experiment" tag plus its referenced
/// fragments) and packages the document. Throws std::invalid_argument on
/// schema violations.
ExperimentConfig load_experiment_config(const std::string& path);

}  // namespace kpp
