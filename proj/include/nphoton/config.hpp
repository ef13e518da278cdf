#pragma once

#include "nphoton/models.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace nphoton {

nlohmann::ordered_json spec_to_json(const SystemSpec& spec);
// Strict parse: unknown keys, wrong types, and invalid values raise config errors naming the path.
SystemSpec spec_from_json(const nlohmann::json& doc);
SystemSpec spec_from_string(std::string_view text);
SystemSpec load_spec(const std::string& path);

std::string to_string(Topology t);
std::string to_string(StabilizerForm f);
std::string to_string(Regime r);

}  // namespace nphoton
