#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "mwer/model.hpp"

namespace mwer {

// Serializes with a fixed field order and doubles printed to 17 significant
// digits, so equal values always produce identical bytes and every 64-bit
// value survives a round trip.
std::string dump_json(const nlohmann::ordered_json& value);

// Parses a scenario document. Acts may give a full per-state lottery or a
// bare per-state utility; bare utilities are wrapped as point lotteries on
// calibration prizes synthesized per distinct value, which keeps the stated
// numbers exact. `origin` names the input in diagnostics.
Scenario parse_scenario(const std::string& text, std::string_view origin);

// Same, from an already-parsed document.
Scenario scenario_from_json(const nlohmann::ordered_json& doc,
                            std::string_view origin);

nlohmann::ordered_json scenario_to_json(const Scenario& sc);

std::string serialize_scenario(const Scenario& sc);

inline constexpr std::string_view kScenarioFormat = "wsp-scenario/1";

}  // namespace mwer
