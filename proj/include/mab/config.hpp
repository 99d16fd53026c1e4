#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mab/sim.hpp"

namespace mab {

using ParsedConfig = std::variant<ExperimentConfig, SweepConfig>;

// Strict parsing: unknown keys anywhere in the document are rejected.
ExperimentConfig experiment_from_json(const nlohmann::json& j,
                                      bool require_policies = true);
SweepConfig sweep_from_json(const nlohmann::json& j);
ParsedConfig parse_config_file(const std::string& path);

nlohmann::json to_json(const PolicySpec& spec);
nlohmann::json to_json(const ExperimentConfig& config);
nlohmann::json to_json(const SweepConfig& sweep);

struct PresetInfo {
    std::string name;
    std::string description;
};

std::vector<PresetInfo> preset_list();

// paper_scale restores the published trial counts; the default is a
// desk-scale reduction of the same setup.
ParsedConfig make_preset(const std::string& name, bool paper_scale = false);

}  // namespace mab
