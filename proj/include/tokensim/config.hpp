#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tokensim/engine.hpp"

namespace tokensim {

inline constexpr std::string_view kArtifactName = "tokensim";
inline constexpr std::string_view kArtifactVersion = "1.0.0";

struct Preset {
    std::string name;
    std::string description;
    ExperimentConfig config;
};

// baseline, high_spec, low_spec, kpi, targeted.
const std::vector<Preset>& presets();
const Preset& find_preset(std::string_view name);  // throws ValidationError

// Config documents are JSON:
//
//   {
//     "preset": "baseline",                  // optional base, default baseline
//     "params": { "gamma": 0.5, ... },       // overrides, any subset
//     "policy": { "kind": "intrinsic_targeted", "b0": 26624, "reserve": 1e7 },
//     "run":    { "steps": 1040, "n_runs": 100, "base_seed": 42 }
//   }
//
// Unknown keys are rejected. A manifest.json written by run_experiment is
// also accepted and resolves to the config it records.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Fully resolved document; parse_config(emit_config(c)) == c.
std::string emit_config(const ExperimentConfig& config);

}  // namespace tokensim
