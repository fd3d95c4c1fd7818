#pragma once

// JSON mapping for configs. Internal to the library.

#include <initializer_list>
#include <string>

#include "json.hpp"
#include "tokensim/engine.hpp"
#include "tokensim/errors.hpp"

namespace tokensim::detail {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where);

template <class T>
T get(const json& obj, const char* key, const std::string& where) {
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ValidationError(where + "." + key + ": wrong type");
    }
}

void apply_params(const json& obj, EconomyParams& params);
void apply_policy(const json& obj, RewardPolicy& policy);
void apply_run(const json& obj, ExperimentConfig& config);

json params_to_json(const EconomyParams& params);
json policy_to_json(const RewardPolicy& policy);
json config_to_json(const ExperimentConfig& config);

}  // namespace tokensim::detail
