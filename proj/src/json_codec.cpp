#include "json_codec.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace tokensim::detail {

namespace {

// (json key, member) pairs for every EconomyParams field.
template <class Params, class F>
void for_each_param(Params& p, F&& f) {
    f("x_s", p.x_s);
    f("x_d", p.x_d);
    f("alpha", p.alpha);
    f("mu", p.mu);
    f("sigma", p.sigma);
    f("gamma", p.gamma);
    f("p_up", p.p_up);
    f("u_step", p.u_step);
    f("k_p", p.k_p);
    f("s0", p.s0);
    f("d0", p.d0);
    f("lambda_s0", p.lambda_s0);
    f("lambda_d0", p.lambda_d0);
    f("c0", p.c0);
    f("u0", p.u0);
    f("lambda_ratio_min", p.lambda_ratio_min);
    f("lambda_ratio_max", p.lambda_ratio_max);
}

double get_number(const json& obj, const char* key, const std::string& where) {
    const json& v = obj.at(key);
    if (!v.is_number()) throw ValidationError(where + "." + key + ": expected a number");
    return v.get<double>();
}

}  // namespace

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) throw ValidationError(where + ": expected an object");
    for (const auto& item : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* k) { return item.key() == k; });
        if (!known) throw ValidationError(where + "." + item.key() + ": unknown key");
    }
}

void apply_params(const json& obj, EconomyParams& params) {
    if (!obj.is_object()) throw ValidationError("params: expected an object");
    for (const auto& item : obj.items()) {
        bool known = false;
        for_each_param(params, [&](const char* key, double& field) {
            if (item.key() == key) {
                field = get_number(obj, key, "params");
                known = true;
            }
        });
        if (!known) throw ValidationError("params." + item.key() + ": unknown key");
    }
}

void apply_policy(const json& obj, RewardPolicy& policy) {
    check_keys(obj, {"kind", "reserve", "b0", "decay", "epsilon", "total_supply", "half_life"},
               "policy");
    const std::string kind =
        obj.contains("kind") ? get<std::string>(obj, "kind", "policy") : std::string(policy.kind());

    auto allow_only = [&](std::initializer_list<const char*> keys) {
        check_keys(obj, keys, "policy (" + kind + ")");
    };
    auto number_or = [&](const char* key, double fallback) {
        return obj.contains(key) ? get_number(obj, key, "policy") : fallback;
    };

    if (obj.contains("reserve")) policy.reserve = get_number(obj, "reserve", "policy");

    if (kind == "exponential_decay") {
        allow_only({"kind", "reserve", "b0", "decay", "total_supply", "half_life"});
        ExponentialDecay p = std::holds_alternative<ExponentialDecay>(policy.schedule)
                                 ? std::get<ExponentialDecay>(policy.schedule)
                                 : std::get<ExponentialDecay>(baseline_policy().schedule);
        if (obj.contains("half_life")) {
            const bool explicit_pair = obj.contains("b0") || obj.contains("decay");
            if (explicit_pair) {
                throw ValidationError("policy.half_life: give either half_life or b0/decay, not both");
            }
            const double supply = number_or("total_supply", policy.reserve);
            const DecaySchedule s = decay_rate_from(supply, get_number(obj, "half_life", "policy"));
            p = {s.initial_reward, s.decay};
        } else if (obj.contains("total_supply")) {
            throw ValidationError("policy.total_supply: only valid together with half_life");
        }
        p.b0 = number_or("b0", p.b0);
        p.decay = number_or("decay", p.decay);
        policy.schedule = p;
    } else if (kind == "kpi_driven") {
        allow_only({"kind", "reserve", "epsilon"});
        KpiDriven p = std::holds_alternative<KpiDriven>(policy.schedule)
                          ? std::get<KpiDriven>(policy.schedule)
                          : KpiDriven{};
        p.epsilon = number_or("epsilon", p.epsilon);
        policy.schedule = p;
    } else if (kind == "intrinsic_targeted") {
        allow_only({"kind", "reserve", "b0"});
        IntrinsicTargeted p = std::holds_alternative<IntrinsicTargeted>(policy.schedule)
                                  ? std::get<IntrinsicTargeted>(policy.schedule)
                                  : IntrinsicTargeted{
                                        std::get<ExponentialDecay>(baseline_policy().schedule).b0};
        p.b0 = number_or("b0", p.b0);
        policy.schedule = p;
    } else {
        throw ValidationError("policy.kind: must be one of exponential_decay, kpi_driven, "
                              "intrinsic_targeted");
    }
}

void apply_run(const json& obj, ExperimentConfig& config) {
    check_keys(obj, {"steps", "n_runs", "base_seed"}, "run");
    auto integer = [&](const char* key) {
        const json& v = obj.at(key);
        if (!v.is_number_integer()) throw ValidationError(std::string("run.") + key + ": expected an integer");
        return v;
    };
    if (obj.contains("steps")) config.steps = integer("steps").get<std::int64_t>();
    if (obj.contains("n_runs")) config.n_runs = integer("n_runs").get<std::int64_t>();
    if (obj.contains("base_seed")) {
        const json& v = integer("base_seed");
        if (v.is_number_unsigned()) {
            config.base_seed = v.get<std::uint64_t>();
        } else {
            const auto s = v.get<std::int64_t>();
            if (s < 0) throw ValidationError("run.base_seed: must be >= 0");
            config.base_seed = static_cast<std::uint64_t>(s);
        }
    }
}

json params_to_json(const EconomyParams& params) {
    json out = json::object();
    for_each_param(params, [&](const char* key, const double& field) { out[key] = field; });
    return out;
}

json policy_to_json(const RewardPolicy& policy) {
    json out = json::object();
    out["kind"] = std::string(policy.kind());
    out["reserve"] = policy.reserve;
    if (const auto* p = std::get_if<ExponentialDecay>(&policy.schedule)) {
        out["b0"] = p->b0;
        out["decay"] = p->decay;
    } else if (const auto* k = std::get_if<KpiDriven>(&policy.schedule)) {
        out["epsilon"] = k->epsilon;
    } else if (const auto* t = std::get_if<IntrinsicTargeted>(&policy.schedule)) {
        out["b0"] = t->b0;
    }
    return out;
}

json config_to_json(const ExperimentConfig& config) {
    json out = json::object();
    out["params"] = params_to_json(config.params);
    out["policy"] = policy_to_json(config.policy);
    out["run"] = {{"steps", config.steps}, {"n_runs", config.n_runs}, {"base_seed", config.base_seed}};
    return out;
}

}  // namespace tokensim::detail
