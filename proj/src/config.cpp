#include "tokensim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "tokensim/errors.hpp"
#include "json_codec.hpp"

namespace tokensim {

using nlohmann::json;

namespace {

ExperimentConfig with_p_up(double p_up) {
    ExperimentConfig c;
    c.params.p_up = p_up;
    return c;
}

std::vector<Preset> make_presets() {
    std::vector<Preset> out;
    out.push_back({"baseline", "exponential-decay rewards, 55% upward TOK drift", ExperimentConfig{}});
    out.push_back({"high_spec", "baseline with 58% upward TOK drift", with_p_up(0.58)});
    out.push_back({"low_spec", "baseline with 52% upward TOK drift", with_p_up(0.52)});

    ExperimentConfig kpi;
    kpi.policy = RewardPolicy{kpi.policy.reserve, KpiDriven{0.0005}};
    out.push_back({"kpi", "rewards proportional to KPI growth (cumulative Q) and reserve", kpi});

    ExperimentConfig targeted;
    const double b0 = std::get<ExponentialDecay>(targeted.policy.schedule).b0;
    targeted.policy = RewardPolicy{targeted.policy.reserve, IntrinsicTargeted{b0}};
    out.push_back({"targeted", "rewards targeting intrinsic value 1/V", targeted});
    return out;
}

}  // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = make_presets();
    return all;
}

const Preset& find_preset(std::string_view name) {
    for (const auto& p : presets()) {
        if (p.name == name) return p;
    }
    throw ValidationError("preset: unknown preset '" + std::string(name) + "'");
}

ExperimentConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_object()) throw ParseError("config document must be a JSON object");

    if (doc.contains("config")) {
        detail::check_keys(doc, {"artifact", "version", "base_seed", "config"}, "manifest");
        if (doc.value("artifact", "") != kArtifactName) {
            throw SchemaMismatch("manifest was not written by " + std::string(kArtifactName));
        }
        ExperimentConfig config = parse_config(doc.at("config").dump());
        if (doc.contains("base_seed") && doc.at("base_seed") != json(config.base_seed)) {
            throw ValidationError("manifest.base_seed: disagrees with config.run.base_seed");
        }
        return config;
    }

    detail::check_keys(doc, {"preset", "params", "policy", "run"}, "config");
    const std::string base = doc.contains("preset") ? detail::get<std::string>(doc, "preset", "config")
                                                     : std::string("baseline");
    ExperimentConfig config = find_preset(base).config;
    if (doc.contains("params")) detail::apply_params(doc.at("params"), config.params);
    if (doc.contains("policy")) detail::apply_policy(doc.at("policy"), config.policy);
    if (doc.contains("run")) detail::apply_run(doc.at("run"), config);
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string emit_config(const ExperimentConfig& config) {
    return detail::config_to_json(config).dump(2) + "\n";
}

}  // namespace tokensim
