// tokensim: run token-economy experiments and compare their outputs.
//
//   tokensim simulate --preset baseline --seed 42 --out out/baseline
//   tokensim simulate --config my.json --runs 10
//   tokensim compare out/baseline out/targeted
//   tokensim presets

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tokensim/config.hpp"
#include "tokensim/errors.hpp"
#include "tokensim/experiment.hpp"

namespace {

int report_error(const std::string& kind, const std::string& message) {
    nlohmann::json err{{"error", kind}, {"message", message}};
    std::cerr << err.dump() << '\n';
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Token economy simulator"};
    app.require_subcommand(1);

    std::string preset_name;
    std::string config_path;
    std::optional<std::int64_t> runs, steps;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    unsigned threads = 0;

    auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo experiment");
    auto* preset_opt = simulate->add_option("--preset", preset_name, "Named preset");
    auto* config_opt = simulate->add_option("--config", config_path, "Config or manifest JSON file");
    preset_opt->excludes(config_opt);
    simulate->add_option("--runs", runs, "Number of Monte Carlo runs");
    simulate->add_option("--steps", steps, "Weeks per run");
    simulate->add_option("--seed", seed, "Base seed");
    simulate->add_option("--out", out_dir, "Output directory")->capture_default_str();
    simulate->add_option("--threads", threads, "Worker threads (0 = all cores, 1 = serial)")
        ->capture_default_str();

    std::string dir_a, dir_b;
    auto* compare = app.add_subcommand("compare", "Compare two experiment outputs");
    compare->add_option("dir_a", dir_a, "First output directory")->required();
    compare->add_option("dir_b", dir_b, "Second output directory")->required();

    auto* list = app.add_subcommand("presets", "List presets with resolved parameters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error("UsageError", e.what());
    }

    try {
        if (*simulate) {
            tokensim::ExperimentConfig config;
            if (*config_opt) {
                config = tokensim::load_config(config_path);
            } else {
                config = tokensim::find_preset(preset_name.empty() ? "baseline" : preset_name).config;
            }
            if (runs) config.n_runs = *runs;
            if (steps) config.steps = *steps;
            if (seed) config.base_seed = *seed;
            config.validate();

            const auto result = tokensim::run_experiment(config, out_dir, {threads});
            std::cout << "wrote " << result.ensemble.size() << " runs x " << config.steps + 1
                      << " states to " << out_dir << '\n';
        } else if (*compare) {
            tokensim::print_report(std::cout, tokensim::compare(dir_a, dir_b));
        } else if (*list) {
            for (const auto& p : tokensim::presets()) {
                std::cout << "# " << p.name << ": " << p.description << '\n'
                          << tokensim::emit_config(p.config);
            }
        }
    } catch (const tokensim::SimError& e) {
        return report_error(e.kind(), e.what());
    } catch (const std::exception& e) {
        return report_error("InternalError", e.what());
    }
    return 0;
}
