#include "tokensim/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "json_codec.hpp"
#include "tokensim/config.hpp"
#include "tokensim/errors.hpp"

namespace tokensim {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_trajectories_csv(std::ostream& out, const std::vector<Trajectory>& ensemble) {
    out << kTrajectoryHeader << '\n';
    std::string line;
    for (const auto& tr : ensemble) {
        for (const auto& s : tr.states) {
            line.clear();
            line += std::to_string(tr.run_index);
            line += ',';
            line += std::to_string(s.t);
            for (double v : {s.S, s.D, s.Q, s.P, s.C, s.V, s.intrinsic_value(), s.U, s.TOK, s.R, s.B,
                             s.W, s.M, s.fiat_price()}) {
                line += ',';
                line += format_real(v);
            }
            line += '\n';
            out << line;
        }
    }
}

ExperimentResult evaluate(const ExperimentConfig& config, ExecutionOptions options) {
    ExperimentResult result;
    result.ensemble = monte_carlo(config, options);
    result.summary = summarize(result.ensemble);
    result.milestones = milestone_times(result.ensemble, kDefaultMilestones);
    const std::int64_t steps = result.summary.steps;
    if (result.ensemble.size() >= 3) {
        std::vector<std::int64_t> windows;
        for (std::int64_t w : kDefaultGrowthWindows) {
            if (w <= steps) windows.push_back(w);
        }
        if (!windows.empty()) {
            result.growth_correlation = windowed_growth_correlation(result.ensemble, windows);
        }
    }
    return result;
}

namespace {

json optional_to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

double mean_of(const std::vector<double>& xs) { return mean_variance(xs).mean; }

json summary_to_json(const ExperimentConfig& config, const ExperimentResult& r) {
    const EnsembleSummary& s = r.summary;
    json out;
    out["schema"] = kSummarySchema;
    out["runs"] = s.runs;
    out["steps"] = s.steps;
    out["policy"] = std::string(config.policy.kind());

    out["aggregated_growth"] = {
        {"mean", mean_of(s.growth)},
        {"median", percentile(s.growth, 0.5)},
        {"per_run", s.growth},
    };
    out["fiat_price"] = {
        {"mean", mean_of(s.fiat_mean)},
        {"variance", mean_of(s.fiat_variance)},
        {"per_run_mean", s.fiat_mean},
        {"per_run_variance", s.fiat_variance},
    };
    out["terminal_v_inverse_mean"] = s.series.at("V_inverse").mean.back();

    json weeks = json::array();
    for (const auto& m : r.milestones) weeks.push_back(m ? json(*m) : json(nullptr));
    out["milestones"] = {
        {"mode", "ensemble_mean"},
        {"thresholds", kDefaultMilestones},
        {"weeks", weeks},
    };

    if (r.growth_correlation) {
        json matrix = json::array();
        for (const auto& row : r.growth_correlation->values) {
            json jrow = json::array();
            for (const auto& v : row) jrow.push_back(optional_to_json(v));
            matrix.push_back(jrow);
        }
        out["windowed_growth_correlation"] = {
            {"windows", r.growth_correlation->windows},
            {"matrix", matrix},
        };
    } else {
        out["windowed_growth_correlation"] = nullptr;
    }

    json series = json::object();
    for (const auto& [name, st] : s.series) {
        series[name] = {{"mean", st.mean},     {"median", st.median}, {"std", st.std},
                        {"p5", st.p5},         {"p95", st.p95}};
    }
    out["series"] = series;
    return out;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("write failed for " + path.string());
}

json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const fs::path& out_dir,
                                ExecutionOptions options) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    ExperimentResult result = evaluate(config, options);

    {
        std::ostringstream csv;
        write_trajectories_csv(csv, result.ensemble);
        write_file(out_dir / "trajectories.csv", csv.str());
    }
    write_file(out_dir / "summary.json", summary_to_json(config, result).dump(2) + "\n");

    json manifest;
    manifest["artifact"] = std::string(kArtifactName);
    manifest["version"] = std::string(kArtifactVersion);
    manifest["base_seed"] = config.base_seed;
    manifest["config"] = detail::config_to_json(config);
    write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
    return result;
}

const ComparisonRow& ComparisonReport::row(const std::string& metric) const {
    for (const auto& r : rows) {
        if (r.metric == metric) return r;
    }
    throw InvalidArgument("no comparison row " + metric);
}

ComparisonReport compare(const fs::path& dir_a, const fs::path& dir_b) {
    auto load = [](const fs::path& dir) {
        const json manifest = read_json(dir / "manifest.json");
        if (manifest.value("artifact", "") != kArtifactName || !manifest.contains("config")) {
            throw SchemaMismatch(dir.string() + ": manifest not written by " + std::string(kArtifactName));
        }
        const json summary = read_json(dir / "summary.json");
        if (summary.value("schema", -1) != kSummarySchema) {
            throw SchemaMismatch(dir.string() + ": unsupported summary schema");
        }
        return std::pair{manifest, summary};
    };
    const auto [manifest_a, summary_a] = load(dir_a);
    const auto [manifest_b, summary_b] = load(dir_b);

    if (manifest_a.at("version") != manifest_b.at("version")) {
        throw SchemaMismatch("artifact versions differ");
    }
    if (summary_a.at("steps") != summary_b.at("steps")) {
        throw SchemaMismatch("horizons differ: " + summary_a.at("steps").dump() + " vs " +
                             summary_b.at("steps").dump() + " steps");
    }
    if (summary_a.at("milestones").at("thresholds") != summary_b.at("milestones").at("thresholds")) {
        throw SchemaMismatch("milestone thresholds differ");
    }

    auto number = [](const json& v) -> std::optional<double> {
        if (v.is_null()) return std::nullopt;
        return v.get<double>();
    };

    ComparisonReport report;
    report.label_a = dir_a.string();
    report.label_b = dir_b.string();
    auto add = [&](std::string metric, const json& a, const json& b) {
        ComparisonRow row{std::move(metric), number(a), number(b), std::nullopt};
        if (row.a == row.b) {
            row.ratio = 1.0;
        } else if (row.a && row.b && *row.b != 0.0) {
            row.ratio = *row.a / *row.b;
        }
        report.rows.push_back(std::move(row));
    };

    add("aggregated_growth.mean", summary_a["aggregated_growth"]["mean"],
        summary_b["aggregated_growth"]["mean"]);
    add("fiat_price.mean", summary_a["fiat_price"]["mean"], summary_b["fiat_price"]["mean"]);
    add("fiat_price.variance", summary_a["fiat_price"]["variance"], summary_b["fiat_price"]["variance"]);
    add("terminal_v_inverse_mean", summary_a["terminal_v_inverse_mean"],
        summary_b["terminal_v_inverse_mean"]);

    const json& thresholds = summary_a["milestones"]["thresholds"];
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        std::ostringstream name;
        name << "milestone_weeks@" << thresholds[i].get<double>();
        add(name.str(), summary_a["milestones"]["weeks"][i], summary_b["milestones"]["weeks"][i]);
    }
    return report;
}

void print_report(std::ostream& out, const ComparisonReport& report) {
    auto cell = [](const std::optional<double>& v, const char* absent) {
        if (!v) return std::string(absent);
        std::ostringstream s;
        s << std::setprecision(6) << *v;
        return s.str();
    };
    out << "A: " << report.label_a << "\nB: " << report.label_b << "\n\n";
    out << std::left << std::setw(28) << "metric" << std::setw(16) << "A" << std::setw(16) << "B"
        << "A/B\n";
    for (const auto& r : report.rows) {
        out << std::left << std::setw(28) << r.metric << std::setw(16) << cell(r.a, "never")
            << std::setw(16) << cell(r.b, "never") << cell(r.ratio, "n/a") << '\n';
    }
}

}  // namespace tokensim
