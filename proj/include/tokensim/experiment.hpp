#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tokensim/engine.hpp"
#include "tokensim/metrics.hpp"

namespace tokensim {

inline constexpr const char* kTrajectoryHeader =
    "run,t,S,D,Q,P,C,V,V_inverse,U,TOK,R,B,W,M,fiat_price";
inline constexpr int kSummarySchema = 1;

// 17 significant digits, shortest C-locale form ("%.17g").
std::string format_real(double x);

void write_trajectories_csv(std::ostream& out, const std::vector<Trajectory>& ensemble);

struct ExperimentResult {
    std::vector<Trajectory> ensemble;
    EnsembleSummary summary;
    std::vector<std::optional<std::int64_t>> milestones;  // for kDefaultMilestones
    std::optional<CorrelationMatrix> growth_correlation;  // needs >= 3 runs
};

ExperimentResult evaluate(const ExperimentConfig& config, ExecutionOptions options = {});

// Runs the ensemble and writes trajectories.csv, summary.json and
// manifest.json into out_dir (created if missing). Throws IoError.
ExperimentResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                                ExecutionOptions options = {});

struct ComparisonRow {
    std::string metric;
    std::optional<double> a, b;
    std::optional<double> ratio;  // a / b; 1 when both equal (including both absent)
};

struct ComparisonReport {
    std::string label_a, label_b;
    std::vector<ComparisonRow> rows;

    const ComparisonRow& row(const std::string& metric) const;
};

// Throws SchemaMismatch when the two outputs are not comparable.
ComparisonReport compare(const std::filesystem::path& dir_a, const std::filesystem::path& dir_b);

void print_report(std::ostream& out, const ComparisonReport& report);

}  // namespace tokensim
