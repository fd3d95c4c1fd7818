#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tokensim/engine.hpp"

namespace tokensim {

// Q(T) / Q(0).
double aggregated_growth(const Trajectory& trajectory);

struct MeanVariance {
    double mean = 0.0;
    double variance = 0.0;  // population variance
};

MeanVariance mean_variance(std::span<const double> xs);

// Population mean and variance of the fiat service price P(t) * TOK(t).
MeanVariance fiat_price_stats(const Trajectory& trajectory);

enum class MilestoneMode {
    EnsembleMean,   // first t where the ensemble-mean 1/V(t) >= threshold
    PerRunMedian,   // median over runs of each run's first crossing
};

// One entry per threshold; nullopt means never crossed. Thresholds must be
// sorted ascending.
std::vector<std::optional<std::int64_t>> milestone_times(
    const std::vector<Trajectory>& ensemble, std::span<const double> thresholds,
    MilestoneMode mode = MilestoneMode::EnsembleMean);

// Pearson correlations between rolling-window mean growth of Q for each pair
// of window lengths. For windows (a, b) the window means starting at the same
// week are paired, over every run and every start week valid for max(a, b).
// Entries are nullopt where a window's growth has zero variance.
struct CorrelationMatrix {
    std::vector<std::int64_t> windows;
    std::vector<std::vector<std::optional<double>>> values;

    std::optional<double> at(std::int64_t a, std::int64_t b) const;
    bool fully_defined() const;
};

CorrelationMatrix windowed_growth_correlation(const std::vector<Trajectory>& ensemble,
                                              std::span<const std::int64_t> windows);

inline constexpr std::int64_t kDefaultGrowthWindows[] = {10, 20, 30, 104};
inline constexpr double kDefaultMilestones[] = {0.5, 0.75, 1.0};

struct SeriesStats {
    std::vector<double> mean, median, std, p5, p95;
};

struct EnsembleSummary {
    std::int64_t steps = 0;
    std::size_t runs = 0;
    // Keyed by CSV column name: V_inverse, TOK, fiat_price, Q, B, W.
    std::map<std::string, SeriesStats> series;
    std::vector<double> growth;       // per run
    std::vector<double> fiat_mean;    // per run
    std::vector<double> fiat_variance;  // per run
};

inline constexpr const char* kSummarySeries[] = {"V_inverse", "TOK", "fiat_price", "Q", "B", "W"};

EnsembleSummary summarize(const std::vector<Trajectory>& ensemble);

// Linear-interpolation percentile (q in [0, 1]) of an unsorted sample.
double percentile(std::vector<double> xs, double q);

double pearson(std::span<const double> x, std::span<const double> y);

}  // namespace tokensim
