#include "tokensim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tokensim/errors.hpp"

namespace tokensim {

namespace {

double series_value(const EconomyState& s, const std::string& name) {
    if (name == "V_inverse") return s.intrinsic_value();
    if (name == "TOK") return s.TOK;
    if (name == "fiat_price") return s.fiat_price();
    if (name == "Q") return s.Q;
    if (name == "B") return s.B;
    if (name == "W") return s.W;
    throw InvalidArgument("unknown series " + name);
}

void require_equal_lengths(const std::vector<Trajectory>& ensemble) {
    if (ensemble.empty()) throw ShapeMismatch("ensemble is empty");
    const std::size_t len = ensemble.front().states.size();
    for (const auto& tr : ensemble) {
        if (tr.states.size() != len) {
            throw ShapeMismatch("run " + std::to_string(tr.run_index) + " has " +
                                std::to_string(tr.states.size()) + " states, expected " +
                                std::to_string(len));
        }
    }
    if (len == 0) throw ShapeMismatch("trajectories are empty");
}

// Per-step growth Q(t)/Q(t-1) - 1 for t = 1..T, as prefix sums.
std::vector<double> growth_prefix(const Trajectory& tr) {
    std::vector<double> prefix(tr.states.size(), 0.0);
    for (std::size_t t = 1; t < tr.states.size(); ++t) {
        const double q_prev = tr.states[t - 1].Q;
        if (q_prev <= 0.0) {
            throw DegenerateBaseline("Q(" + std::to_string(t - 1) + ") = 0 in run " +
                                     std::to_string(tr.run_index));
        }
        prefix[t] = prefix[t - 1] + tr.states[t].Q / q_prev - 1.0;
    }
    return prefix;
}

}  // namespace

double aggregated_growth(const Trajectory& trajectory) {
    if (trajectory.states.empty()) throw ShapeMismatch("empty trajectory");
    const double q0 = trajectory.states.front().Q;
    if (q0 == 0.0) throw DegenerateBaseline("Q(0) = 0; growth undefined");
    return trajectory.states.back().Q / q0;
}

MeanVariance mean_variance(std::span<const double> xs) {
    if (xs.empty()) throw InvalidArgument("mean of an empty series");
    const double n = static_cast<double>(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, ss / n};
}

MeanVariance fiat_price_stats(const Trajectory& trajectory) {
    std::vector<double> xs;
    xs.reserve(trajectory.states.size());
    for (const auto& s : trajectory.states) xs.push_back(s.fiat_price());
    return mean_variance(xs);
}

std::vector<std::optional<std::int64_t>> milestone_times(const std::vector<Trajectory>& ensemble,
                                                         std::span<const double> thresholds,
                                                         MilestoneMode mode) {
    if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
        throw InvalidArgument("milestone thresholds must be sorted ascending");
    }
    require_equal_lengths(ensemble);
    const std::size_t len = ensemble.front().states.size();

    auto first_crossing = [](const std::vector<double>& series, double threshold) {
        std::optional<std::int64_t> hit;
        for (std::size_t t = 0; t < series.size(); ++t) {
            if (series[t] >= threshold) {
                hit = static_cast<std::int64_t>(t);
                break;
            }
        }
        return hit;
    };

    std::vector<std::optional<std::int64_t>> out;
    out.reserve(thresholds.size());

    if (mode == MilestoneMode::EnsembleMean) {
        std::vector<double> mean(len, 0.0);
        for (const auto& tr : ensemble) {
            for (std::size_t t = 0; t < len; ++t) mean[t] += tr.states[t].intrinsic_value();
        }
        for (double& m : mean) m /= static_cast<double>(ensemble.size());
        for (double th : thresholds) out.push_back(first_crossing(mean, th));
        return out;
    }

    // Per-run median: "never" sorts after every finite crossing.
    constexpr double kNever = std::numeric_limits<double>::infinity();
    for (double th : thresholds) {
        std::vector<double> crossings;
        crossings.reserve(ensemble.size());
        for (const auto& tr : ensemble) {
            std::vector<double> series;
            series.reserve(len);
            for (const auto& s : tr.states) series.push_back(s.intrinsic_value());
            const auto hit = first_crossing(series, th);
            crossings.push_back(hit ? static_cast<double>(*hit) : kNever);
        }
        std::sort(crossings.begin(), crossings.end());
        // Lower median keeps the result an observed week.
        const double med = crossings[(crossings.size() - 1) / 2];
        out.push_back(std::isinf(med) ? std::nullopt
                                      : std::optional<std::int64_t>(static_cast<std::int64_t>(med)));
    }
    return out;
}

std::optional<double> CorrelationMatrix::at(std::int64_t a, std::int64_t b) const {
    const auto ia = std::find(windows.begin(), windows.end(), a);
    const auto ib = std::find(windows.begin(), windows.end(), b);
    if (ia == windows.end() || ib == windows.end()) {
        throw InvalidArgument("window not present in correlation matrix");
    }
    return values[static_cast<std::size_t>(ia - windows.begin())]
                 [static_cast<std::size_t>(ib - windows.begin())];
}

bool CorrelationMatrix::fully_defined() const {
    for (const auto& row : values) {
        for (const auto& v : row) {
            if (!v) return false;
        }
    }
    return true;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty()) throw ShapeMismatch("pearson: size mismatch");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return sxy / std::sqrt(sxx * syy);
}

CorrelationMatrix windowed_growth_correlation(const std::vector<Trajectory>& ensemble,
                                              std::span<const std::int64_t> windows) {
    if (ensemble.size() < 3) {
        throw InsufficientData("windowed growth correlation needs at least 3 runs, got " +
                               std::to_string(ensemble.size()));
    }
    require_equal_lengths(ensemble);
    const auto steps = static_cast<std::int64_t>(ensemble.front().states.size()) - 1;
    for (std::int64_t w : windows) {
        if (w < 2 || w > steps) {
            throw InvalidArgument("window " + std::to_string(w) + " outside [2, " +
                                  std::to_string(steps) + "]");
        }
    }

    std::vector<std::vector<double>> prefixes;
    prefixes.reserve(ensemble.size());
    for (const auto& tr : ensemble) prefixes.push_back(growth_prefix(tr));

    // Mean growth over steps [start, start + w).
    auto window_mean = [](const std::vector<double>& prefix, std::int64_t start, std::int64_t w) {
        const auto s = static_cast<std::size_t>(start);
        const auto e = static_cast<std::size_t>(start + w);
        return (prefix[e - 1] - prefix[s - 1]) / static_cast<double>(w);
    };

    const std::size_t k = windows.size();
    CorrelationMatrix result;
    result.windows.assign(windows.begin(), windows.end());
    result.values.assign(k, std::vector<std::optional<double>>(k));

    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            const std::int64_t wa = windows[i];
            const std::int64_t wb = windows[j];
            const std::int64_t span = std::max(wa, wb);
            std::vector<double> xa, xb;
            for (const auto& prefix : prefixes) {
                for (std::int64_t start = 1; start + span - 1 <= steps; ++start) {
                    xa.push_back(window_mean(prefix, start, wa));
                    xb.push_back(window_mean(prefix, start, wb));
                }
            }
            const double r = pearson(xa, xb);
            std::optional<double> value;
            if (!std::isnan(r)) value = (i == j) ? 1.0 : std::clamp(r, -1.0, 1.0);
            result.values[i][j] = value;
            result.values[j][i] = value;
        }
    }
    return result;
}

double percentile(std::vector<double> xs, double q) {
    if (xs.empty()) throw InvalidArgument("percentile of an empty sample");
    std::sort(xs.begin(), xs.end());
    const double pos = q * static_cast<double>(xs.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, xs.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return xs[lo] + frac * (xs[hi] - xs[lo]);
}

EnsembleSummary summarize(const std::vector<Trajectory>& ensemble) {
    require_equal_lengths(ensemble);
    const std::size_t len = ensemble.front().states.size();
    const std::size_t runs = ensemble.size();

    EnsembleSummary summary;
    summary.steps = static_cast<std::int64_t>(len) - 1;
    summary.runs = runs;

    std::vector<double> column(runs);
    for (const char* name : kSummarySeries) {
        SeriesStats stats;
        for (auto* v : {&stats.mean, &stats.median, &stats.std, &stats.p5, &stats.p95}) {
            v->reserve(len);
        }
        for (std::size_t t = 0; t < len; ++t) {
            for (std::size_t r = 0; r < runs; ++r) column[r] = series_value(ensemble[r].states[t], name);
            const MeanVariance mv = mean_variance(column);
            stats.mean.push_back(mv.mean);
            stats.std.push_back(std::sqrt(mv.variance));
            std::sort(column.begin(), column.end());
            stats.median.push_back(percentile(column, 0.5));
            stats.p5.push_back(percentile(column, 0.05));
            stats.p95.push_back(percentile(column, 0.95));
        }
        summary.series.emplace(name, std::move(stats));
    }

    for (const auto& tr : ensemble) {
        summary.growth.push_back(aggregated_growth(tr));
        const MeanVariance fiat = fiat_price_stats(tr);
        summary.fiat_mean.push_back(fiat.mean);
        summary.fiat_variance.push_back(fiat.variance);
    }
    return summary;
}

}  // namespace tokensim
