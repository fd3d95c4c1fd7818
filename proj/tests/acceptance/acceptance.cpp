// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tokensim/config.hpp"
#include "tokensim/economy.hpp"
#include "tokensim/experiment.hpp"
#include "tokensim/metrics.hpp"
#include "tokensim/random_stream.hpp"
#include "tokensim/rewards.hpp"

using namespace tokensim;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<Outcome()> body;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::path(TOKENSIM_TEST_TMPDIR) / "acceptance" / name;
    fs::remove_all(dir);
    return dir;
}

double mean_of(const std::vector<double>& xs) { return mean_variance(xs).mean; }

std::string weeks(const std::optional<std::int64_t>& w) {
    return w ? std::to_string(*w) : std::string("never");
}

// Shared ensembles, computed once.
const ExperimentResult& baseline_result() {
    static const ExperimentResult r = evaluate(find_preset("baseline").config);
    return r;
}

// Columns of trajectories.csv checked for the algebraic invariants.
struct CsvCheck {
    std::size_t rows = 0;
    std::size_t q_violations = 0;
    std::size_t tok_violations = 0;
};

CsvCheck check_csv(const fs::path& path) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CsvCheck out;
    std::vector<double> f(16);
    while (std::getline(in, line)) {
        std::size_t pos = 0;
        for (std::size_t i = 0; i < 16; ++i) {
            const std::size_t next = line.find(',', pos);
            f[i] = std::stod(line.substr(pos, next - pos));
            pos = next + 1;
        }
        // run,t,S,D,Q,P,C,V,V_inverse,U,TOK,...
        const double S = f[2], D = f[3], Q = f[4], v_inv = f[8], U = f[9], tok = f[10];
        ++out.rows;
        if (Q != std::min(S, D)) ++out.q_violations;
        const double lo = std::min(v_inv, U), hi = std::max(v_inv, U);
        if (tok < lo * (1 - 1e-12) || tok > hi * (1 + 1e-12)) ++out.tok_violations;
    }
    return out;
}

Outcome calibration() {
    const DecaySchedule s = decay_rate_from(10'000'000.0, 260.0);
    const double half = std::pow(s.decay, 260.0);
    const double total = s.initial_reward / (1.0 - s.decay);
    Outcome o;
    o.pass = std::abs(half - 0.5) < 1e-9 && std::abs(s.initial_reward - 26624.0) <= 0.005 * 26624.0 &&
             std::abs(total - 1e7) <= 1e-3 * 1e7;
    o.detail = fmt("decay=%.6f decay^260=%.12f B0=%.2f", s.decay, half, s.initial_reward) +
               fmt(" B0/(1-decay)=%.2f", total);
    return o;
}

Outcome conservation() {
    const auto& ens = baseline_result().ensemble;
    const double W0 = find_preset("baseline").config.policy.reserve;
    double worst = 0.0;
    bool negative_b = false, w_increase = false;
    for (const auto& tr : ens) {
        for (std::size_t k = 0; k < tr.states.size(); ++k) {
            const auto& s = tr.states[k];
            worst = std::max(worst, std::abs(s.M + s.W - W0) / W0);
            negative_b |= s.B < 0.0;
            if (k > 0) w_increase |= s.W > tr.states[k - 1].W;
        }
    }
    Outcome o;
    o.pass = ens.size() == 100 && ens.front().states.size() == 1041 && worst <= 1e-9 && !negative_b &&
             !w_increase;
    o.detail = fmt("runs=%.0f max |M+W-W0|/W0=%.3g", static_cast<double>(ens.size()), worst) +
               (negative_b ? " B<0 seen" : "") + (w_increase ? " W increased" : "");
    return o;
}

Outcome determinism() {
    ExperimentConfig c = find_preset("baseline").config;
    c.base_seed = 42;
    const fs::path a = scratch("det_a"), b = scratch("det_b"), serial = scratch("det_serial");
    run_experiment(c, a);
    run_experiment(c, b);
    run_experiment(c, serial, {1});
    ExecutionOptions wide{4};
    const fs::path parallel = scratch("det_parallel");
    run_experiment(c, parallel, wide);

    const std::string ref = slurp(a / "trajectories.csv");
    Outcome o;
    o.pass = !ref.empty() && ref == slurp(b / "trajectories.csv") &&
             ref == slurp(serial / "trajectories.csv") && ref == slurp(parallel / "trajectories.csv");
    o.detail = fmt("trajectories.csv %.1f MB identical across 2 invocations, serial and 4 threads: ",
                   static_cast<double>(ref.size()) / 1e6) +
               (o.pass ? "yes" : "no");
    return o;
}

Outcome sampler_statistics() {
    constexpr int kN = 100000;
    Outcome o;
    for (double lambda : {1.0, 10.0, 100.0}) {
        RandomStream rng(derive_seed(42, static_cast<std::uint64_t>(lambda)));
        double sum = 0.0, sum_sq = 0.0;
        for (int i = 0; i < kN; ++i) {
            const auto x = static_cast<double>(sample_arrivals(lambda, rng));
            sum += x;
            sum_sq += x * x;
        }
        const double mean = sum / kN;
        const double var = (sum_sq - kN * mean * mean) / (kN - 1);
        const bool ok = std::abs(mean - lambda) <= 4.0 * std::sqrt(lambda / kN) &&
                        std::abs(var - lambda) <= 0.05 * lambda;
        o.pass &= ok;
        o.detail += fmt("Po(%.0f): mean=%.4f var=%.3f; ", lambda, mean, var);
    }

    EconomyParams p;
    p.alpha = 0.8;
    p.mu = 0.5;
    p.sigma = 0.1;
    RandomStream rng(4242);
    double C = p.mu, sum = 0.0;
    constexpr int kSteps = 100000;
    for (int i = 0; i < kSteps; ++i) {
        C = update_cost(C, p, rng);
        sum += C;
    }
    const double ar_mean = sum / kSteps;
    o.pass &= std::abs(ar_mean - p.mu) <= 0.02 * p.mu;
    o.detail += fmt("AR(1) long-run mean=%.5f (mu=0.5)", ar_mean);
    return o;
}

Outcome speculative_drift() {
    struct Row {
        double p_up, growth, variance, v_inverse;
    };
    std::vector<Row> rows;
    for (const char* name : {"low_spec", "baseline", "high_spec"}) {
        const ExperimentConfig c = find_preset(name).config;
        const ExperimentResult& r =
            std::string(name) == "baseline" ? baseline_result() : evaluate(c);
        rows.push_back({c.params.p_up, mean_of(r.summary.growth), mean_of(r.summary.fiat_variance),
                        r.summary.series.at("V_inverse").mean.back()});
    }
    Outcome o;
    o.pass = rows[2].growth > rows[1].growth && rows[1].growth > rows[0].growth &&
             rows[2].variance > rows[1].variance && rows[1].variance > rows[0].variance &&
             rows[2].v_inverse > rows[0].v_inverse;
    for (const auto& r : rows) {
        o.detail += fmt("p=%.2f growth=%.3f ", r.p_up, r.growth) +
                    fmt("fiat var=%.4g terminal 1/V=%.4f; ", r.variance, r.v_inverse);
    }
    return o;
}

Outcome targeted_rewards() {
    const auto& base = baseline_result();
    const ExperimentResult targeted = evaluate(find_preset("targeted").config);
    const auto& b = base.milestones;  // thresholds 0.5, 0.75, 1.0
    const auto& t = targeted.milestones;

    Outcome o;
    const bool half_ok = b[0] && t[0] && *t[0] < *b[0] &&
                         static_cast<double>(*t[0]) / static_cast<double>(*b[0]) < 0.8;
    const bool three_q_ok = !t[1] ? !b[1] : (!b[1] || *t[1] <= *b[1]);
    o.pass = half_ok && three_q_ok;
    o.detail = "baseline weeks " + weeks(b[0]) + "/" + weeks(b[1]) + "/" + weeks(b[2]) +
               ", targeted " + weeks(t[0]) + "/" + weeks(t[1]) + "/" + weeks(t[2]);
    if (b[0] && t[0]) {
        o.detail += fmt(", 0.5 ratio=%.3f", static_cast<double>(*t[0]) / static_cast<double>(*b[0]));
    }
    return o;
}

Outcome non_ergodicity() {
    const std::int64_t windows[] = {10, 20, 104};
    const auto m = windowed_growth_correlation(baseline_result().ensemble, windows);
    Outcome o;
    const auto near = m.at(10, 20), far = m.at(10, 104);
    o.pass = near && far && *near > *far;
    o.detail = fmt("corr(10,20)=%.4f corr(10,104)=%.4f", near ? *near : NAN, far ? *far : NAN);
    return o;
}

Outcome algebraic_invariants() {
    Outcome o;

    ExperimentConfig pure = find_preset("baseline").config;
    pure.params.gamma = 1.0;
    const fs::path pure_dir = scratch("gamma_one");
    const ExperimentResult pure_result = run_experiment(pure, pure_dir);
    double worst_r = 0.0;
    for (const auto& tr : pure_result.ensemble) {
        for (const auto& s : tr.states) worst_r = std::max(worst_r, std::abs(s.R - 1.0));
    }
    o.pass &= worst_r <= 1e-12;
    o.detail = fmt("gamma=1 max|R-1|=%.3g; ", worst_r);

    const fs::path targeted_dir = scratch("invariants_targeted");
    run_experiment(find_preset("targeted").config, targeted_dir);
    const fs::path baseline_dir = scratch("invariants_baseline");
    run_experiment(find_preset("baseline").config, baseline_dir);

    std::size_t rows = 0;
    for (const auto& dir : {baseline_dir, targeted_dir, pure_dir}) {
        const CsvCheck c = check_csv(dir / "trajectories.csv");
        rows += c.rows;
        o.pass &= c.rows == 100 * 1041 && c.q_violations == 0 && c.tok_violations == 0;
        o.detail += dir.filename().string() + fmt(": Q!=min(S,D) %.0f, TOK out of bounds %.0f; ",
                                                 static_cast<double>(c.q_violations),
                                                 static_cast<double>(c.tok_violations));
    }
    o.detail += std::to_string(rows) + " CSV rows checked";
    return o;
}

Outcome performance() {
    const auto start = Clock::now();
    const auto ens = monte_carlo(find_preset("baseline").config);
    const double elapsed = seconds_since(start);
    Outcome o;
    o.pass = ens.size() == 100 && elapsed < 10.0;
    o.detail = fmt("100 x 1040 baseline ensemble in %.3f s", elapsed);
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"calibration identities", 1e-3, calibration},
        {"performance envelope", 10.0, performance},
        {"conservation", 30.0, conservation},
        {"determinism", 30.0, determinism},
        {"sampler statistics", 5.0, sampler_statistics},
        {"speculative-drift direction", 60.0, speculative_drift},
        {"targeted-rewards direction", 60.0, targeted_rewards},
        {"non-ergodicity diagnostic", 5.0, non_ergodicity},
        {"algebraic invariants", 60.0, algebraic_invariants},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed = seconds_since(start);
        const bool in_budget = elapsed < c.budget_seconds;
        const bool pass = o.pass && in_budget;
        failures += !pass;
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << c.name << " : " << o.detail
                  << fmt(" (%.3f s, budget %.3g s)", elapsed, c.budget_seconds)
                  << (in_budget ? "" : " over budget") << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
