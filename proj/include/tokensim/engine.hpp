#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tokensim/economy.hpp"
#include "tokensim/random_stream.hpp"
#include "tokensim/rewards.hpp"

namespace tokensim {

struct Trajectory {
    std::size_t run_index = 0;
    std::vector<EconomyState> states;  // states[k].t == k

    bool operator==(const Trajectory&) const = default;
};

struct ExperimentConfig {
    EconomyParams params;
    RewardPolicy policy = baseline_policy();
    std::int64_t steps = 1040;
    std::int64_t n_runs = 100;
    std::uint64_t base_seed = 42;

    void validate() const;
    bool operator==(const ExperimentConfig&) const = default;
};

// State at t = 0: S, D, C, U and the arrival means come from params; Q, P,
// B(0), V, TOK and R are derived from them. Lagged fields equal their
// t = 0 values.
EconomyState initial_state(const EconomyParams& params, const RewardPolicy& policy);

// One week of dynamics, in this order:
//   1. lambda_s, lambda_d from the lagged R and P ratios (clamped)
//   2. Poisson arrivals dS, then dD
//   3. S, D with departures and the one-unit floor
//   4. P, Q
//   5. C (one standard normal)
//   6. B, W, M via the reward policy and reserve
//   7. V (carried forward if Q == 0)
//   8. U (one uniform)
//   9. TOK
//  10. R
// Draws: two Poisson variates, one standard normal, one uniform, in that order.
EconomyState step(const EconomyState& state, const EconomyParams& params,
                  const RewardPolicy& policy, RandomStream& rng);

// Stream used for step t of a run whose stream is `run_stream`. Each step
// gets its own sub-stream so any suffix of a run can be replayed.
inline RandomStream step_stream(const RandomStream& run_stream, std::int64_t t) {
    return run_stream.substream(static_cast<std::uint64_t>(t));
}

Trajectory run(const ExperimentConfig& config, std::size_t run_index);

// Continue a trajectory from an arbitrary state for `steps` more weeks,
// reproducing exactly what run() would have produced from that state.
Trajectory resume(const ExperimentConfig& config, std::size_t run_index,
                  const EconomyState& from, std::int64_t steps);

struct ExecutionOptions {
    // 0 = one worker per hardware thread, 1 = serial.
    unsigned threads = 0;
};

// All runs ordered by run_index. The result does not depend on `options`.
std::vector<Trajectory> monte_carlo(const ExperimentConfig& config,
                                    ExecutionOptions options = {});

}  // namespace tokensim
