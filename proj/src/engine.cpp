#include "tokensim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <thread>

#include "tokensim/errors.hpp"

namespace tokensim {

namespace {

void check_finite(const EconomyState& s) {
    const std::pair<const char*, double> fields[] = {
        {"S", s.S},     {"D", s.D},     {"Q", s.Q},   {"P", s.P},
        {"C", s.C},     {"V", s.V},     {"U", s.U},   {"TOK", s.TOK},
        {"R", s.R},     {"lambda_s", s.lambda_s},     {"lambda_d", s.lambda_d},
        {"B", s.B},     {"W", s.W},     {"M", s.M},   {"KPI", s.KPI},
    };
    for (const auto& [name, value] : fields) {
        if (!std::isfinite(value)) {
            throw NonFiniteValue(std::string(name) + " is not finite at t=" + std::to_string(s.t));
        }
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    params.validate();
    policy.validate();
    if (steps < 1) throw ValidationError("run.steps: must satisfy steps >= 1");
    if (n_runs < 1) throw ValidationError("run.n_runs: must satisfy n_runs >= 1");
}

EconomyState initial_state(const EconomyParams& params, const RewardPolicy& policy) {
    EconomyState s;
    s.t = 0;
    s.S = params.s0;
    s.D = params.d0;
    s.Q = transacted_quantity(s.S, s.D);
    s.P = clearing_price(s.S, s.D, params.k_p);
    s.C = params.c0;
    s.lambda_s = params.lambda_s0;
    s.lambda_d = params.lambda_d0;

    const ReserveUpdate reserve = apply_reserve(initial_reward(policy), policy.reserve, 0.0);
    s.B = reserve.B;
    s.W = reserve.W;
    s.M = reserve.M;
    s.KPI = next_kpi(policy, 0.0, 0, s.Q);

    s.V = miner_revenue_ratio(s.P, s.Q, s.B, s.C);
    s.U = params.u0;
    s.TOK = token_price(s.V, s.U, params.gamma);
    s.R = miner_profitability(s.V, s.TOK);

    s.prev_R = s.R;
    s.prev_P = s.P;
    s.prev_V = s.V;
    s.prev_KPI = s.KPI;
    check_finite(s);
    return s;
}

EconomyState step(const EconomyState& state, const EconomyParams& params,
                  const RewardPolicy& policy, RandomStream& rng) {
    EconomyState next;
    next.t = state.t + 1;
    next.prev_R = state.R;
    next.prev_P = state.P;
    next.prev_V = state.V;
    next.prev_KPI = state.KPI;

    std::tie(next.lambda_s, next.lambda_d) =
        update_lambdas(state, state.prev_R, state.prev_P, params);

    const std::int64_t dS = sample_arrivals(next.lambda_s, rng);
    const std::int64_t dD = sample_arrivals(next.lambda_d, rng);
    std::tie(next.S, next.D) = update_supply_demand(state, dS, dD, params);

    next.P = clearing_price(next.S, next.D, params.k_p);
    next.Q = transacted_quantity(next.S, next.D);
    next.C = update_cost(state.C, params, rng);

    const ReserveUpdate reserve =
        apply_reserve(proposed_reward(policy, state, next.t), state.W, state.M);
    next.B = reserve.B;
    next.W = reserve.W;
    next.M = reserve.M;
    next.KPI = next_kpi(policy, state.KPI, next.t, next.Q);

    bool carried = false;
    try {
        next.V = miner_revenue_ratio(next.P, next.Q, next.B, next.C);
    } catch (const NoTransactedService&) {
        next.V = state.V;
        carried = true;
    }

    next.U = update_speculative(state.U, params, rng);
    next.TOK = token_price(next.V, next.U, params.gamma);
    next.R = carried ? state.R : miner_profitability(next.V, next.TOK);

    check_finite(next);
    return next;
}

namespace {

Trajectory advance(const ExperimentConfig& config, std::size_t run_index, EconomyState state,
                   std::int64_t steps) {
    const RandomStream run_stream = RandomStream::for_run(config.base_seed, run_index);
    Trajectory trajectory;
    trajectory.run_index = run_index;
    trajectory.states.reserve(static_cast<std::size_t>(steps) + 1);
    trajectory.states.push_back(state);
    for (std::int64_t k = 0; k < steps; ++k) {
        const std::int64_t t = state.t + 1;
        RandomStream rng = step_stream(run_stream, t);
        try {
            state = step(state, config.params, config.policy, rng);
        } catch (const SimError& e) {
            throw RunFailed(run_index, t, e);
        }
        trajectory.states.push_back(state);
    }
    return trajectory;
}

}  // namespace

Trajectory run(const ExperimentConfig& config, std::size_t run_index) {
    if (run_index >= static_cast<std::size_t>(config.n_runs)) {
        throw InvalidArgument("run_index " + std::to_string(run_index) + " outside [0, " +
                              std::to_string(config.n_runs) + ")");
    }
    EconomyState start;
    try {
        start = initial_state(config.params, config.policy);
    } catch (const SimError& e) {
        throw RunFailed(run_index, 0, e);
    }
    return advance(config, run_index, start, config.steps);
}

Trajectory resume(const ExperimentConfig& config, std::size_t run_index,
                  const EconomyState& from, std::int64_t steps) {
    return advance(config, run_index, from, steps);
}

std::vector<Trajectory> monte_carlo(const ExperimentConfig& config, ExecutionOptions options) {
    config.validate();
    const auto n = static_cast<std::size_t>(config.n_runs);
    std::vector<Trajectory> out(n);

    unsigned workers = options.threads;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));

    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = run(config, i);
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    std::optional<std::size_t> failed_index;
    std::exception_ptr failure;

    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                out[i] = run(config, i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                // Report the lowest failing run so the error is deterministic.
                if (!failed_index || i < *failed_index) {
                    failed_index = i;
                    failure = std::current_exception();
                }
            }
        }
    };

    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace tokensim
