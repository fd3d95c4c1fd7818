#pragma once

#include <cstdint>
#include <string_view>
#include <variant>

namespace tokensim {

struct EconomyState;

// Open-loop schedule B(t) = b0 * decay^t.
struct ExponentialDecay {
    double b0 = 0.0;
    double decay = 0.0;
    bool operator==(const ExponentialDecay&) const = default;
};

// B(t) = epsilon * KPI(t-1)/KPI(t-2) * W(t-1), with KPI the cumulative
// transacted service.
struct KpiDriven {
    double epsilon = 0.0005;
    bool operator==(const KpiDriven&) const = default;
};

// Issues a larger share of the remaining reserve when intrinsic value 1/V
// falls: B(t) = V(t-1)/V(t-2) * B(t-1)/W_avail(t-1) * W_avail(t).
struct IntrinsicTargeted {
    double b0 = 0.0;
    bool operator==(const IntrinsicTargeted&) const = default;
};

struct RewardPolicy {
    double reserve = 10'000'000.0;  // W0
    std::variant<ExponentialDecay, KpiDriven, IntrinsicTargeted> schedule;

    std::string_view kind() const;
    void validate() const;  // throws ValidationError

    bool operator==(const RewardPolicy&) const = default;
};

// Tokens issued and reserve bookkeeping after one issuance.
struct ReserveUpdate {
    double B = 0.0;
    double W = 0.0;
    double M = 0.0;
};

struct DecaySchedule {
    double decay = 0.0;
    double initial_reward = 0.0;
};

// Continuous decay with decay^half_life = 1/2 and the initial reward that
// makes the geometric series sum to total_supply.
DecaySchedule decay_rate_from(double total_supply, double half_life_weeks);

double exponential_reward(std::int64_t t, const ExponentialDecay& policy);

double kpi_reward(double kpi_ratio, double W_prev, double epsilon);

double targeted_reward(double V_ratio, double B_prev, double W_prev, double W_now);

ReserveUpdate apply_reserve(double B_proposed, double W_prev, double M_prev);

// Proposed (pre-clamp) B(0).
double initial_reward(const RewardPolicy& policy);

// Proposed (pre-clamp) B(t) for t >= 1. `prev` is the state at t-1 and
// carries the lagged V and KPI values needed by the feedback policies.
double proposed_reward(const RewardPolicy& policy, const EconomyState& prev, std::int64_t t);

// KPI tracked alongside the policy: the timestep for the open-loop and
// targeted schedules, cumulative Q for KpiDriven.
double next_kpi(const RewardPolicy& policy, double prev_kpi, std::int64_t t, double Q);

RewardPolicy baseline_policy();

}  // namespace tokensim
