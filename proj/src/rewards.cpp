#include "tokensim/rewards.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tokensim/economy.hpp"
#include "tokensim/errors.hpp"

namespace tokensim {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace

std::string_view RewardPolicy::kind() const {
    return std::visit(overloaded{
                          [](const ExponentialDecay&) { return std::string_view("exponential_decay"); },
                          [](const KpiDriven&) { return std::string_view("kpi_driven"); },
                          [](const IntrinsicTargeted&) { return std::string_view("intrinsic_targeted"); },
                      },
                      schedule);
}

void RewardPolicy::validate() const {
    if (!std::isfinite(reserve) || reserve <= 0.0) {
        throw ValidationError("policy.reserve: must satisfy reserve > 0");
    }
    std::visit(overloaded{
                   [&](const ExponentialDecay& p) {
                       if (!(p.b0 >= 0.0 && p.b0 <= reserve)) {
                           throw ValidationError("policy.b0: must satisfy 0 <= b0 <= reserve");
                       }
                       if (!(p.decay > 0.0 && p.decay < 1.0)) {
                           throw ValidationError("policy.decay: must satisfy 0 < decay < 1");
                       }
                   },
                   [&](const KpiDriven& p) {
                       if (!(std::isfinite(p.epsilon) && p.epsilon > 0.0)) {
                           throw ValidationError("policy.epsilon: must satisfy epsilon > 0");
                       }
                   },
                   [&](const IntrinsicTargeted& p) {
                       if (!(p.b0 >= 0.0 && p.b0 <= reserve)) {
                           throw ValidationError("policy.b0: must satisfy 0 <= b0 <= reserve");
                       }
                   },
               },
               schedule);
}

DecaySchedule decay_rate_from(double total_supply, double half_life_weeks) {
    if (!(half_life_weeks >= 1.0)) {
        throw InvalidArgument("half-life must be >= 1 week");
    }
    const double decay = std::pow(0.5, 1.0 / half_life_weeks);
    return {decay, total_supply * (1.0 - decay)};
}

double exponential_reward(std::int64_t t, const ExponentialDecay& policy) {
    return policy.b0 * std::pow(policy.decay, static_cast<double>(t));
}

double kpi_reward(double kpi_ratio, double W_prev, double epsilon) {
    return epsilon * kpi_ratio * W_prev;
}

double targeted_reward(double V_ratio, double B_prev, double W_prev, double W_now) {
    if (W_prev <= 0.0) return 0.0;  // exhausted reserve
    return V_ratio * (B_prev / W_prev) * W_now;
}

ReserveUpdate apply_reserve(double B_proposed, double W_prev, double M_prev) {
    const double B = std::clamp(B_proposed, 0.0, W_prev);
    return {B, W_prev - B, M_prev + B};
}

double initial_reward(const RewardPolicy& policy) {
    return std::visit(overloaded{
                          [](const ExponentialDecay& p) { return p.b0; },
                          [&](const KpiDriven& p) { return kpi_reward(1.0, policy.reserve, p.epsilon); },
                          [](const IntrinsicTargeted& p) { return p.b0; },
                      },
                      policy.schedule);
}

double proposed_reward(const RewardPolicy& policy, const EconomyState& prev, std::int64_t t) {
    return std::visit(
        overloaded{
            [&](const ExponentialDecay& p) { return exponential_reward(t, p); },
            [&](const KpiDriven& p) {
                const double ratio = prev.prev_KPI > 0.0 ? prev.KPI / prev.prev_KPI : 1.0;
                return kpi_reward(ratio, prev.W, p.epsilon);
            },
            [&](const IntrinsicTargeted&) {
                // prev.W is the reserve left after B(t-1) was issued, so the
                // reserve B(t-1) was drawn from is prev.W + prev.B.
                return targeted_reward(prev.V / prev.prev_V, prev.B, prev.W + prev.B, prev.W);
            },
        },
        policy.schedule);
}

double next_kpi(const RewardPolicy& policy, double prev_kpi, std::int64_t t, double Q) {
    if (std::holds_alternative<KpiDriven>(policy.schedule)) {
        return prev_kpi + Q;
    }
    return static_cast<double>(t);
}

RewardPolicy baseline_policy() {
    constexpr double kTotalSupply = 10'000'000.0;
    constexpr double kHalfLifeWeeks = 260.0;
    const DecaySchedule schedule = decay_rate_from(kTotalSupply, kHalfLifeWeeks);
    return RewardPolicy{kTotalSupply, ExponentialDecay{schedule.initial_reward, schedule.decay}};
}

}  // namespace tokensim
