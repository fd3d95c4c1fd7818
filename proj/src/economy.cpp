#include "tokensim/economy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tokensim/errors.hpp"

namespace tokensim {

namespace {

void require(bool ok, const char* field, const char* constraint) {
    if (!ok) {
        throw ValidationError(std::string(field) + ": must satisfy " + constraint);
    }
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void EconomyParams::validate() const {
    require(finite(x_s) && x_s >= 0.0, "params.x_s", "x_s >= 0");
    require(finite(x_d) && x_d >= 0.0, "params.x_d", "x_d >= 0");
    require(finite(alpha) && alpha >= 0.0 && alpha <= 1.0, "params.alpha", "0 <= alpha <= 1");
    require(finite(mu) && mu > 0.0, "params.mu", "mu > 0");
    require(finite(sigma) && sigma >= 0.0, "params.sigma", "sigma >= 0");
    require(finite(gamma) && gamma >= 0.0 && gamma <= 1.0, "params.gamma",
            "mixture weight 0 <= gamma <= 1");
    require(finite(p_up) && p_up >= 0.0 && p_up <= 1.0, "params.p_up", "0 <= p_up <= 1");
    require(finite(u_step) && u_step > 0.0 && u_step < 1.0, "params.u_step", "0 < u_step < 1");
    require(finite(k_p) && k_p > 0.0, "params.k_p", "k_p > 0");
    require(finite(s0) && s0 >= kSupplyDemandFloor, "params.s0", "s0 >= 1");
    require(finite(d0) && d0 >= kSupplyDemandFloor, "params.d0", "d0 >= 1");
    require(finite(lambda_s0) && lambda_s0 >= 0.0, "params.lambda_s0", "lambda_s0 >= 0");
    require(finite(lambda_d0) && lambda_d0 >= 0.0, "params.lambda_d0", "lambda_d0 >= 0");
    require(finite(c0) && c0 >= kCostFloor, "params.c0", "c0 >= 0.01");
    require(finite(u0) && u0 > 0.0, "params.u0", "u0 > 0");
    require(finite(lambda_ratio_min) && lambda_ratio_min > 0.0 && lambda_ratio_min <= 1.0,
            "params.lambda_ratio_min", "0 < lambda_ratio_min <= 1");
    require(finite(lambda_ratio_max) && lambda_ratio_max >= 1.0, "params.lambda_ratio_max",
            "lambda_ratio_max >= 1");
}

std::int64_t sample_arrivals(double lambda, RandomStream& rng) { return rng.poisson(lambda); }

std::pair<double, double> update_lambdas(const EconomyState& prev, double prev2_R,
                                         double prev2_P, const EconomyParams& params) {
    auto clamp = [&](double ratio) {
        return std::clamp(ratio, params.lambda_ratio_min, params.lambda_ratio_max);
    };
    const double lambda_s = prev.lambda_s * clamp(prev.R / prev2_R);
    const double lambda_d = prev.lambda_d * clamp(prev2_P / prev.P);
    return {std::max(0.0, lambda_s), std::max(0.0, lambda_d)};
}

std::pair<double, double> update_supply_demand(const EconomyState& prev, std::int64_t dS,
                                               std::int64_t dD, const EconomyParams& params) {
    const double S = prev.S + static_cast<double>(dS) - params.x_s;
    const double D = prev.D + static_cast<double>(dD) - params.x_d;
    return {std::max(kSupplyDemandFloor, S), std::max(kSupplyDemandFloor, D)};
}

double clearing_price(double S, double D, double k_p) {
    if (!(S >= kSupplyDemandFloor)) {
        throw DegenerateState("service supply must be >= 1 to set a price, got " +
                              std::to_string(S));
    }
    return k_p * D / S;
}

double transacted_quantity(double S, double D) { return std::min(S, D); }

double update_cost(double prev_C, const EconomyParams& params, RandomStream& rng) {
    const double innovation = params.mu + params.sigma * rng.standard_normal();
    const double C = params.alpha * prev_C + (1.0 - params.alpha) * innovation;
    return std::max(kCostFloor, C);
}

double miner_revenue_ratio(double P, double Q, double B, double C) {
    if (Q == 0.0) {
        throw NoTransactedService("revenue ratio undefined with no transacted service");
    }
    return (P * Q + B) / (C * Q);
}

double update_speculative(double prev_U, const EconomyParams& params, RandomStream& rng) {
    const bool up = rng.uniform() < params.p_up;
    return prev_U * (up ? 1.0 + params.u_step : 1.0 - params.u_step);
}

double token_price(double V, double U, double gamma) {
    return gamma * (1.0 / V) + (1.0 - gamma) * U;
}

double miner_profitability(double V, double TOK) { return V * TOK; }

}  // namespace tokensim
