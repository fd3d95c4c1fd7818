#pragma once

#include <cstdint>
#include <utility>

#include "tokensim/random_stream.hpp"

namespace tokensim {

// Units used throughout:
//   S, D, Q           units of service
//   P                 TOK per unit
//   C                 FIAT per unit
//   V                 TOK per FIAT (tokens earned per fiat spent by miners)
//   1/V, U, TOK       FIAT per TOK
//   R                 dimensionless (V * TOK)
//   B, W, M           TOK
//   lambda_s/d        units per week
struct EconomyState {
    std::int64_t t = 0;

    double S = 0.0;
    double D = 0.0;
    double Q = 0.0;
    double P = 0.0;
    double C = 0.0;
    double V = 0.0;
    double U = 0.0;
    double TOK = 0.0;
    double R = 0.0;
    double lambda_s = 0.0;
    double lambda_d = 0.0;
    double B = 0.0;
    double W = 0.0;
    double M = 0.0;
    double KPI = 0.0;

    // Values at t-1; the update rules are driven by one-step-lagged ratios.
    // At t = 0 these equal the t = 0 values.
    double prev_R = 0.0;
    double prev_P = 0.0;
    double prev_V = 0.0;
    double prev_KPI = 0.0;

    double intrinsic_value() const { return 1.0 / V; }
    double fiat_price() const { return P * TOK; }

    bool operator==(const EconomyState&) const = default;
};

struct EconomyParams {
    double x_s = 5.0;  // supply departures per week
    double x_d = 5.0;  // demand departures per week
    double alpha = 0.8;
    double mu = 1.0;
    double sigma = 0.1;
    double gamma = 0.5;
    double p_up = 0.55;
    double u_step = 0.05;
    double k_p = 1.0;

    double s0 = 10000.0;
    double d0 = 10000.0;
    double lambda_s0 = 50.0;
    double lambda_d0 = 50.0;
    double c0 = 1.0;
    double u0 = 1.0;

    double lambda_ratio_min = 0.5;
    double lambda_ratio_max = 2.0;

    // Throws ValidationError naming the first violated constraint.
    void validate() const;

    bool operator==(const EconomyParams&) const = default;
};

inline constexpr double kSupplyDemandFloor = 1.0;
inline constexpr double kCostFloor = 0.01;

// Poisson(lambda) arrivals of new supply or demand.
std::int64_t sample_arrivals(double lambda, RandomStream& rng);

// Scales the previous means by the clamped lagged ratios R(t-1)/R(t-2) and
// P(t-2)/P(t-1). `prev` is the state at t-1.
std::pair<double, double> update_lambdas(const EconomyState& prev, double prev2_R,
                                         double prev2_P, const EconomyParams& params);

std::pair<double, double> update_supply_demand(const EconomyState& prev, std::int64_t dS,
                                               std::int64_t dD, const EconomyParams& params);

double clearing_price(double S, double D, double k_p);

double transacted_quantity(double S, double D);

// C(t) = alpha C(t-1) + (1 - alpha) N(mu, sigma), floored at kCostFloor.
// Draws one standard normal.
double update_cost(double prev_C, const EconomyParams& params, RandomStream& rng);

// V = (P Q + B) / (C Q). Throws NoTransactedService when Q == 0.
double miner_revenue_ratio(double P, double Q, double B, double C);

// Multiplicative up/down walk; draws one uniform.
double update_speculative(double prev_U, const EconomyParams& params, RandomStream& rng);

// TOK = gamma / V + (1 - gamma) U.
double token_price(double V, double U, double gamma);

double miner_profitability(double V, double TOK);

}  // namespace tokensim
