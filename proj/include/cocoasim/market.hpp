#pragma once

#include <cmath>
#include <vector>

#include "cocoasim/core.hpp"
#include "cocoasim/errors.hpp"
#include "cocoasim/yield.hpp"

namespace cocoasim {

/// New long-run market equilibrium after a fractional production shock.
struct EquilibriumResult {
    double delta = 0.0;            ///< fractional production shock
    double gamma_p = 1.0;          ///< new price / old price
    double gamma_s = 1.0;          ///< new supply / old supply
    double lambda = 0.0;           ///< displaced share of original production
    double new_price_usd_kg = 0.0;
    double new_supply_t = 0.0;
};

/// Adoption-weighted global supply shock from the profiles' additions.
inline double global_delta(const std::vector<CountryProfile>& profiles, const ScenarioSpec& spec,
                           const MarketParams& market) {
    spec.validate();
    market.validate();
    double additions = 0.0;
    for (const auto& profile : profiles) {
        additions += country_addition_t(profile, spec.pym_for(profile), spec.adoption_rate);
    }
    return additions / market.global_production_t;
}

namespace detail {
inline double elasticity_gap(const MarketParams& market) {
    const double gap = market.demand_elasticity - market.supply_elasticity;
    if (gap >= 0.0) {
        throw domain_error("degenerate elasticities: demand_elasticity - supply_elasticity must be < 0");
    }
    return gap;
}

inline double checked_log1p_delta(double delta) {
    if (delta <= -1.0) throw domain_error("production shock must exceed -1");
    return std::log1p(delta);
}
} // namespace detail

/// Price ratio gamma_P = (1 + delta)^(1 / (eps_D - eps_S)).
inline double price_ratio(double delta, const MarketParams& market) {
    const double gap = detail::elasticity_gap(market);
    return std::exp(detail::checked_log1p_delta(delta) / gap);
}

/// Supply ratio gamma_S = (1 + delta)^(eps_D / (eps_D - eps_S)).
inline double supply_ratio(double delta, const MarketParams& market) {
    const double gap = detail::elasticity_gap(market);
    return std::exp(detail::checked_log1p_delta(delta) * market.demand_elasticity / gap);
}

/// Share of original production whose producers exit at the lower price.
inline double displaced_share(double delta, double gamma_s) {
    return delta - (gamma_s - 1.0);
}

inline EquilibriumResult equilibrium_at_delta(double delta, const MarketParams& market) {
    EquilibriumResult result;
    result.delta = delta;
    result.gamma_p = price_ratio(delta, market);
    result.gamma_s = supply_ratio(delta, market);
    result.lambda = displaced_share(delta, result.gamma_s);
    result.new_price_usd_kg = market.base_price_usd_kg * result.gamma_p;
    result.new_supply_t = market.global_production_t * result.gamma_s;
    return result;
}

inline EquilibriumResult equilibrium(const std::vector<CountryProfile>& profiles,
                                     const ScenarioSpec& spec, const MarketParams& market) {
    return equilibrium_at_delta(global_delta(profiles, spec, market), market);
}

/// Price a scenario's income is evaluated at, per its price mode.
inline double scenario_price(const std::vector<CountryProfile>& profiles, const ScenarioSpec& spec,
                             const MarketParams& market) {
    switch (spec.price_mode) {
        case PriceMode::short_term: return market.base_price_usd_kg;
        case PriceMode::long_term: return equilibrium(profiles, spec, market).new_price_usd_kg;
        case PriceMode::explicit_price: return spec.explicit_price_usd_kg;
    }
    throw config_error("unhandled price mode");
}

} // namespace cocoasim
