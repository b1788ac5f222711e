#pragma once

#include <cmath>

#include "cocoasim/core.hpp"
#include "cocoasim/errors.hpp"
#include "cocoasim/income.hpp"

namespace cocoasim {

struct BreakevenResult {
    double exact_days = 0.0;
    bool goal_reachable = true; ///< false when the goal is missed even with zero labour days
};

/// Longest annual pollination duration that still meets an income goal.
///
/// Net income is affine in days, so the solution is closed-form:
///   d* = (net(0 days at scenario price) - goal * net(no pollination at base price))
///        / daily pollination cost.
/// The goal multiplier applies to the no-pollination income at the base price.
inline BreakevenResult breakeven_days(const CountryProfile& profile, double pym,
                                      double price_usd_kg, double goal_multiplier,
                                      double base_price_usd_kg) {
    if (pym <= 1.0) throw domain_error("break-even requires a multiplier > 1");
    if (goal_multiplier < 1.0) throw domain_error("goal multiplier must be >= 1");
    if (price_usd_kg <= 0.0 || base_price_usd_kg <= 0.0) throw domain_error("prices must be > 0");
    const double daily_cost = profile.pollination_cost_per_day_ha();
    if (daily_cost <= 0.0) {
        throw domain_error(profile.name +
                           ": daily pollination cost is zero; income does not depend on days");
    }
    const double net_zero_days = income_statement(profile, pym, 0.0, price_usd_kg).net_usd_ha;
    const double net_baseline = baseline_income(profile, base_price_usd_kg).net_usd_ha;
    const double exact = (net_zero_days - goal_multiplier * net_baseline) / daily_cost;
    if (exact < 0.0) return {0.0, false};
    return {exact, true};
}

/// Largest multiple of `step` not exceeding `days`; 0 below the first gridline.
inline double gridline_floor(double days, double step) {
    if (step <= 0.0) throw domain_error("gridline step must be > 0");
    if (days < step) return 0.0;
    return std::floor(days / step) * step;
}

} // namespace cocoasim
