#pragma once

#include "cocoasim/core.hpp"
#include "cocoasim/errors.hpp"
#include "cocoasim/yield.hpp"

namespace cocoasim {

/// Per-hectare and per-farmer annual income under one scenario and price.
struct IncomeStatement {
    double gross_usd_ha = 0.0;
    double opcost_farm_usd_ha = 0.0; ///< inputs + farm labour, scenario-invariant
    double opcost_poll_usd_ha = 0.0; ///< manual-pollination labour
    double net_usd_ha = 0.0;
    double national_usd = 0.0;
    double per_farmer_usd = 0.0;
    double price_used_usd_kg = 0.0;
};

/// Yield times price, USD/ha/yr.
inline double gross_income_usd_ha(double yield_kg_ha, double price_usd_kg) {
    if (yield_kg_ha < 0.0 || price_usd_kg < 0.0) {
        throw domain_error("yield and price must be >= 0");
    }
    return yield_kg_ha * price_usd_kg;
}

/// Labour cost of manual pollination: (trees/ha / trees per worker-day) * wage * days.
inline double pollination_opcost_usd_ha(const CountryProfile& profile, double days) {
    if (days < 0.0) throw domain_error("pollination days must be >= 0");
    return profile.pollination_cost_per_day_ha() * days;
}

/// Full income statement for a farm applying `pym` for `days` days at `price`.
/// `days` is real-valued so break-even durations can be evaluated exactly.
inline IncomeStatement income_statement(const CountryProfile& profile, double pym, double days,
                                        double price_usd_kg) {
    if (price_usd_kg <= 0.0) throw domain_error("price must be > 0");
    IncomeStatement s;
    s.price_used_usd_kg = price_usd_kg;
    s.gross_usd_ha = gross_income_usd_ha(apply_pym(profile.yield_dry_no_poll_kg_ha, pym), price_usd_kg);
    s.opcost_farm_usd_ha = profile.farm_opcost_usd_ha();
    s.opcost_poll_usd_ha = pollination_opcost_usd_ha(profile, days);
    s.net_usd_ha = s.gross_usd_ha - s.opcost_farm_usd_ha - s.opcost_poll_usd_ha;
    s.national_usd = s.net_usd_ha * profile.area_harvested_ha * profile.smallholder_share;
    s.per_farmer_usd = s.national_usd / profile.farmer_count;
    return s;
}

inline IncomeStatement income_statement(const CountryProfile& profile, const ScenarioSpec& spec,
                                        double price_usd_kg) {
    return income_statement(profile, spec.pym_for(profile), spec.pollination_days, price_usd_kg);
}

/// No-pollination statement at the base price; the reference all income
/// changes are reported against.
inline IncomeStatement baseline_income(const CountryProfile& profile, double base_price_usd_kg) {
    return income_statement(profile, 1.0, 0.0, base_price_usd_kg);
}

/// Income change relative to the same country's no-pollination income, as a fraction.
inline double income_change_fraction(const IncomeStatement& scenario, const IncomeStatement& baseline) {
    if (baseline.per_farmer_usd == 0.0) {
        throw domain_error("baseline per-farmer income is zero; change undefined");
    }
    return scenario.per_farmer_usd / baseline.per_farmer_usd - 1.0;
}

} // namespace cocoasim
