#pragma once

#include <cmath>
#include <random>

#include "cocoasim/core.hpp"

namespace testutil {

inline double rel_err(double computed, double reference) {
    if (reference == 0.0) return std::fabs(computed);
    return std::fabs(computed - reference) / std::fabs(reference);
}

/// Published-table tolerance used throughout the replication checks.
inline constexpr double kPublishedTol = 0.005;

inline const cocoasim::CountryProfile& ivory_coast(const std::vector<cocoasim::CountryProfile>& ps) {
    return cocoasim::find_profile(ps, "ivory coast");
}
inline const cocoasim::CountryProfile& ghana(const std::vector<cocoasim::CountryProfile>& ps) {
    return cocoasim::find_profile(ps, "ghana");
}
inline const cocoasim::CountryProfile& indonesia(const std::vector<cocoasim::CountryProfile>& ps) {
    return cocoasim::find_profile(ps, "indonesia");
}

/// Synthetic but valid profile for property tests.
inline cocoasim::CountryProfile random_profile(std::mt19937& rng, const std::string& name) {
    std::uniform_real_distribution<double> area(1e3, 5e6);
    std::uniform_real_distribution<double> yield(50.0, 2000.0);
    std::uniform_real_distribution<double> trees(100.0, 2000.0);
    std::uniform_real_distribution<double> farmers(1e3, 5e6);
    std::uniform_real_distribution<double> share(0.05, 1.0);
    std::uniform_real_distribution<double> cost(0.0, 200.0);
    std::uniform_real_distribution<double> wage(0.1, 20.0);
    std::uniform_real_distribution<double> per_day(10.0, 200.0);
    cocoasim::CountryProfile p;
    p.name = name;
    p.area_harvested_ha = area(rng);
    p.yield_dry_no_poll_kg_ha = yield(rng);
    p.trees_per_ha = trees(rng);
    p.farmer_count = farmers(rng);
    p.smallholder_share = share(rng);
    p.input_costs = {cost(rng), cost(rng), cost(rng), cost(rng)};
    p.farm_labour_cost = cost(rng);
    p.pollination_wage_per_day = wage(rng);
    p.trees_per_worker_day = per_day(rng);
    p.validate();
    return p;
}

} // namespace testutil
