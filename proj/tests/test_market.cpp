#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cocoasim/market.hpp"

#include "helpers.hpp"

using namespace cocoasim;
using Catch::Approx;

namespace {
ScenarioSpec spec_of(double pym, double adoption) {
    ScenarioSpec spec;
    spec.pym = pym;
    spec.adoption_rate = adoption;
    return spec;
}
} // namespace

TEST_CASE("global delta") {
    const auto profiles = bundled_profiles();
    const auto market = bundled_market();

    CHECK(testutil::rel_err(global_delta(profiles, spec_of(2.6, 0.25), market), 0.1833) < 1e-3);

    SECTION("per-country override reproduces the published maximum row") {
        ScenarioSpec spec;
        spec.pym = 1.0;
        spec.pym_overrides = {{"ivory coast", 4.9}, {"ghana", 4.9}, {"indonesia", 3.3}};
        spec.adoption_rate = 0.25;
        CHECK(testutil::rel_err(global_delta(profiles, spec, market), 0.3811) < 1e-3);
    }
    SECTION("zero adoption, zero shock") {
        CHECK(global_delta(profiles, spec_of(3.3, 0.0), market) == 0.0);
    }
}

TEST_CASE("price and supply ratios") {
    const auto market = bundled_market();

    SECTION("published intermediate scenario") {
        const double delta = 0.1833;
        CHECK(price_ratio(delta, market) == Approx(0.8313).margin(5e-4));
        CHECK(testutil::rel_err(2.28 * price_ratio(delta, market), 1.89) < testutil::kPublishedTol);
        CHECK(supply_ratio(delta, market) == Approx(1.0648).margin(5e-4));
        CHECK(displaced_share(delta, supply_ratio(delta, market)) == Approx(0.1185).margin(5e-4));
    }
    SECTION("published maximum scenario (override reading)") {
        const double delta = 0.3811;
        CHECK(price_ratio(delta, market) == Approx(0.7014).margin(5e-4));
        CHECK(2.28 * price_ratio(delta, market) == Approx(1.60).margin(5e-3));
        CHECK(supply_ratio(delta, market) == Approx(1.1280).margin(5e-4));
        CHECK(displaced_share(delta, supply_ratio(delta, market)) == Approx(0.2531).margin(5e-4));
    }
    SECTION("no shock, no change") {
        CHECK(price_ratio(0.0, market) == 1.0);
        CHECK(supply_ratio(0.0, market) == 1.0);
        CHECK(displaced_share(0.0, 1.0) == 0.0);
    }
    SECTION("degenerate elasticities are rejected") {
        MarketParams bad = market;
        bad.demand_elasticity = 1.0; // demand - supply >= 0
        REQUIRE_THROWS_AS(price_ratio(0.1, bad), domain_error);
        REQUIRE_THROWS_AS(supply_ratio(0.1, bad), domain_error);
    }
    SECTION("shock at or below -100% is rejected") {
        REQUIRE_THROWS_AS(price_ratio(-1.0, market), domain_error);
        REQUIRE_THROWS_AS(supply_ratio(-1.5, market), domain_error);
    }
}

TEST_CASE("equilibrium identities over the delta grid") {
    const auto market = bundled_market();
    double prev_gp = 2.0, prev_gs = 0.0;
    for (int i = 0; i <= 20; ++i) {
        const double delta = 0.05 * i;
        const double gp = price_ratio(delta, market);
        const double gs = supply_ratio(delta, market);

        // the two published relations describe the same demand curve
        CHECK(gs == Approx(std::pow(gp, market.demand_elasticity)).epsilon(1e-9));
        // quantity demanded at the new price equals the new supply
        const double demanded = market.global_production_t * std::pow(gp, market.demand_elasticity);
        CHECK(demanded == Approx(market.global_production_t * gs).epsilon(1e-9));

        CHECK(gp <= 1.0);
        CHECK(gs >= 1.0);
        CHECK(gs <= 1.0 + delta + 1e-12);
        const double lambda = displaced_share(delta, gs);
        CHECK(lambda >= -1e-12);
        CHECK(lambda <= delta + 1e-12);

        CHECK(gp < prev_gp);
        CHECK(gs > prev_gs);
        prev_gp = gp;
        prev_gs = gs;
    }
}

TEST_CASE("composed equilibrium") {
    const auto profiles = bundled_profiles();
    const auto market = bundled_market();

    SECTION("intermediate scenario at published adoption") {
        const auto eq = equilibrium(profiles, spec_of(2.6, 0.25), market);
        CHECK(testutil::rel_err(eq.delta, 0.1833) < 1e-3);
        CHECK(testutil::rel_err(eq.gamma_p, 0.8313) < 1e-3);
        CHECK(testutil::rel_err(eq.gamma_s, 1.0648) < 1e-3);
        CHECK(testutil::rel_err(eq.lambda, 0.1185) < 1e-3);
        CHECK(testutil::rel_err(eq.new_price_usd_kg, 1.89) < testutil::kPublishedTol);
        CHECK(testutil::rel_err(eq.new_supply_t, 4755963.0) < 1e-3);
        CHECK(eq.new_supply_t == Approx(market.global_production_t * eq.gamma_s).epsilon(1e-12));
        CHECK(eq.lambda == Approx(eq.delta - (eq.gamma_s - 1.0)).margin(1e-15));
    }
    SECTION("zero adoption returns the baseline market") {
        const auto eq = equilibrium(profiles, spec_of(2.6, 0.0), market);
        CHECK(eq.delta == 0.0);
        CHECK(eq.gamma_p == 1.0);
        CHECK(eq.gamma_s == 1.0);
        CHECK(eq.lambda == 0.0);
        CHECK(eq.new_price_usd_kg == market.base_price_usd_kg);
        CHECK(eq.new_supply_t == market.global_production_t);
    }
    SECTION("single country worth 10% of the world at full adoption of a doubling") {
        CountryProfile p;
        p.name = "Testland";
        p.area_harvested_ha = 1000.0;
        p.yield_dry_no_poll_kg_ha = 1000.0; // 1000 t
        p.trees_per_ha = 100.0;
        p.farmer_count = 10.0;
        p.smallholder_share = 1.0;
        p.farm_labour_cost = 1.0;
        p.pollination_wage_per_day = 1.0;
        p.trees_per_worker_day = 50.0;
        p.validate();
        MarketParams m = bundled_market();
        m.global_production_t = 10000.0;
        const double delta = global_delta({p}, spec_of(2.0, 1.0), m);
        CHECK(delta == Approx(0.10).epsilon(1e-12));
    }
    SECTION("missing market validation propagates") {
        MarketParams bad = market;
        bad.global_production_t = 0.0;
        REQUIRE_THROWS_AS(global_delta(profiles, spec_of(2.6, 0.25), bad), validation_error);
    }
}

TEST_CASE("scenario price modes") {
    const auto profiles = bundled_profiles();
    const auto market = bundled_market();

    ScenarioSpec spec = spec_of(2.6, 0.25);
    spec.price_mode = PriceMode::short_term;
    CHECK(scenario_price(profiles, spec, market) == market.base_price_usd_kg);

    spec.price_mode = PriceMode::long_term;
    CHECK(scenario_price(profiles, spec, market) == Approx(1.895).margin(5e-4));

    spec.price_mode = PriceMode::explicit_price;
    spec.explicit_price_usd_kg = 1.61;
    CHECK(scenario_price(profiles, spec, market) == 1.61);
}
