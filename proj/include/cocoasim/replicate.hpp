#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cocoasim/breakeven.hpp"
#include "cocoasim/config.hpp"
#include "cocoasim/core.hpp"
#include "cocoasim/income.hpp"
#include "cocoasim/market.hpp"
#include "cocoasim/report.hpp"
#include "cocoasim/winwin.hpp"
#include "cocoasim/yield.hpp"

namespace cocoasim::replicate {

using report::Check;
using report::ToleranceKind;

/// One replication target: a plot-ready dataset (figure targets) and/or a
/// list of computed-vs-published checks (table targets).
struct TargetReport {
    std::string name;
    report::Table dataset;      ///< empty for pure check tables
    std::vector<Check> checks;
    std::vector<std::string> notes;

    report::Table primary_table() const {
        return dataset.columns.empty() ? report::checks_table(checks) : dataset;
    }

    std::size_t unexpected_deviations() const { return report::unexpected_deviations(checks); }
};

// ---------------------------------------------------------------------------
// Published reference values the harness replicates.
// ---------------------------------------------------------------------------

namespace published {

/// Long-term panel prices as stated in the source's income table; the
/// equilibrium computed from the same scenarios gives 1.8950 / 1.5990.
inline constexpr double kLongTermPriceIntermediate = 1.89;
inline constexpr double kLongTermPriceMaximum = 1.61;

inline constexpr double kGlobalProductionT = 4466574.00;
inline constexpr double kNewProductionMinT = 5285315.91;
inline constexpr double kNewProductionMaxT = 6168740.32;
inline constexpr double kIncreaseMinPct = 18.3;
inline constexpr double kIncreaseMaxPct = 38.1;
inline constexpr double kSupplyChangeMinPct = 6.5;
inline constexpr double kSupplyChangeMaxPct = 12.8;
inline constexpr double kPriceMinUsd = 1.89;
inline constexpr double kPriceMaxUsd = 1.60;
inline constexpr double kPriceChangeMinPct = 16.9;
inline constexpr double kPriceChangeMaxPct = 29.9;
inline constexpr double kJobChangeMinPct = 11.8;
inline constexpr double kJobChangeMaxPct = 25.3;

/// Win-win compensation volume quoted in the results narrative. No
/// documented parameterization reproduces it exactly; the nearest natural
/// reading (conversion term only, 66.8% production base) gives 1.193 Mt.
inline constexpr double kWinWinCompensationT = 1.27e6;
inline constexpr double kWinWinBaseShare = 0.668;

struct CountryTable {
    const char* key;
    const char* table_name;
    double baseline_t;
    double yield_no, yield_min, yield_max;         // kg/ha
    double gross_no, gross_min, gross_max;         // USD/ha at the base price
    double farm_opcost;                            // USD/ha
    double poll_cost_per_day;                      // USD/ha
    double ocpoll_60, ocpoll_30;                   // USD/ha
    double net_no, net_min_60, net_min_30, net_max_60, net_max_30;
    double national_no, national_min_60, national_min_30, national_max_60, national_max_30;
    double farmer_no, farmer_min_60, farmer_min_30, farmer_max_60, farmer_max_30;
    double addition_min, addition_max;             // tonnes at 25% adoption
};

inline const std::vector<CountryTable>& country_tables() {
    static const std::vector<CountryTable> tables = {
        {"ivory coast", "tableS1", 778887.64,
         273.19, 710.29, 901.53,
         622.87, 1619.47, 2055.48,
         34.57, 10.36, 621.35, 310.67,
         588.30, 963.55, 1274.23, 1399.56, 1710.24,
         1174111288.47, 1923015001.82, 2543046881.29, 2793188270.95, 3413220150.42,
         1174.11, 1923.02, 2543.05, 2793.19, 3413.22,
         311555.06, 759415.45},
        {"ghana", "tableS2", 534174.45,
         317.25, 824.85, 1046.93,
         723.33, 1880.66, 2386.99,
         137.57, 21.97, 1318.28, 659.14,
         585.76, 424.81, 1083.95, 931.14, 1590.28,
         887653967.76, 643745572.95, 1642600541.32, 1411033747.54, 2409888715.91,
         1109.57, 804.68, 2053.25, 1763.79, 3012.36,
         213669.78, 520820.09},
        {"indonesia", "tableS3", 733792.69,
         431.30, 1121.38, 1423.29,
         983.36, 2556.75, 3245.10,
         24.34, 9.10, 545.79, 272.89,
         959.02, 1986.62, 2259.51, 2674.97, 2947.87,
         1533738254.94, 3177139188.94, 3613570310.16, 4278004328.63, 4714435449.85,
         1095.53, 2269.39, 2581.12, 3055.72, 3367.45,
         293517.07, 421930.79},
    };
    return tables;
}

inline const CountryTable& country_table(const std::string& key) {
    for (const auto& t : country_tables()) {
        if (key == t.key) return t;
    }
    throw config_error("no published reference table for country '" + key + "'");
}

struct IncomeCell {
    double per_farmer_usd;
    double change_pct;
    /// Cell irreproducible from its panel's stated price (see tableS4 notes).
    bool divergent = false;
};

struct IncomePanel {
    // indexed [scenario: 0=min 1=max][duration: 0=30d 1=60d]
    IncomeCell cells[2][2];
};

struct CountryIncome {
    const char* key;
    double no_pollination_usd;
    IncomePanel short_term;
    IncomePanel long_term;
};

/// Per-farmer income cells of the published short-/long-term comparison.
/// The long-term maximum/30-day Indonesia cell equals the value computed at
/// the intermediate-scenario price (1.89) rather than the panel's stated
/// 1.61 and is marked divergent.
inline const std::vector<CountryIncome>& income_cells() {
    static const std::vector<CountryIncome> cells = {
        {"ivory coast", 1174.11,
         {{{{2543.05, 116.6}, {1923.02, 63.8}}, {{3413.22, 190.7}, {2793.19, 137.9}}}},
         {{{{1990.19, 69.5}, {1370.16, 16.7}}, {{2207.74, 88.0}, {1587.70, 35.2}}}}},
        {"ghana", 1109.57,
         {{{{2053.25, 85.0}, {804.68, -27.5}}, {{3012.36, 171.5}, {1763.79, 59.0}}}},
         {{{{1443.89, 30.1}, {195.32, -82.4}}, {{1683.67, 51.7}, {435.10, -60.8}}}}},
        {"indonesia", 1095.53,
         {{{{2581.12, 135.6}, {2269.39, 107.2}}, {{3367.45, 207.4}, {3055.72, 178.9}}}},
         {{{{2081.53, 90.0}, {1769.80, 61.5}}, {{2733.36, 149.5, true}, {1966.38, 79.5}}}}},
    };
    return cells;
}

struct BreakevenGridline {
    const char* key;
    double short_min, short_max; ///< days at the doubling goal, 10-day gridlines
    double long_min, long_max;
    /// The narrative's long-term maximum duration disagrees with the closed
    /// form for Indonesia (stated 20, computed 38.4 -> gridline 30).
    bool long_max_divergent;
};

inline const std::vector<BreakevenGridline>& breakeven_gridlines() {
    static const std::vector<BreakevenGridline> lines = {
        {"ivory coast", 30, 80, 10, 20, false},
        {"ghana", 20, 40, 10, 10, false},
        {"indonesia", 60, 140, 10, 20, true},
    };
    return lines;
}

inline constexpr double kShadeEquivalentIntermediate = 0.64;
inline constexpr double kShadeEquivalentMaximum = 0.72;

} // namespace published

// ---------------------------------------------------------------------------
// Target builders
// ---------------------------------------------------------------------------

namespace detail {

inline ScenarioSpec uniform_spec(double pym, double adoption) {
    ScenarioSpec spec;
    spec.pym = pym;
    spec.adoption_rate = adoption;
    return spec;
}

inline ScenarioSpec override_spec(const std::map<std::string, double>& overrides, double adoption) {
    ScenarioSpec spec;
    spec.pym = 1.0;
    spec.pym_overrides = overrides;
    spec.adoption_rate = adoption;
    return spec;
}

inline std::string title_case(const std::string& key) {
    std::string out = key;
    bool start = true;
    for (char& c : out) {
        if (start && c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
        start = (c == ' ');
    }
    return out;
}

inline std::string column_key(const std::string& key) {
    std::string out = key;
    for (char& c : out) {
        if (c == ' ') c = '_';
    }
    return out;
}

} // namespace detail

inline constexpr double kPublishedAdoptionRate = 0.25;

/// Production and market effects table: per-country additions, the global
/// shock, and the new equilibrium, for the intermediate scenario and both
/// readings of the maximum scenario.
inline TargetReport make_table1(const std::vector<CountryProfile>& profiles, const Config& config) {
    TargetReport rep;
    rep.name = "table1";
    const MarketParams& market = config.market;

    rep.checks.push_back({"Global bean production [t]", market.global_production_t,
                          published::kGlobalProductionT});

    struct ScenarioRow {
        std::string label;
        ScenarioSpec spec;
        std::optional<double> new_production;
        std::optional<double> increase_pct;
        std::optional<double> supply_pct;
        std::optional<double> price;
        std::optional<double> price_pct;
        std::optional<double> job_pct;
        bool additions_published;
        bool flag_divergence;
    };
    const std::vector<ScenarioRow> scenarios = {
        {"minimum", detail::uniform_spec(config.pym.intermediate, kPublishedAdoptionRate),
         published::kNewProductionMinT, published::kIncreaseMinPct, published::kSupplyChangeMinPct,
         published::kPriceMinUsd, published::kPriceChangeMinPct, published::kJobChangeMinPct,
         true, false},
        {"maximum (override)", detail::override_spec(config.pym.maximum_override, kPublishedAdoptionRate),
         published::kNewProductionMaxT, published::kIncreaseMaxPct, published::kSupplyChangeMaxPct,
         published::kPriceMaxUsd, published::kPriceChangeMaxPct, published::kJobChangeMaxPct,
         true, false},
        {"maximum (uniform)", detail::uniform_spec(config.pym.maximum, kPublishedAdoptionRate),
         std::nullopt, published::kIncreaseMaxPct, std::nullopt, std::nullopt, std::nullopt,
         std::nullopt, true, true},
    };

    for (const auto& row : scenarios) {
        double additions = 0.0;
        for (const auto& profile : profiles) {
            const double add =
                country_addition_t(profile, row.spec.pym_for(profile), row.spec.adoption_rate);
            additions += add;
            Check check{profile.name + " addition, " + row.label + " [t]", add, std::nullopt};
            if (row.additions_published) {
                const auto& pub = published::country_table(profile.key());
                check.published = row.label == "minimum" ? pub.addition_min : pub.addition_max;
                if (row.flag_divergence && !check.within_tolerance()) {
                    check.expected_divergence = true;
                    check.note = "published addition implies a country multiplier of 4.9";
                }
            }
            rep.checks.push_back(check);
        }
        const auto eq = equilibrium(profiles, row.spec, market);
        Check increase{"Increased global production, " + row.label + " [%]", eq.delta * 100.0,
                       row.increase_pct};
        if (row.flag_divergence) {
            increase.expected_divergence = true;
            increase.note = "uniform multiplier reading; published row needs the override";
        }
        rep.checks.push_back(increase);
        rep.checks.push_back({"New global production, " + row.label + " [t]",
                              market.global_production_t + additions, row.new_production});
        rep.checks.push_back({"Supply change, " + row.label + " [%]", (eq.gamma_s - 1.0) * 100.0,
                              row.supply_pct});
        rep.checks.push_back({"New price, " + row.label + " [USD/kg]", eq.new_price_usd_kg, row.price});
        rep.checks.push_back({"Price change, " + row.label + " [%]", (1.0 - eq.gamma_p) * 100.0,
                              row.price_pct});
        rep.checks.push_back({"Job change, " + row.label + " [%]", eq.lambda * 100.0, row.job_pct});
    }
    rep.notes.push_back("maximum scenario emitted twice: published additions for Ivory Coast and "
                        "Ghana are consistent with a 4.9 multiplier, not the stated uniform 3.3");
    return rep;
}

/// One country's yield, cost, and income table across the three scenarios.
inline TargetReport make_country_table(const std::vector<CountryProfile>& profiles,
                                       const Config& config, const std::string& country_key) {
    const CountryProfile& p = find_profile(profiles, country_key);
    const auto& pub = published::country_table(p.key());
    const double base_price = config.market.base_price_usd_kg;

    TargetReport rep;
    rep.name = pub.table_name;
    auto add = [&rep](const std::string& label, double computed, double published_value) {
        rep.checks.push_back({label, computed, published_value});
    };

    add("Baseline production [t]", baseline_production_t(p), pub.baseline_t);
    add("Dry yield, no pollination [kg/ha]", p.yield_dry_no_poll_kg_ha, pub.yield_no);
    add("Dry yield, minimum scenario [kg/ha]",
        apply_pym(p.yield_dry_no_poll_kg_ha, config.pym.intermediate), pub.yield_min);
    add("Dry yield, maximum scenario [kg/ha]",
        apply_pym(p.yield_dry_no_poll_kg_ha, config.pym.maximum), pub.yield_max);

    const IncomeStatement none = income_statement(p, 1.0, 0.0, base_price);
    const IncomeStatement min60 = income_statement(p, config.pym.intermediate, 60.0, base_price);
    const IncomeStatement min30 = income_statement(p, config.pym.intermediate, 30.0, base_price);
    const IncomeStatement max60 = income_statement(p, config.pym.maximum, 60.0, base_price);
    const IncomeStatement max30 = income_statement(p, config.pym.maximum, 30.0, base_price);

    add("Gross income, no pollination [USD/ha]", none.gross_usd_ha, pub.gross_no);
    add("Gross income, minimum scenario [USD/ha]", min60.gross_usd_ha, pub.gross_min);
    add("Gross income, maximum scenario [USD/ha]", max60.gross_usd_ha, pub.gross_max);
    add("Farm operational cost [USD/ha]", p.farm_opcost_usd_ha(), pub.farm_opcost);
    add("Pollination cost per day [USD/ha]", p.pollination_cost_per_day_ha(), pub.poll_cost_per_day);
    add("Pollination cost, 60 days [USD/ha]", min60.opcost_poll_usd_ha, pub.ocpoll_60);
    add("Pollination cost, 30 days [USD/ha]", min30.opcost_poll_usd_ha, pub.ocpoll_30);

    add("Net income, no pollination [USD/ha]", none.net_usd_ha, pub.net_no);
    add("Net income, minimum 60 days [USD/ha]", min60.net_usd_ha, pub.net_min_60);
    add("Net income, minimum 30 days [USD/ha]", min30.net_usd_ha, pub.net_min_30);
    add("Net income, maximum 60 days [USD/ha]", max60.net_usd_ha, pub.net_max_60);
    add("Net income, maximum 30 days [USD/ha]", max30.net_usd_ha, pub.net_max_30);

    add("National income, no pollination [USD]", none.national_usd, pub.national_no);
    add("National income, minimum 60 days [USD]", min60.national_usd, pub.national_min_60);
    add("National income, minimum 30 days [USD]", min30.national_usd, pub.national_min_30);
    add("National income, maximum 60 days [USD]", max60.national_usd, pub.national_max_60);
    add("National income, maximum 30 days [USD]", max30.national_usd, pub.national_max_30);

    add("Income per farmer, no pollination [USD]", none.per_farmer_usd, pub.farmer_no);
    add("Income per farmer, minimum 60 days [USD]", min60.per_farmer_usd, pub.farmer_min_60);
    add("Income per farmer, minimum 30 days [USD]", min30.per_farmer_usd, pub.farmer_min_30);
    add("Income per farmer, maximum 60 days [USD]", max60.per_farmer_usd, pub.farmer_max_60);
    add("Income per farmer, maximum 30 days [USD]", max30.per_farmer_usd, pub.farmer_max_30);

    rep.notes.push_back("baseline production row uses the arithmetic definition area x yield; the "
                        "source labels it as a share of global production");
    return rep;
}

/// Short- and long-term per-farmer income comparison. The long-term panel is
/// evaluated at the panel's stated prices (1.89 / 1.61); the equilibrium
/// prices computed from the same scenarios (1.8950 / 1.5990) are checked in
/// table1 instead.
inline TargetReport make_tableS4(const std::vector<CountryProfile>& profiles, const Config& config) {
    TargetReport rep;
    rep.name = "tableS4";
    const double base_price = config.market.base_price_usd_kg;

    struct Panel {
        const char* name;
        double price_min;
        double price_max;
        bool long_term;
    };
    const Panel panels[2] = {
        {"short", base_price, base_price, false},
        {"long", published::kLongTermPriceIntermediate, published::kLongTermPriceMaximum, true},
    };

    for (const auto& pub : published::income_cells()) {
        const CountryProfile& p = find_profile(profiles, pub.key);
        const IncomeStatement baseline = income_statement(p, 1.0, 0.0, base_price);
        rep.checks.push_back({detail::title_case(pub.key) + ", no pollination [USD/farmer]",
                              baseline.per_farmer_usd, pub.no_pollination_usd});

        for (const auto& panel : panels) {
            const auto& cells = panel.long_term ? pub.long_term : pub.short_term;
            const double pyms[2] = {config.pym.intermediate, config.pym.maximum};
            const double prices[2] = {panel.price_min, panel.price_max};
            const char* scenario_names[2] = {"minimum", "maximum"};
            const double durations[2] = {30.0, 60.0};
            for (int s = 0; s < 2; ++s) {
                for (int d = 0; d < 2; ++d) {
                    const auto& cell = cells.cells[s][d];
                    const IncomeStatement stmt = income_statement(p, pyms[s], durations[d], prices[s]);
                    const double change_pct = income_change_fraction(stmt, baseline) * 100.0;
                    std::string where = detail::title_case(pub.key) + ", " + panel.name + "-term " +
                                        scenario_names[s] + " " + report::format_value(durations[d]) +
                                        " days";
                    Check value{where + " [USD/farmer]", stmt.per_farmer_usd, cell.per_farmer_usd};
                    Check change{where + " [change %]", change_pct, cell.change_pct, 0.5,
                                 ToleranceKind::absolute};
                    if (cell.divergent) {
                        value.expected_divergence = true;
                        value.note = "published cell matches the intermediate-scenario price " +
                                     report::format_value(published::kLongTermPriceIntermediate) +
                                     ", not this panel's " + report::format_value(prices[s]);
                        change.expected_divergence = true;
                        change.note = value.note;
                    }
                    rep.checks.push_back(value);
                    rep.checks.push_back(change);
                }
            }
        }
    }
    rep.notes.push_back("long-term panel evaluated at the published panel prices 1.89 / 1.61; "
                        "the equilibrium computed from the scenarios gives 1.8950 / 1.5990");
    return rep;
}

/// Income-vs-pollination-days series plus break-even durations at the
/// doubling goal, against the published 10-day gridline readings.
inline TargetReport make_fig2(const std::vector<CountryProfile>& profiles, const Config& config,
                              double goal_multiplier = 2.0, double max_days = 150.0,
                              double day_step = 5.0) {
    TargetReport rep;
    rep.name = "fig2";
    const double base_price = config.market.base_price_usd_kg;
    rep.dataset.columns = {"country", "scenario",       "price_mode",     "price_usd_kg",
                           "days",    "per_farmer_usd", "goal_double_usd", "goal_10pct_usd"};

    struct Mode {
        const char* name;
        double price_min;
        double price_max;
    };
    const Mode modes[2] = {
        {"short_term", base_price, base_price},
        {"long_term", published::kLongTermPriceIntermediate, published::kLongTermPriceMaximum},
    };

    for (const auto& pub : published::breakeven_gridlines()) {
        const CountryProfile& p = find_profile(profiles, pub.key);
        const double baseline = income_statement(p, 1.0, 0.0, base_price).per_farmer_usd;
        for (const auto& mode : modes) {
            const bool long_term = std::string(mode.name) == "long_term";
            const double pyms[2] = {config.pym.intermediate, config.pym.maximum};
            const double prices[2] = {mode.price_min, mode.price_max};
            const char* scenario_names[2] = {"minimum", "maximum"};
            for (int s = 0; s < 2; ++s) {
                for (double days = 0.0; days <= max_days; days += day_step) {
                    const auto stmt = income_statement(p, pyms[s], days, prices[s]);
                    rep.dataset.rows.push_back({
                        p.name,
                        scenario_names[s],
                        mode.name,
                        report::format_value(prices[s]),
                        report::format_value(days),
                        report::format_value(stmt.per_farmer_usd),
                        report::format_value(2.0 * baseline),
                        report::format_value(1.1 * baseline),
                    });
                }
                const auto be = breakeven_days(p, pyms[s], prices[s], goal_multiplier, base_price);
                const double gridline = gridline_floor(be.exact_days, 10.0);
                const std::string where = p.name + ", " + mode.name + " " + scenario_names[s];
                rep.checks.push_back(
                    {where + " break-even [days]", be.exact_days, std::nullopt, 0.0,
                     ToleranceKind::absolute, false, be.goal_reachable ? "" : "goal unreachable"});
                Check grid_check{where + " gridline [days]", gridline, std::nullopt, 1e-9,
                                 ToleranceKind::absolute};
                grid_check.published = long_term ? (s == 0 ? pub.long_min : pub.long_max)
                                                 : (s == 0 ? pub.short_min : pub.short_max);
                if (long_term && s == 1 && pub.long_max_divergent) {
                    grid_check.expected_divergence = true;
                    grid_check.note = "narrative states " + report::format_value(*grid_check.published) +
                                      "; closed form gives " + report::format_value(be.exact_days) +
                                      " -> gridline " + report::format_value(gridline);
                }
                rep.checks.push_back(grid_check);
            }
        }
    }
    rep.notes.push_back("durations reported both exactly and at the figure's 10-day gridlines; "
                        "goals are multiples of the no-pollination income at the base price");
    return rep;
}

/// Win-win surface: required compensation across conversion share and
/// cumulative suitability loss, in both loss-composition modes.
inline TargetReport make_fig3(const std::vector<CountryProfile>& profiles, const Config& config) {
    TargetReport rep;
    rep.name = "fig3";
    const double base = config.winwin_base_share * config.market.global_production_t;
    const double penalty = config.winwin.agroforestry_yield_penalty;

    rep.dataset.columns = {"loss_composition",   "conversion_share", "cumulative_suitability_loss",
                           "yield_penalty",      "base_production_t", "required_compensation_t",
                           "adoption_intermediate", "adoption_maximum"};
    for (LossComposition mode : {LossComposition::compound, LossComposition::additive}) {
        for (int ci = 0; ci <= 10; ++ci) {
            for (int li = 0; li <= 10; ++li) {
                WinWinParams params;
                params.conversion_share = ci / 10.0;
                params.agroforestry_yield_penalty = penalty;
                params.suitability_decline_rate = li / 100.0; // cumulative loss via 1-year horizon
                params.horizon_years = 1.0;
                params.loss_composition = mode;
                const double required = required_compensation_t(base, params);
                const auto min_adopt = compensating_adoption(required, profiles, config.pym.intermediate);
                const auto max_adopt = compensating_adoption(required, profiles, config.pym.maximum);
                rep.dataset.rows.push_back({
                    to_string(mode),
                    report::format_value(params.conversion_share),
                    report::format_value(params.suitability_decline_rate),
                    report::format_value(penalty),
                    report::format_value(base),
                    report::format_value(required),
                    min_adopt.feasible ? report::format_value(min_adopt.adoption) : "infeasible",
                    max_adopt.feasible ? report::format_value(max_adopt.adoption) : "infeasible",
                });
            }
        }
    }

    // Nearest natural reading of the published compensation volume.
    WinWinParams conversion_only = config.winwin;
    conversion_only.suitability_decline_rate = 0.0;
    conversion_only.horizon_years = 0.0;
    const double nearest = required_compensation_t(base, conversion_only);
    Check quoted{"Required compensation, conversion term only [t]", nearest,
                 published::kWinWinCompensationT};
    quoted.expected_divergence = true;
    quoted.note = "published volume is not reproducible from any documented parameterization; "
                  "nearest natural reading shown";
    rep.checks.push_back(quoted);

    const auto adoption = compensating_adoption(nearest, profiles, config.pym.intermediate);
    rep.checks.push_back({"Compensating adoption, intermediate multiplier", adoption.adoption,
                          std::nullopt});
    ScenarioSpec compensated = detail::uniform_spec(config.pym.intermediate, adoption.adoption);
    double additions = 0.0;
    for (const auto& p : profiles) {
        additions += country_addition_t(p, compensated.pym_for(p), compensated.adoption_rate);
    }
    const double net_delta = (additions - nearest) / config.market.global_production_t;
    rep.checks.push_back({"Price ratio under compensated scenario", price_ratio(net_delta, config.market),
                          1.0, 1e-9, ToleranceKind::absolute, false,
                          "no net supply change, no price response"});
    return rep;
}

/// Shade-yield equivalence: the linear decline curve and the shade levels at
/// which multiplied yields match the unshaded baseline.
inline TargetReport make_figS1(const Config& config) {
    TargetReport rep;
    rep.name = "figS1";
    ShadeYieldModel model{1.0, config.shade_yield_slope};
    model.validate();

    rep.dataset.columns = {"shade_fraction", "relative_yield", "relative_yield_x_intermediate",
                           "relative_yield_x_maximum"};
    for (int i = 0; i <= 100; ++i) {
        const double shade = i / 100.0;
        const double rel = std::max(model.yield_at(shade), 0.0);
        rep.dataset.rows.push_back({
            report::format_value(shade),
            report::format_value(rel),
            report::format_value(rel * config.pym.intermediate),
            report::format_value(rel * config.pym.maximum),
        });
    }

    const auto mid = shade_equivalent(config.pym.intermediate, model);
    const auto max = shade_equivalent(config.pym.maximum, model);
    rep.checks.push_back({"Shade equivalent, intermediate multiplier", mid.shade_fraction,
                          published::kShadeEquivalentIntermediate, 0.005, ToleranceKind::absolute});
    rep.checks.push_back({"Shade equivalent, maximum multiplier", max.shade_fraction,
                          published::kShadeEquivalentMaximum, 0.005, ToleranceKind::absolute});
    if (mid.exceeds_physical_range || max.exceeds_physical_range) {
        rep.notes.push_back("an equivalence above 100% shade cannot be realized in the field");
    }
    return rep;
}

struct SweepRow {
    double adoption = 0.0;
    EquilibriumResult eq;
    std::vector<double> per_farmer_usd; ///< parallel to the profile list
};

/// Equilibrium and per-farmer income across an adoption grid. Incomes apply
/// the spec's multiplier and days at each grid point's price.
inline std::vector<SweepRow> sweep(const std::vector<CountryProfile>& profiles, ScenarioSpec spec,
                                   const MarketParams& market, const std::vector<double>& adoption_grid) {
    if (adoption_grid.empty()) throw config_error("adoption grid must not be empty");
    std::vector<SweepRow> rows;
    rows.reserve(adoption_grid.size());
    for (double adoption : adoption_grid) {
        if (adoption < 0.0 || adoption > 1.0) {
            throw config_error("adoption grid value " + report::format_value(adoption) +
                               " outside [0, 1]");
        }
        spec.adoption_rate = adoption;
        SweepRow row;
        row.adoption = adoption;
        row.eq = equilibrium(profiles, spec, market);
        const double price = scenario_price(profiles, spec, market);
        for (const auto& p : profiles) {
            row.per_farmer_usd.push_back(
                income_statement(p, spec.pym_for(p), spec.pollination_days, price).per_farmer_usd);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline report::Table sweep_table(const std::vector<CountryProfile>& profiles,
                                 const std::vector<SweepRow>& rows) {
    report::Table table;
    table.columns = {"adoption", "delta", "gamma_p", "gamma_s", "lambda", "price_usd_kg", "supply_t"};
    for (const auto& p : profiles) table.columns.push_back("per_farmer_" + detail::column_key(p.key()));
    for (const auto& row : rows) {
        std::vector<std::string> cells = {
            report::format_value(row.adoption),        report::format_value(row.eq.delta),
            report::format_value(row.eq.gamma_p),      report::format_value(row.eq.gamma_s),
            report::format_value(row.eq.lambda),       report::format_value(row.eq.new_price_usd_kg),
            report::format_value(row.eq.new_supply_t),
        };
        for (double v : row.per_farmer_usd) cells.push_back(report::format_value(v));
        table.rows.push_back(std::move(cells));
    }
    return table;
}

/// Adoption sweep of the intermediate scenario with long-term pricing.
inline TargetReport make_figS3(const std::vector<CountryProfile>& profiles, const Config& config,
                               const std::vector<double>& adoption_grid) {
    TargetReport rep;
    rep.name = "figS3";
    ScenarioSpec spec = detail::uniform_spec(config.pym.intermediate, 0.0);
    spec.pollination_days = 60;
    spec.price_mode = PriceMode::long_term;
    const auto rows = sweep(profiles, spec, config.market, adoption_grid);
    rep.dataset = sweep_table(profiles, rows);

    for (const auto& row : rows) {
        if (row.adoption == 0.0) {
            rep.checks.push_back({"delta at zero adoption", row.eq.delta, 0.0, 1e-12,
                                  ToleranceKind::absolute});
            rep.checks.push_back({"price at zero adoption [USD/kg]", row.eq.new_price_usd_kg,
                                  config.market.base_price_usd_kg, 1e-12, ToleranceKind::absolute});
        }
        if (row.adoption == kPublishedAdoptionRate) {
            rep.checks.push_back({"delta at published adoption [%]", row.eq.delta * 100.0,
                                  published::kIncreaseMinPct});
            rep.checks.push_back({"price at published adoption [USD/kg]", row.eq.new_price_usd_kg,
                                  published::kPriceMinUsd});
        }
    }
    return rep;
}

inline std::vector<double> default_adoption_grid(double step = 0.05) {
    std::vector<double> grid;
    for (int i = 0; step * i <= 1.0 + 1e-12; ++i) grid.push_back(std::min(step * i, 1.0));
    return grid;
}

inline const std::vector<std::string>& all_targets() {
    static const std::vector<std::string> targets = {
        "table1", "tableS1", "tableS2", "tableS3", "tableS4", "fig2", "fig3", "figS1", "figS3",
    };
    return targets;
}

inline TargetReport make_target(const std::string& name, const std::vector<CountryProfile>& profiles,
                                const Config& config,
                                const std::optional<std::vector<double>>& adoption_grid = {}) {
    if (name == "table1") return make_table1(profiles, config);
    if (name == "tableS1") return make_country_table(profiles, config, "ivory coast");
    if (name == "tableS2") return make_country_table(profiles, config, "ghana");
    if (name == "tableS3") return make_country_table(profiles, config, "indonesia");
    if (name == "tableS4") return make_tableS4(profiles, config);
    if (name == "fig2") return make_fig2(profiles, config);
    if (name == "fig3") return make_fig3(profiles, config);
    if (name == "figS1") return make_figS1(config);
    if (name == "figS3") {
        return make_figS3(profiles, config, adoption_grid ? *adoption_grid : default_adoption_grid());
    }
    std::string valid;
    for (const auto& t : all_targets()) valid += (valid.empty() ? "" : ", ") + t;
    throw config_error("unknown replication target '" + name + "' (valid: " + valid + ")");
}

} // namespace cocoasim::replicate
