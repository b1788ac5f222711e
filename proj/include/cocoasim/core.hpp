#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cocoasim/csv.hpp"
#include "cocoasim/errors.hpp"

namespace cocoasim {

/// Lower-cased, whitespace-collapsed country key ("  Ivory  COAST " -> "ivory coast").
inline std::string normalize_country(const std::string& name) {
    std::string out;
    bool pending_space = false;
    for (char c : name) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
            if (!out.empty()) pending_space = true;
        } else {
            if (pending_space) out += ' ';
            pending_space = false;
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    return out;
}

/// Per-hectare input costs, USD/ha/yr.
struct InputCosts {
    double fertilizer = 0.0;
    double insecticide = 0.0;
    double herbicide = 0.0;
    double fungicide = 0.0;

    double total() const { return fertilizer + insecticide + herbicide + fungicide; }

    bool operator==(const InputCosts&) const = default;
};

/// One producer country's production, agronomic, and cost parameters.
struct CountryProfile {
    std::string name;
    double area_harvested_ha = 0.0;
    double yield_dry_no_poll_kg_ha = 0.0; ///< dry beans, kg/ha/yr, open pollination
    double trees_per_ha = 0.0;
    double farmer_count = 0.0;
    double smallholder_share = 0.0; ///< fraction of area farmed by smallholders, (0, 1]
    InputCosts input_costs;
    double farm_labour_cost = 0.0;          ///< USD/ha/yr
    double pollination_wage_per_day = 0.0;  ///< USD per worker-day
    double trees_per_worker_day = 0.0;      ///< trees one worker pollinates per day

    std::string key() const { return normalize_country(name); }

    /// Farm inputs plus farm labour, USD/ha/yr. Identical across scenarios.
    double farm_opcost_usd_ha() const { return input_costs.total() + farm_labour_cost; }

    /// Cost of one day of whole-farm manual pollination, USD/ha.
    double pollination_cost_per_day_ha() const {
        if (trees_per_worker_day <= 0.0) {
            throw domain_error(name + ": trees_per_worker_day must be positive");
        }
        return trees_per_ha / trees_per_worker_day * pollination_wage_per_day;
    }

    void validate() const {
        auto require = [this](bool ok, const std::string& what) {
            if (!ok) throw validation_error("profile '" + name + "': " + what);
        };
        require(!name.empty(), "name must not be empty");
        require(area_harvested_ha > 0.0, "area_harvested_ha must be > 0");
        require(yield_dry_no_poll_kg_ha >= 0.0, "yield_dry_no_poll_kg_ha must be >= 0");
        require(trees_per_ha >= 0.0, "trees_per_ha must be >= 0");
        require(farmer_count > 0.0, "farmer_count must be > 0");
        require(smallholder_share > 0.0 && smallholder_share <= 1.0,
                "smallholder_share must lie in (0, 1]");
        require(input_costs.fertilizer >= 0.0 && input_costs.insecticide >= 0.0 &&
                    input_costs.herbicide >= 0.0 && input_costs.fungicide >= 0.0,
                "input costs must be >= 0");
        require(farm_labour_cost >= 0.0, "farm_labour_cost must be >= 0");
        require(pollination_wage_per_day >= 0.0, "pollination_wage_per_day must be >= 0");
        require(trees_per_worker_day > 0.0, "trees_per_worker_day must be > 0");
    }

    bool operator==(const CountryProfile&) const = default;
};

/// Global baseline production and the constant market elasticities.
struct MarketParams {
    double global_production_t = 0.0;
    double base_price_usd_kg = 0.0;
    double supply_elasticity = 0.0; ///< > 0
    double demand_elasticity = 0.0; ///< < 0

    void validate() const {
        if (global_production_t <= 0.0) throw validation_error("global_production_t must be > 0");
        if (base_price_usd_kg <= 0.0) throw validation_error("base_price_usd_kg must be > 0");
        if (supply_elasticity <= 0.0) throw validation_error("supply_elasticity must be > 0");
        if (demand_elasticity >= 0.0) throw validation_error("demand_elasticity must be < 0");
    }
};

enum class PriceMode {
    short_term,    ///< baseline price, no market response
    long_term,     ///< equilibrium price of the scenario's own supply shock
    explicit_price ///< user-supplied price
};

inline std::string to_string(PriceMode mode) {
    switch (mode) {
        case PriceMode::short_term: return "short_term";
        case PriceMode::long_term: return "long_term";
        case PriceMode::explicit_price: return "explicit";
    }
    return "?";
}

inline PriceMode parse_price_mode(const std::string& text) {
    if (text == "short" || text == "short_term") return PriceMode::short_term;
    if (text == "long" || text == "long_term") return PriceMode::long_term;
    if (text == "explicit") return PriceMode::explicit_price;
    throw config_error("unknown price mode '" + text + "' (expected short, long, or explicit)");
}

/// A pollination scenario: yield multiplier(s), adoption, labour days, price mode.
struct ScenarioSpec {
    double pym = 1.0;                           ///< uniform multiplier, >= 1
    std::map<std::string, double> pym_overrides; ///< normalized country key -> multiplier
    double adoption_rate = 0.0;                 ///< fraction of farmers adopting, [0, 1]
    int pollination_days = 0;                   ///< days of manual pollination per year
    PriceMode price_mode = PriceMode::short_term;
    double explicit_price_usd_kg = 0.0;         ///< used when price_mode == explicit_price

    double pym_for(const std::string& country_key) const {
        auto it = pym_overrides.find(country_key);
        return it != pym_overrides.end() ? it->second : pym;
    }

    double pym_for(const CountryProfile& profile) const { return pym_for(profile.key()); }

    void validate() const {
        if (pym < 1.0) throw validation_error("pym must be >= 1");
        for (const auto& [key, value] : pym_overrides) {
            if (value < 1.0) throw validation_error("pym override for '" + key + "' must be >= 1");
        }
        if (adoption_rate < 0.0 || adoption_rate > 1.0) {
            throw validation_error("adoption_rate must lie in [0, 1]");
        }
        if (pollination_days < 0) throw validation_error("pollination_days must be >= 0");
        if (price_mode == PriceMode::explicit_price && explicit_price_usd_kg <= 0.0) {
            throw validation_error("explicit price mode requires a positive price");
        }
    }
};

/// National dry-bean production at the open-pollination yield, tonnes/yr.
inline double baseline_production_t(const CountryProfile& profile) {
    return profile.area_harvested_ha * profile.yield_dry_no_poll_kg_ha / 1000.0;
}

/// Smallholder hectares per farmer.
inline double farm_area_per_farmer_ha(const CountryProfile& profile) {
    if (profile.farmer_count <= 0.0) {
        throw domain_error(profile.name + ": farmer_count must be positive");
    }
    return profile.area_harvested_ha * profile.smallholder_share / profile.farmer_count;
}

namespace profile_columns {
inline const std::vector<std::string> names = {
    "name",
    "area_harvested_ha",
    "yield_dry_no_poll_kg_ha",
    "trees_per_ha",
    "farmer_count",
    "smallholder_share",
    "cost_fertilizer",
    "cost_insecticide",
    "cost_herbicide",
    "cost_fungicide",
    "cost_farm_labour",
    "pollination_wage_per_day",
    "trees_per_worker_day",
};
} // namespace profile_columns

inline std::vector<CountryProfile> parse_profiles(const csv::Table& table) {
    std::vector<std::size_t> cols;
    cols.reserve(profile_columns::names.size());
    for (const auto& name : profile_columns::names) cols.push_back(table.column(name));

    std::vector<CountryProfile> profiles;
    std::map<std::string, std::size_t> seen;
    std::size_t row_number = 1; // header is row 1
    for (const auto& row : table.rows) {
        ++row_number;
        if (row.size() < table.header.size()) {
            throw validation_error("row " + std::to_string(row_number) + ": expected " +
                                   std::to_string(table.header.size()) + " fields, got " +
                                   std::to_string(row.size()));
        }
        auto cell = [&](std::size_t i) -> const std::string& { return row[cols[i]]; };
        auto num = [&](std::size_t i) {
            return csv::parse_double(cell(i), row_number, profile_columns::names[i]);
        };
        CountryProfile p;
        p.name = cell(0);
        p.area_harvested_ha = num(1);
        p.yield_dry_no_poll_kg_ha = num(2);
        p.trees_per_ha = num(3);
        p.farmer_count = num(4);
        p.smallholder_share = num(5);
        p.input_costs.fertilizer = num(6);
        p.input_costs.insecticide = num(7);
        p.input_costs.herbicide = num(8);
        p.input_costs.fungicide = num(9);
        p.farm_labour_cost = num(10);
        p.pollination_wage_per_day = num(11);
        p.trees_per_worker_day = num(12);
        p.validate();
        auto [it, inserted] = seen.emplace(p.key(), row_number);
        if (!inserted) {
            throw validation_error("row " + std::to_string(row_number) + ": duplicate country '" +
                                   p.name + "' (first seen at row " + std::to_string(it->second) + ")");
        }
        profiles.push_back(std::move(p));
    }
    return profiles;
}

inline std::vector<CountryProfile> load_profiles(std::istream& in) {
    return parse_profiles(csv::read(in));
}

inline std::vector<CountryProfile> load_profiles(const std::string& path) {
    return parse_profiles(csv::read_file(path));
}

inline csv::Table profiles_to_table(const std::vector<CountryProfile>& profiles) {
    csv::Table table;
    table.header = profile_columns::names;
    for (const auto& p : profiles) {
        table.rows.push_back({
            p.name,
            csv::format_exact(p.area_harvested_ha),
            csv::format_exact(p.yield_dry_no_poll_kg_ha),
            csv::format_exact(p.trees_per_ha),
            csv::format_exact(p.farmer_count),
            csv::format_exact(p.smallholder_share),
            csv::format_exact(p.input_costs.fertilizer),
            csv::format_exact(p.input_costs.insecticide),
            csv::format_exact(p.input_costs.herbicide),
            csv::format_exact(p.input_costs.fungicide),
            csv::format_exact(p.farm_labour_cost),
            csv::format_exact(p.pollination_wage_per_day),
            csv::format_exact(p.trees_per_worker_day),
        });
    }
    return table;
}

inline void save_profiles(std::ostream& out, const std::vector<CountryProfile>& profiles) {
    csv::write(out, profiles_to_table(profiles));
}

// Bundled dataset: the three major producer countries, 2016 values.
//
// Wages per worker-day are stored at the precision implied by the published
// per-hectare pollination costs; the commonly quoted 2-dp values are
// 0.82 / 1.36 / 0.95.
inline std::vector<CountryProfile> bundled_profiles() {
    std::vector<CountryProfile> profiles(3);

    CountryProfile& ci = profiles[0];
    ci.name = "Ivory Coast";
    ci.area_harvested_ha = 2851084.0;
    ci.yield_dry_no_poll_kg_ha = 273.19;
    ci.trees_per_ha = 975.0;
    ci.farmer_count = 1000000.0;
    ci.smallholder_share = 0.70;
    ci.input_costs = {7.50, 10.72, 3.80, 0.60};
    ci.farm_labour_cost = 11.95;
    ci.pollination_wage_per_day = 0.8189074359; // 621.35 / 60 / (975 / 77.1)
    ci.trees_per_worker_day = 77.10;

    CountryProfile& gh = profiles[1];
    gh.name = "Ghana";
    gh.area_harvested_ha = 1683765.0;
    gh.yield_dry_no_poll_kg_ha = 317.25;
    gh.trees_per_ha = 1244.0;
    gh.farmer_count = 800000.0;
    gh.smallholder_share = 0.90;
    gh.input_costs = {10.59, 18.79, 8.86, 2.65};
    gh.farm_labour_cost = 96.68;
    gh.pollination_wage_per_day = 1.3617281350; // 1318.28 / 60 / (1244 / 77.1)
    gh.trees_per_worker_day = 77.10;

    CountryProfile& id = profiles[2];
    id.name = "Indonesia";
    id.area_harvested_ha = 1701351.0;
    id.yield_dry_no_poll_kg_ha = 431.30;
    id.trees_per_ha = 738.25;
    // Not published directly; derived by inverting national income / income per farmer.
    id.farmer_count = 1400000.0;
    id.smallholder_share = 0.94;
    id.input_costs = {6.18, 6.13, 5.65, 2.02};
    id.farm_labour_cost = 4.36;
    id.pollination_wage_per_day = 0.9500035896; // 545.79 / 60 / (738.25 / 77.1)
    id.trees_per_worker_day = 77.10;

    for (const auto& p : profiles) p.validate();
    return profiles;
}

/// 2016 world production and the long-run elasticities of the global market.
inline MarketParams bundled_market() {
    MarketParams market;
    market.global_production_t = 4466574.0;
    market.base_price_usd_kg = 2.28; // mean world price 2001-2017
    market.supply_elasticity = 0.57;
    market.demand_elasticity = -0.34;
    return market;
}

inline const CountryProfile& find_profile(const std::vector<CountryProfile>& profiles,
                                          const std::string& country) {
    const std::string key = normalize_country(country);
    for (const auto& p : profiles) {
        if (p.key() == key) return p;
    }
    throw config_error("unknown country '" + country + "'");
}

} // namespace cocoasim
