#pragma once

#include <fstream>
#include <map>
#include <string>

#include <json.hpp>

#include "cocoasim/core.hpp"
#include "cocoasim/errors.hpp"
#include "cocoasim/winwin.hpp"
#include "cocoasim/yield.hpp"

namespace cocoasim {

/// Scenario multiplier constants: the measured intermediate multiplier, the
/// cross-study maximum, and the per-country override that reproduces the
/// published maximum-scenario additions.
struct PymConstants {
    double intermediate = 2.6;
    double maximum = 3.3;
    std::map<std::string, double> maximum_override = {
        {"ivory coast", 4.9},
        {"ghana", 4.9},
        {"indonesia", 3.3},
    };
};

struct Config {
    MarketParams market = bundled_market();
    double shade_yield_slope = kCalibratedShadeSlope;
    PymConstants pym;
    WinWinParams winwin = {
        .conversion_share = 1.0,
        .agroforestry_yield_penalty = 0.4,
        .suitability_decline_rate = 0.004,
        .horizon_years = 0.0,
        .loss_composition = LossComposition::compound,
    };
    /// Share of global production the profiled countries represent; the
    /// win-win base defaults to this share of global production.
    double winwin_base_share = 0.668;
};

/// Loads a JSON config; absent keys keep their defaults.
inline Config load_config(std::istream& in, Config config = {}) {
    nlohmann::json root;
    try {
        in >> root;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        if (root.contains("market")) {
            const auto& m = root["market"];
            if (m.contains("global_production_t")) config.market.global_production_t = m["global_production_t"];
            if (m.contains("base_price_usd_kg")) config.market.base_price_usd_kg = m["base_price_usd_kg"];
            if (m.contains("supply_elasticity")) config.market.supply_elasticity = m["supply_elasticity"];
            if (m.contains("demand_elasticity")) config.market.demand_elasticity = m["demand_elasticity"];
        }
        if (root.contains("shade_yield_slope")) config.shade_yield_slope = root["shade_yield_slope"];
        if (root.contains("pym")) {
            const auto& p = root["pym"];
            if (p.contains("intermediate")) config.pym.intermediate = p["intermediate"];
            if (p.contains("maximum")) config.pym.maximum = p["maximum"];
            if (p.contains("maximum_override")) {
                config.pym.maximum_override.clear();
                for (const auto& [country, value] : p["maximum_override"].items()) {
                    config.pym.maximum_override[normalize_country(country)] = value;
                }
            }
        }
        if (root.contains("winwin")) {
            const auto& w = root["winwin"];
            if (w.contains("conversion_share")) config.winwin.conversion_share = w["conversion_share"];
            if (w.contains("agroforestry_yield_penalty")) {
                config.winwin.agroforestry_yield_penalty = w["agroforestry_yield_penalty"];
            }
            if (w.contains("suitability_decline_rate")) {
                config.winwin.suitability_decline_rate = w["suitability_decline_rate"];
            }
            if (w.contains("horizon_years")) config.winwin.horizon_years = w["horizon_years"];
            if (w.contains("loss_composition")) {
                config.winwin.loss_composition =
                    parse_loss_composition(w["loss_composition"].get<std::string>());
            }
            if (w.contains("base_share")) config.winwin_base_share = w["base_share"];
        }
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("malformed config value: ") + e.what());
    }
    config.market.validate();
    if (config.shade_yield_slope <= 0.0) throw config_error("shade_yield_slope must be > 0");
    if (config.pym.intermediate < 1.0 || config.pym.maximum < 1.0) {
        throw config_error("pym constants must be >= 1");
    }
    for (const auto& [country, value] : config.pym.maximum_override) {
        if (value < 1.0) throw config_error("pym override for '" + country + "' must be >= 1");
    }
    config.winwin.validate();
    return config;
}

inline Config load_config_file(const std::string& path, Config config = {}) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    return load_config(in, config);
}

} // namespace cocoasim
