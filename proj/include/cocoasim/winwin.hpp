#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "cocoasim/core.hpp"
#include "cocoasim/errors.hpp"
#include "cocoasim/yield.hpp"

namespace cocoasim {

/// How conversion losses and suitability decline combine.
enum class LossComposition {
    compound, ///< losses interact multiplicatively
    additive  ///< losses contribute independently
};

inline std::string to_string(LossComposition mode) {
    return mode == LossComposition::compound ? "compound" : "additive";
}

inline LossComposition parse_loss_composition(const std::string& text) {
    if (text == "compound") return LossComposition::compound;
    if (text == "additive") return LossComposition::additive;
    throw config_error("unknown loss composition '" + text + "' (expected compound or additive)");
}

/// Production losses the win-win scenario compensates: agroforestry
/// conversion and declining habitat suitability, with zero encroachment
/// into new habitats.
struct WinWinParams {
    double conversion_share = 0.0;          ///< fraction of production area converted
    double agroforestry_yield_penalty = 0.0; ///< fractional yield loss upon conversion
    double suitability_decline_rate = 0.0;  ///< fraction per year
    double horizon_years = 0.0;
    LossComposition loss_composition = LossComposition::compound;
    static constexpr double encroachment = 0.0; ///< third assumption of the scenario

    void validate() const {
        auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
        if (!in_unit(conversion_share)) throw validation_error("conversion_share must lie in [0, 1]");
        if (!in_unit(agroforestry_yield_penalty)) {
            throw validation_error("agroforestry_yield_penalty must lie in [0, 1]");
        }
        if (!in_unit(suitability_decline_rate)) {
            throw validation_error("suitability_decline_rate must lie in [0, 1]");
        }
        if (horizon_years < 0.0) throw validation_error("horizon_years must be >= 0");
    }
};

/// Production shortfall to compensate, tonnes.
///
/// compound: base * (1 - (1 - penalty * conversion) * (1 - rate)^horizon)
/// additive: base * (penalty * conversion + 1 - (1 - rate)^horizon)
inline double required_compensation_t(double base_production_t, const WinWinParams& params) {
    params.validate();
    if (base_production_t < 0.0) throw domain_error("base production must be >= 0");
    const double conversion_loss = params.agroforestry_yield_penalty * params.conversion_share;
    const double suitability_kept = std::pow(1.0 - params.suitability_decline_rate, params.horizon_years);
    switch (params.loss_composition) {
        case LossComposition::compound:
            return base_production_t * (1.0 - (1.0 - conversion_loss) * suitability_kept);
        case LossComposition::additive:
            return base_production_t * (conversion_loss + 1.0 - suitability_kept);
    }
    throw config_error("unhandled loss composition");
}

struct CompensationAdoption {
    double adoption = 0.0;    ///< fraction of farmers needed; meaningful when feasible
    bool feasible = true;     ///< false when even full adoption falls short
    double capacity_t = 0.0;  ///< additional production at full adoption
    double shortfall_t = 0.0; ///< uncompensated tonnes when infeasible
};

/// Adoption rate at which manual-pollination additions exactly offset the
/// required compensation, leaving the global supply shock at zero.
inline CompensationAdoption compensating_adoption(double required_t,
                                                  const std::vector<CountryProfile>& profiles,
                                                  double pym) {
    if (pym <= 1.0) throw domain_error("compensation requires a multiplier > 1");
    if (required_t < 0.0) throw domain_error("required compensation must be >= 0");
    CompensationAdoption result;
    for (const auto& profile : profiles) {
        result.capacity_t += baseline_production_t(profile) * (pym - 1.0);
    }
    if (result.capacity_t <= 0.0) throw domain_error("profiles have no production capacity");
    result.adoption = required_t / result.capacity_t;
    result.feasible = result.adoption <= 1.0 + 1e-12;
    if (!result.feasible) {
        result.shortfall_t = required_t - result.capacity_t;
    }
    return result;
}

} // namespace cocoasim
