#pragma once

#include "cocoasim/core.hpp"
#include "cocoasim/errors.hpp"

namespace cocoasim {

/// Linear shade-yield decline: yield(s) = y0 * (1 - slope * s) for shade
/// fraction s in [0, min(1, 1/slope)].
struct ShadeYieldModel {
    double y0_kg_ha = 1.0; ///< yield at 0% shade
    double slope = 1.0;    ///< fractional yield loss per unit shade fraction

    void validate() const {
        if (y0_kg_ha <= 0.0) throw validation_error("shade model: y0_kg_ha must be > 0");
        if (slope <= 0.0) throw validation_error("shade model: slope must be > 0");
    }

    double yield_at(double shade) const { return y0_kg_ha * (1.0 - slope * shade); }
};

/// Slope at which a 2.6x multiplier is fully offset by 64% shade cover.
inline constexpr double kCalibratedShadeSlope = (1.0 - 1.0 / 2.6) / 0.64;

/// Dry yield under a pollination-yield multiplier, kg/ha.
inline double apply_pym(double yield_dry_kg_ha, double pym) {
    if (yield_dry_kg_ha < 0.0) throw domain_error("yield must be >= 0");
    if (pym < 1.0) throw domain_error("pollination-yield multiplier must be >= 1");
    return yield_dry_kg_ha * pym;
}

/// Extra national production from adopting manual pollination, tonnes/yr.
inline double country_addition_t(const CountryProfile& profile, double pym, double adoption) {
    if (pym < 1.0) throw domain_error("pollination-yield multiplier must be >= 1");
    if (adoption < 0.0 || adoption > 1.0) throw domain_error("adoption rate must lie in [0, 1]");
    return baseline_production_t(profile) * (pym - 1.0) * adoption;
}

struct ShadeEquivalence {
    double shade_fraction = 0.0;       ///< s* solving pym * yield(s*) = yield(0)
    bool exceeds_physical_range = false; ///< s* > 1: no physical shade level compensates
};

/// Shade level at which a multiplied yield equals the unshaded baseline:
/// s* = (1 - 1/pym) / slope. Values above 1 are reported, not clamped.
inline ShadeEquivalence shade_equivalent(double pym, const ShadeYieldModel& model) {
    if (pym < 1.0) throw domain_error("pollination-yield multiplier must be >= 1");
    if (model.slope <= 0.0) throw domain_error("shade model slope must be > 0");
    ShadeEquivalence result;
    result.shade_fraction = (1.0 - 1.0 / pym) / model.slope;
    result.exceeds_physical_range = result.shade_fraction > 1.0;
    return result;
}

} // namespace cocoasim
