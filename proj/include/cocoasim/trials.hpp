#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cocoasim/csv.hpp"
#include "cocoasim/errors.hpp"

namespace cocoasim {

enum class Treatment { hand_pollinated, open_control };

inline std::string to_string(Treatment t) {
    return t == Treatment::hand_pollinated ? "hand_pollinated" : "open_control";
}

inline Treatment parse_treatment(const std::string& text) {
    if (text == "hand_pollinated") return Treatment::hand_pollinated;
    if (text == "open_control") return Treatment::open_control;
    throw validation_error("unknown treatment '" + text +
                           "' (expected hand_pollinated or open_control)");
}

/// One tree-season of a hand-pollination trial. Fruit set is the count of
/// flowers still on the tree 48 hours after pollination; wilt, pest, and
/// disease losses partition the set fruit together with the harvest.
struct TrialRecord {
    std::string farm_id;
    std::string tree_id;
    Treatment treatment = Treatment::open_control;
    double assigned_rate = 0.0; ///< fraction of open flowers hand pollinated
    long long flowers_open = 0;
    long long flowers_pollinated = 0;
    long long fruit_set_48h = 0;
    long long wilt_losses = 0;    ///< cherelle wilt
    long long pest_losses = 0;    ///< cocoa mosquito
    long long disease_losses = 0; ///< black pod
    long long fruits_harvested = 0;
    double dry_bean_kg = 0.0; ///< final dry-bean yield per tree

    void validate() const {
        auto fail = [this](const std::string& what) {
            throw validation_error("trial " + farm_id + "/" + tree_id + ": " + what);
        };
        if (assigned_rate < 0.0 || assigned_rate > 1.0) fail("assigned_rate must lie in [0, 1]");
        if (flowers_open < 0 || flowers_pollinated < 0 || fruit_set_48h < 0 || wilt_losses < 0 ||
            pest_losses < 0 || disease_losses < 0 || fruits_harvested < 0) {
            fail("counts must be >= 0");
        }
        if (flowers_pollinated > flowers_open) fail("flowers_pollinated exceeds flowers_open");
        if (treatment == Treatment::hand_pollinated) {
            if (fruit_set_48h > flowers_pollinated) fail("fruit_set_48h exceeds flowers_pollinated");
        } else if (fruit_set_48h > flowers_open) {
            fail("fruit_set_48h exceeds flowers_open");
        }
        if (wilt_losses + pest_losses + disease_losses + fruits_harvested > fruit_set_48h) {
            fail("losses plus harvest exceed fruit_set_48h");
        }
        if (dry_bean_kg < 0.0) fail("dry_bean_kg must be >= 0");
        if (fruits_harvested == 0 && dry_bean_kg != 0.0) {
            fail("dry_bean_kg must be 0 when no fruit was harvested");
        }
    }

    bool operator==(const TrialRecord&) const = default;
};

namespace trial_columns {
inline const std::vector<std::string> names = {
    "farm_id",       "tree_id",      "treatment",     "assigned_rate",
    "flowers_open",  "flowers_pollinated", "fruit_set_48h", "wilt_losses",
    "pest_losses",   "disease_losses",     "fruits_harvested", "dry_bean_kg",
};
} // namespace trial_columns

struct IngestIssue {
    std::size_t row = 0; ///< 1-based file row (header is row 1)
    std::string message;
};

/// Records that passed validation plus the itemized failures.
struct TrialIngestResult {
    std::vector<TrialRecord> records;
    std::vector<IngestIssue> issues;

    bool ok() const { return issues.empty(); }

    std::string issue_summary() const {
        std::string out;
        for (const auto& issue : issues) {
            out += "row " + std::to_string(issue.row) + ": " + issue.message + "\n";
        }
        return out;
    }
};

inline TrialIngestResult parse_trials(const csv::Table& table) {
    std::vector<std::size_t> cols;
    for (const auto& name : trial_columns::names) cols.push_back(table.column(name));
    if (table.rows.empty()) throw validation_error("trial file contains no records");

    TrialIngestResult result;
    std::size_t row_number = 1;
    for (const auto& row : table.rows) {
        ++row_number;
        try {
            if (row.size() < table.header.size()) {
                throw validation_error("expected " + std::to_string(table.header.size()) +
                                       " fields, got " + std::to_string(row.size()));
            }
            auto cell = [&](std::size_t i) -> const std::string& { return row[cols[i]]; };
            TrialRecord r;
            r.farm_id = cell(0);
            r.tree_id = cell(1);
            r.treatment = parse_treatment(cell(2));
            r.assigned_rate = csv::parse_double(cell(3), row_number, trial_columns::names[3]);
            r.flowers_open = csv::parse_count(cell(4), row_number, trial_columns::names[4]);
            r.flowers_pollinated = csv::parse_count(cell(5), row_number, trial_columns::names[5]);
            r.fruit_set_48h = csv::parse_count(cell(6), row_number, trial_columns::names[6]);
            r.wilt_losses = csv::parse_count(cell(7), row_number, trial_columns::names[7]);
            r.pest_losses = csv::parse_count(cell(8), row_number, trial_columns::names[8]);
            r.disease_losses = csv::parse_count(cell(9), row_number, trial_columns::names[9]);
            r.fruits_harvested = csv::parse_count(cell(10), row_number, trial_columns::names[10]);
            r.dry_bean_kg = csv::parse_double(cell(11), row_number, trial_columns::names[11]);
            r.validate();
            result.records.push_back(std::move(r));
        } catch (const validation_error& e) {
            result.issues.push_back({row_number, e.what()});
        }
    }
    return result;
}

inline TrialIngestResult ingest_trials(std::istream& in) { return parse_trials(csv::read(in)); }

inline TrialIngestResult ingest_trials(const std::string& path) {
    return parse_trials(csv::read_file(path));
}

inline csv::Table trials_to_table(const std::vector<TrialRecord>& records) {
    csv::Table table;
    table.header = trial_columns::names;
    for (const auto& r : records) {
        table.rows.push_back({
            r.farm_id,
            r.tree_id,
            to_string(r.treatment),
            csv::format_exact(r.assigned_rate),
            std::to_string(r.flowers_open),
            std::to_string(r.flowers_pollinated),
            std::to_string(r.fruit_set_48h),
            std::to_string(r.wilt_losses),
            std::to_string(r.pest_losses),
            std::to_string(r.disease_losses),
            std::to_string(r.fruits_harvested),
            csv::format_exact(r.dry_bean_kg),
        });
    }
    return table;
}

inline void save_trials(std::ostream& out, const std::vector<TrialRecord>& records) {
    csv::write(out, trials_to_table(records));
}

/// Pollination-yield multiplier estimate: ratio of group mean dry yields.
struct PymEstimate {
    double multiplier = 0.0; ///< mean(treated) / mean(control)
    std::size_t treated_n = 0;
    std::size_t control_n = 0;
    double treated_mean_kg = 0.0;
    double control_mean_kg = 0.0;
    double treated_sd_kg = 0.0;
    double control_sd_kg = 0.0;
    std::map<std::string, double> per_farm; ///< stratified ratios where both groups present
};

namespace detail {
struct GroupStats {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;
};

inline GroupStats group_stats(const std::vector<double>& values) {
    GroupStats stats;
    stats.n = values.size();
    if (stats.n == 0) return stats;
    double sum = 0.0;
    for (double v : values) sum += v;
    stats.mean = sum / static_cast<double>(stats.n);
    if (stats.n > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
        stats.sd = std::sqrt(ss / static_cast<double>(stats.n - 1));
    }
    return stats;
}
} // namespace detail

inline PymEstimate estimate_pym(const std::vector<TrialRecord>& records) {
    std::vector<double> treated, control;
    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> by_farm;
    for (const auto& r : records) {
        if (r.treatment == Treatment::hand_pollinated) {
            treated.push_back(r.dry_bean_kg);
            by_farm[r.farm_id].first.push_back(r.dry_bean_kg);
        } else {
            control.push_back(r.dry_bean_kg);
            by_farm[r.farm_id].second.push_back(r.dry_bean_kg);
        }
    }
    if (treated.empty() || control.empty()) {
        throw validation_error("multiplier estimation needs at least one hand_pollinated "
                               "and one open_control record");
    }
    const auto treated_stats = detail::group_stats(treated);
    const auto control_stats = detail::group_stats(control);
    if (control_stats.mean == 0.0) {
        throw domain_error("control group mean dry yield is zero; multiplier undefined");
    }
    PymEstimate estimate;
    estimate.multiplier = treated_stats.mean / control_stats.mean;
    estimate.treated_n = treated_stats.n;
    estimate.control_n = control_stats.n;
    estimate.treated_mean_kg = treated_stats.mean;
    estimate.control_mean_kg = control_stats.mean;
    estimate.treated_sd_kg = treated_stats.sd;
    estimate.control_sd_kg = control_stats.sd;
    for (const auto& [farm, groups] : by_farm) {
        const auto t = detail::group_stats(groups.first);
        const auto c = detail::group_stats(groups.second);
        if (t.n > 0 && c.n > 0 && c.mean != 0.0) {
            estimate.per_farm[farm] = t.mean / c.mean;
        }
    }
    return estimate;
}

/// Open-pollination fruit set is typically 5-10% of flowers.
inline constexpr double kNaturalSetBandLow = 0.05;
inline constexpr double kNaturalSetBandHigh = 0.10;

/// Aggregate fruit-set, loss, and harvest rates. Rates with a zero
/// denominator are left unset rather than raised as errors.
struct TrialRates {
    std::optional<double> fruit_set_rate;   ///< set / pollinated, hand-pollinated trees
    std::optional<double> wilt_share;       ///< of set fruit
    std::optional<double> pest_share;
    std::optional<double> disease_share;
    std::optional<double> harvest_rate;     ///< harvested / set
    std::optional<double> natural_set_rate; ///< set / open flowers, control trees
    bool natural_rate_in_reference_band = false; ///< natural rate within [0.05, 0.10]
};

inline TrialRates trial_rates(const std::vector<TrialRecord>& records) {
    long long pollinated = 0, set = 0, wilt = 0, pest = 0, disease = 0, harvested = 0;
    long long control_open = 0, control_set = 0;
    bool any_hand = false;
    for (const auto& r : records) {
        if (r.treatment == Treatment::hand_pollinated) {
            any_hand = true;
            pollinated += r.flowers_pollinated;
            set += r.fruit_set_48h;
            wilt += r.wilt_losses;
            pest += r.pest_losses;
            disease += r.disease_losses;
            harvested += r.fruits_harvested;
        } else {
            control_open += r.flowers_open;
            control_set += r.fruit_set_48h;
        }
    }
    if (!any_hand) throw validation_error("rate summary needs at least one hand_pollinated record");

    TrialRates rates;
    auto ratio = [](long long num, long long den) -> std::optional<double> {
        if (den == 0) return std::nullopt;
        return static_cast<double>(num) / static_cast<double>(den);
    };
    rates.fruit_set_rate = ratio(set, pollinated);
    rates.wilt_share = ratio(wilt, set);
    rates.pest_share = ratio(pest, set);
    rates.disease_share = ratio(disease, set);
    rates.harvest_rate = ratio(harvested, set);
    rates.natural_set_rate = ratio(control_set, control_open);
    rates.natural_rate_in_reference_band =
        rates.natural_set_rate && *rates.natural_set_rate >= kNaturalSetBandLow &&
        *rates.natural_set_rate <= kNaturalSetBandHigh;
    return rates;
}

} // namespace cocoasim
