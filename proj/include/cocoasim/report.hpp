#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cocoasim/csv.hpp"

namespace cocoasim::report {

inline std::string format_value(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

/// A named table rendered as CSV or aligned plain text.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    csv::Table to_csv() const { return {columns, rows}; }

    void render_text(std::ostream& out) const {
        std::vector<std::size_t> widths(columns.size(), 0);
        for (std::size_t i = 0; i < columns.size(); ++i) widths[i] = columns[i].size();
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size() && i < widths.size(); ++i) {
                widths[i] = std::max(widths[i], row[i].size());
            }
        }
        auto emit = [&](const std::vector<std::string>& row) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out << row[i];
                if (i + 1 < row.size()) {
                    out << std::string(widths[i] - row[i].size() + 2, ' ');
                }
            }
            out << '\n';
        };
        emit(columns);
        std::size_t total = 0;
        for (std::size_t w : widths) total += w + 2;
        out << std::string(total > 2 ? total - 2 : total, '-') << '\n';
        for (const auto& row : rows) emit(row);
    }
};

enum class ToleranceKind {
    relative, ///< |computed - published| / |published|
    absolute  ///< |computed - published|, in the value's own units
};

/// One computed value compared against its published counterpart.
struct Check {
    std::string label;
    double computed = 0.0;
    std::optional<double> published;
    double tolerance = 0.005;
    ToleranceKind kind = ToleranceKind::relative;
    /// The published value is known to be irreproducible from its stated
    /// inputs; the mismatch is reported rather than counted as a failure.
    bool expected_divergence = false;
    std::string note;

    Check() = default;
    Check(std::string label_, double computed_, std::optional<double> published_,
          double tolerance_ = 0.005, ToleranceKind kind_ = ToleranceKind::relative,
          bool expected_divergence_ = false, std::string note_ = {})
        : label(std::move(label_)), computed(computed_), published(published_),
          tolerance(tolerance_), kind(kind_), expected_divergence(expected_divergence_),
          note(std::move(note_)) {}

    std::optional<double> deviation() const {
        if (!published) return std::nullopt;
        const double diff = std::fabs(computed - *published);
        if (kind == ToleranceKind::absolute) return diff;
        if (*published == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        return diff / std::fabs(*published);
    }

    bool within_tolerance() const {
        auto dev = deviation();
        return !dev || *dev <= tolerance;
    }

    std::string status() const {
        if (!published) return "computed";
        if (within_tolerance()) return "ok";
        return expected_divergence ? "flagged" : "DEVIATION";
    }
};

inline Table checks_table(const std::vector<Check>& checks) {
    Table table;
    table.columns = {"metric", "computed", "published", "deviation", "status", "note"};
    for (const auto& c : checks) {
        std::string published = c.published ? format_value(*c.published) : "";
        std::string deviation;
        if (auto dev = c.deviation()) {
            deviation = c.kind == ToleranceKind::relative
                            ? csv::format_fixed(*dev * 100.0, 4) + "%"
                            : format_value(*dev);
        }
        table.rows.push_back({c.label, format_value(c.computed), published, deviation, c.status(), c.note});
    }
    return table;
}

/// Checks that failed tolerance without being documented divergences.
inline std::size_t unexpected_deviations(const std::vector<Check>& checks) {
    std::size_t count = 0;
    for (const auto& c : checks) {
        if (c.published && !c.within_tolerance() && !c.expected_divergence) ++count;
    }
    return count;
}

} // namespace cocoasim::report
