#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cocoasim/errors.hpp"

namespace cocoasim::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return i;
        }
        throw validation_error("missing required column '" + name + "'");
    }
};

namespace detail {

inline std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

inline std::string quote_if_needed(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

} // namespace detail

inline Table read(std::istream& in) {
    Table table;
    std::string line;
    if (!std::getline(in, line)) {
        throw validation_error("empty file: expected a header row");
    }
    table.header = detail::split_line(line);
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        table.rows.push_back(detail::split_line(line));
    }
    return table;
}

inline Table read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open file: " + path);
    return read(in);
}

inline void write(std::ostream& out, const Table& table) {
    auto write_row = [&out](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << detail::quote_if_needed(row[i]);
        }
        out << '\n';
    };
    write_row(table.header);
    for (const auto& row : table.rows) write_row(row);
}

/// Shortest decimal form that round-trips the exact double value.
inline std::string format_exact(double value) {
    char buf[32];
    if (value == static_cast<long long>(value) && std::fabs(value) < 1e15) {
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(value));
        return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    double check = 0.0;
    std::sscanf(buf, "%lg", &check);
    if (check == value) {
        for (int prec = 1; prec < 17; ++prec) {
            char shorter[32];
            std::snprintf(shorter, sizeof(shorter), "%.*g", prec, value);
            std::sscanf(shorter, "%lg", &check);
            if (check == value) return shorter;
        }
    }
    return buf;
}

inline std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

inline double parse_double(const std::string& cell, std::size_t row, const std::string& column) {
    if (cell.empty()) {
        throw validation_error("row " + std::to_string(row) + ", column '" + column + "': empty value");
    }
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(cell, &pos);
    } catch (const std::exception&) {
        throw validation_error("row " + std::to_string(row) + ", column '" + column +
                               "': not a number: '" + cell + "'");
    }
    if (pos != cell.size()) {
        throw validation_error("row " + std::to_string(row) + ", column '" + column +
                               "': trailing characters in '" + cell + "'");
    }
    return value;
}

inline long long parse_count(const std::string& cell, std::size_t row, const std::string& column) {
    double value = parse_double(cell, row, column);
    long long count = static_cast<long long>(value);
    if (static_cast<double>(count) != value) {
        throw validation_error("row " + std::to_string(row) + ", column '" + column +
                               "': expected an integer, got '" + cell + "'");
    }
    return count;
}

} // namespace cocoasim::csv
