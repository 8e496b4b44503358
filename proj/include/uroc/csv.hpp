#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "uroc/error.hpp"

namespace uroc {

/// Numeric columns pulled out of a CSV file. Feature negation is applied
/// exactly once, here at ingestion. Rows whose referenced cells are empty,
/// non-numeric or non-finite are rejected and recorded by row number.
struct Dataset {
    std::string outcome_column;
    std::vector<std::string> feature_columns;
    std::vector<double> outcomes;
    std::vector<std::vector<double>> feature_values;  // parallel to feature_columns
    std::vector<std::string> negated;
    std::vector<std::size_t> skipped_rows;  // 1-based data row numbers

    std::size_t size() const noexcept { return outcomes.size(); }

    const std::vector<double>& feature(const std::string& name) const {
        for (std::size_t i = 0; i < feature_columns.size(); ++i)
            if (feature_columns[i] == name) return feature_values[i];
        throw Error(ErrorCode::MissingColumn, "no feature column named '" + name + "'");
    }
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

inline bool parse_finite(const std::string& raw, double& out) {
    const std::string s = trim(raw);
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace detail

inline Dataset load_csv(const std::string& path, const std::string& outcome_column,
                        const std::vector<std::string>& feature_columns,
                        const std::vector<std::string>& negate = {}) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::IoFailure, "cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorCode::EmptyFile, "'" + path + "' is empty");

    std::vector<std::string> header = detail::split_csv_line(line);
    for (std::string& h : header) h = detail::trim(h);

    auto column_index = [&](const std::string& name) -> std::size_t {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw Error(ErrorCode::MissingColumn, "no column named '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };

    Dataset d;
    d.outcome_column = outcome_column;
    const std::size_t outcome_idx = column_index(outcome_column);
    std::vector<std::size_t> feature_idx;
    for (const std::string& f : feature_columns) {
        if (std::find(d.feature_columns.begin(), d.feature_columns.end(), f) !=
            d.feature_columns.end())
            continue;
        feature_idx.push_back(column_index(f));
        d.feature_columns.push_back(f);
    }
    std::vector<bool> negate_flag(d.feature_columns.size(), false);
    for (const std::string& neg : negate) {
        auto it = std::find(d.feature_columns.begin(), d.feature_columns.end(), neg);
        if (it == d.feature_columns.end())
            throw Error(ErrorCode::MissingColumn,
                        "negated column '" + neg + "' is not among the features");
        negate_flag[static_cast<std::size_t>(it - d.feature_columns.begin())] = true;
        d.negated.push_back(neg);
    }
    d.feature_values.resize(d.feature_columns.size());

    std::size_t row = 0;
    bool any_data_line = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        any_data_line = true;
        ++row;
        const std::vector<std::string> fields = detail::split_csv_line(line);
        if (fields.size() != header.size())
            throw Error(ErrorCode::ParseError,
                        "row " + std::to_string(row) + " has " + std::to_string(fields.size()) +
                            " fields, header has " + std::to_string(header.size()),
                        static_cast<long long>(row));
        double outcome;
        bool ok = detail::parse_finite(fields[outcome_idx], outcome);
        std::vector<double> feats(feature_idx.size());
        for (std::size_t k = 0; ok && k < feature_idx.size(); ++k)
            ok = detail::parse_finite(fields[feature_idx[k]], feats[k]);
        if (!ok) {
            d.skipped_rows.push_back(row);
            continue;
        }
        d.outcomes.push_back(outcome);
        for (std::size_t k = 0; k < feats.size(); ++k)
            d.feature_values[k].push_back(negate_flag[k] ? -feats[k] : feats[k]);
    }
    if (!any_data_line)
        throw Error(ErrorCode::EmptyFile, "'" + path + "' has no data rows");
    return d;
}

}  // namespace uroc
