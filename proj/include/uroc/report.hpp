#pragma once

#include <algorithm>
#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "uroc/assoc.hpp"
#include "uroc/cpa.hpp"
#include "uroc/csv.hpp"
#include "uroc/detail/format.hpp"
#include "uroc/movie.hpp"
#include "uroc/roc.hpp"

namespace uroc {

enum class Metric { cpa, c_index, auc, somers_d, spearman_rho, spearman_rho_mid };

inline const char* metric_key(Metric m) noexcept {
    switch (m) {
        case Metric::cpa: return "cpa";
        case Metric::c_index: return "c_index";
        case Metric::auc: return "auc";
        case Metric::somers_d: return "somers_d";
        case Metric::spearman_rho: return "spearman_rho";
        case Metric::spearman_rho_mid: return "spearman_rho_mid";
    }
    return "unknown";
}

inline std::vector<Metric> default_metrics() {
    return {Metric::cpa, Metric::c_index, Metric::auc, Metric::somers_d, Metric::spearman_rho,
            Metric::spearman_rho_mid};
}

struct FeatureMetrics {
    std::string feature;
    std::vector<std::pair<Metric, std::optional<double>>> values;  // requested order
    std::vector<std::pair<std::string, std::string>> notes;        // metric key -> reason
};

struct MetricsReport {
    std::string outcome;
    std::size_t n_rows = 0;
    std::size_t n_skipped = 0;
    std::vector<FeatureMetrics> features;  // sorted by feature name
};

namespace detail {

inline double compute_metric(Metric m, const PairedSample& sample) {
    switch (m) {
        case Metric::cpa: return cpa_fast(sample).value;
        case Metric::c_index: return c_index(sample);
        case Metric::auc: return roc_curve(sample.features(), sample.outcomes()).auc;
        case Metric::somers_d: return somers_d(sample.features(), sample.outcomes());
        case Metric::spearman_rho: return spearman_rho(sample);
        case Metric::spearman_rho_mid: return spearman_rho_mid(sample);
    }
    throw Error(ErrorCode::OutOfRange, "unknown metric");
}

}  // namespace detail

/// Compute the requested metrics for every feature. Failures are isolated
/// per feature and per metric; features run on a bounded worker pool and the
/// output order is stable (sorted by feature name).
inline MetricsReport run_metrics(const Dataset& data, const std::vector<Metric>& metrics,
                                 unsigned workers = 0) {
    MetricsReport report;
    report.outcome = data.outcome_column;
    report.n_rows = data.size();
    report.n_skipped = data.skipped_rows.size();

    std::vector<std::size_t> idx(data.feature_columns.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return data.feature_columns[a] < data.feature_columns[b];
    });

    report.features.resize(idx.size());
    auto compute_one = [&](std::size_t slot) {
        const std::size_t col = idx[slot];
        FeatureMetrics fm;
        fm.feature = data.feature_columns[col];
        std::optional<PairedSample> sample;
        std::string sample_error;
        try {
            sample.emplace(data.feature_values[col], data.outcomes);
        } catch (const Error& e) {
            sample_error = std::string(error_code_name(e.code())) + ": " + e.what();
        }
        for (const Metric m : metrics) {
            if (!sample) {
                fm.values.emplace_back(m, std::nullopt);
                fm.notes.emplace_back(metric_key(m), sample_error);
                continue;
            }
            try {
                fm.values.emplace_back(m, detail::compute_metric(m, *sample));
            } catch (const Error& e) {
                fm.values.emplace_back(m, std::nullopt);
                fm.notes.emplace_back(metric_key(m),
                                      std::string(error_code_name(e.code())) + ": " + e.what());
            }
        }
        report.features[slot] = std::move(fm);
    };

    unsigned pool = workers != 0 ? workers : std::min(8u, std::thread::hardware_concurrency());
    if (pool == 0) pool = 1;
    pool = std::min<unsigned>(pool, static_cast<unsigned>(std::max<std::size_t>(idx.size(), 1)));
    if (pool <= 1 || idx.size() <= 1) {
        for (std::size_t i = 0; i < idx.size(); ++i) compute_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> threads;
        threads.reserve(pool);
        for (unsigned t = 0; t < pool; ++t)
            threads.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < idx.size(); i = next.fetch_add(1))
                    compute_one(i);
            });
        for (std::thread& t : threads) t.join();
    }
    return report;
}

inline MetricsReport run_metrics(const Dataset& data) {
    return run_metrics(data, default_metrics());
}

inline std::string to_json(const MetricsReport& report) {
    std::string out;
    out += "{\n";
    out += "  \"outcome\": \"" + detail::json_escape(report.outcome) + "\",\n";
    out += "  \"n_rows\": " + std::to_string(report.n_rows) + ",\n";
    out += "  \"n_skipped\": " + std::to_string(report.n_skipped) + ",\n";
    out += "  \"features\": {";
    for (std::size_t i = 0; i < report.features.size(); ++i) {
        const FeatureMetrics& fm = report.features[i];
        out += i == 0 ? "\n" : ",\n";
        out += "    \"" + detail::json_escape(fm.feature) + "\": {";
        bool first = true;
        for (const auto& [metric, value] : fm.values) {
            out += first ? "\n" : ",\n";
            first = false;
            out += "      \"" + std::string(metric_key(metric)) + "\": ";
            out += value ? detail::num17(*value) : "null";
        }
        out += first ? "\n      \"notes\": {" : ",\n      \"notes\": {";
        for (std::size_t k = 0; k < fm.notes.size(); ++k) {
            out += k == 0 ? "\n" : ",\n";
            out += "        \"" + detail::json_escape(fm.notes[k].first) + "\": \"" +
                   detail::json_escape(fm.notes[k].second) + "\"";
        }
        out += fm.notes.empty() ? "}" : "\n      }";
        out += "\n    }";
    }
    out += report.features.empty() ? "}" : "\n  }";
    out += "\n}\n";
    return out;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = s;
    for (std::size_t p = 0; (p = quoted.find('"', p)) != std::string::npos; p += 2)
        quoted.replace(p, 1, "\"\"");
    return '"' + quoted + '"';
}

}  // namespace detail

inline std::string to_csv(const MetricsReport& report) {
    std::string out = "feature,metric,value,note\n";
    for (const FeatureMetrics& fm : report.features) {
        for (const auto& [metric, value] : fm.values) {
            out += detail::csv_field(fm.feature);
            out += ',';
            out += metric_key(metric);
            out += ',';
            if (value) out += detail::num17(*value);
            out += ',';
            for (const auto& [key, note] : fm.notes)
                if (key == metric_key(metric)) {
                    out += detail::csv_field(note);
                    break;
                }
            out += '\n';
        }
    }
    return out;
}

/// One row per binarization threshold: (z_{c+1}, w_c, AUC_c).
struct ThresholdTableRow {
    double threshold;
    double weight;
    double auc;
};

inline std::vector<ThresholdTableRow> auc_by_threshold(const PairedSample& sample) {
    const RocMovie movie = build_movie(sample);
    std::vector<ThresholdTableRow> rows;
    rows.reserve(movie.frame_count());
    for (std::size_t c = 1; c <= movie.frame_count(); ++c) {
        const auto ci = static_cast<std::int32_t>(c);
        rows.push_back({movie.threshold(ci), movie.weight(ci), movie.auc(ci)});
    }
    return rows;
}

inline std::string to_csv(const std::vector<ThresholdTableRow>& rows) {
    std::string out = "threshold,weight,auc\n";
    for (const ThresholdTableRow& r : rows)
        out += detail::num17(r.threshold) + "," + detail::num17(r.weight) + "," +
               detail::num17(r.auc) + "\n";
    return out;
}

inline std::string to_json(const std::vector<ThresholdTableRow>& rows) {
    std::string out = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out += i == 0 ? "\n" : ",\n";
        out += "  {\"threshold\": " + detail::num17(rows[i].threshold) +
               ", \"weight\": " + detail::num17(rows[i].weight) +
               ", \"auc\": " + detail::num17(rows[i].auc) + "}";
    }
    out += rows.empty() ? "]" : "\n]";
    out += "\n";
    return out;
}

}  // namespace uroc
