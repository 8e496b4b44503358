#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "uroc/error.hpp"
#include "uroc/sample.hpp"

namespace uroc {

/// Piecewise-linear ROC curve. Vertices run from (0,0) to (1,1); rates are
/// kept both as doubles and as exact counts over (n_neg, n_pos), and the
/// area is an exact rational auc_num / (2 n_neg n_pos).
struct RocCurve {
    std::vector<double> fpr;
    std::vector<double> tpr;
    std::vector<std::int64_t> fp_count;  // fpr = fp_count / n_neg
    std::vector<std::int64_t> tp_count;  // tpr = tp_count / n_pos
    std::vector<double> thresholds;      // classifier is 1{x > t}; last entry -inf
    std::int64_t n_pos = 0;
    std::int64_t n_neg = 0;
    std::int64_t auc_num = 0;
    double auc = 0.0;

    std::size_t vertex_count() const noexcept { return fpr.size(); }
};

namespace detail {

inline void require_binary(std::span<const double> outcomes, std::int64_t& n_neg,
                           std::int64_t& n_pos) {
    n_neg = n_pos = 0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (outcomes[i] == 0.0)
            ++n_neg;
        else if (outcomes[i] == 1.0)
            ++n_pos;
        else
            throw Error(ErrorCode::NotBinaryOutcome, "outcome is not 0 or 1",
                        static_cast<long long>(i + 1));
    }
    if (n_neg == 0 || n_pos == 0)
        throw Error(ErrorCode::SingleClassOutcome, "need at least one 0 and one 1 outcome");
}

// Indices sorted by feature descending (stable), grouped by equal value.
inline std::vector<std::size_t> descending_order(std::span<const double> x) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!std::isfinite(x[i]))
            throw Error(ErrorCode::NonFiniteValue, "non-finite feature value",
                        static_cast<long long>(i + 1));
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
    return order;
}

}  // namespace detail

/// Classical ROC curve for a 0/1 outcome; one vertex per unique feature value
/// plus the all-positive anchor.
inline RocCurve roc_curve(std::span<const double> x, std::span<const double> y01) {
    if (x.size() != y01.size())
        throw Error(ErrorCode::LengthMismatch, "features and outcomes differ in length");
    RocCurve c;
    detail::require_binary(y01, c.n_neg, c.n_pos);
    const auto order = detail::descending_order(x);
    const std::size_t n = x.size();

    c.fpr.push_back(0.0);
    c.tpr.push_back(0.0);
    c.fp_count.push_back(0);
    c.tp_count.push_back(0);
    c.thresholds.push_back(x[order[0]]);

    std::int64_t cum_fp = 0, cum_tp = 0, auc_num = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        std::int64_t q = 0, p = 0;  // negatives / positives at this feature value
        while (j < n && x[order[j]] == x[order[i]]) {
            if (y01[order[j]] == 1.0)
                ++p;
            else
                ++q;
            ++j;
        }
        auc_num += q * (2 * cum_tp + p);  // trapezoid over the new segment
        cum_fp += q;
        cum_tp += p;
        c.fp_count.push_back(cum_fp);
        c.tp_count.push_back(cum_tp);
        c.fpr.push_back(static_cast<double>(cum_fp) / static_cast<double>(c.n_neg));
        c.tpr.push_back(static_cast<double>(cum_tp) / static_cast<double>(c.n_pos));
        c.thresholds.push_back(j < n ? x[order[j]] : -std::numeric_limits<double>::infinity());
        i = j;
    }
    c.auc_num = auc_num;
    c.auc = static_cast<double>(auc_num) / (2.0 * static_cast<double>(c.n_neg) * static_cast<double>(c.n_pos));
    return c;
}

/// Mean of s over all negative x positive feature pairs; quadratic, kept as
/// the independent oracle for RocCurve::auc.
inline double auc_pairwise(std::span<const double> x, std::span<const double> y01) {
    if (x.size() != y01.size())
        throw Error(ErrorCode::LengthMismatch, "features and outcomes differ in length");
    std::int64_t n_neg, n_pos;
    detail::require_binary(y01, n_neg, n_pos);
    std::int64_t sum2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (y01[i] != 0.0) continue;
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (y01[j] != 1.0) continue;
            sum2 += detail::s2(x[i], x[j]);
        }
    }
    return static_cast<double>(sum2) / (2.0 * static_cast<double>(n_neg) * static_cast<double>(n_pos));
}

/// Somers' D = (concordant - discordant) / (n_neg * n_pos), taken from the
/// curve's exact trapezoid numerator: 2*AUC - 1 over the same integer counts.
inline double somers_d(std::span<const double> x, std::span<const double> y01) {
    const RocCurve c = roc_curve(x, y01);
    const std::int64_t pairs = c.n_neg * c.n_pos;
    return static_cast<double>(c.auc_num - pairs) / static_cast<double>(pairs);
}

}  // namespace uroc
