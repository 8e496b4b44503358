#pragma once

#include <cmath>
#include <numbers>

#include "uroc/detail/int128.hpp"
#include "uroc/sample.hpp"

namespace uroc {

/// Tie correction V = (1/12) sum_j (v_j^3 - v_j) over feature tie groups,
/// kept as the exact integer 12*V.
struct TieCorrection {
    int128 v_times_12 = 0;
    std::size_t group_count = 0;  // p
    double value() const { return detail::to_double(v_times_12) / 12.0; }
};

inline TieCorrection tie_correction(const RankVector& ranks) {
    TieCorrection t;
    t.group_count = ranks.tie_group_count();
    for (const TieGroup& g : ranks.tie_groups) {
        const int128 v = g.multiplicity;
        t.v_times_12 = detail::checked_add(
            t.v_times_12, detail::checked_mul(v, detail::checked_mul(v, v)) - v);
    }
    return t;
}

/// Spearman's rank correlation, defined for tie-free data only.
inline double spearman_rho(const PairedSample& sample) {
    const RankVector rx = mid_rank(sample.features());
    const RankVector ry = mid_rank(sample.outcomes());
    if (rx.tie_group_count() != 0 || ry.tie_group_count() != 0)
        throw Error(ErrorCode::TiesPresent,
                    "spearman_rho requires tie-free features and outcomes");
    const int128 n = static_cast<int128>(sample.size());
    int128 sum_sq = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        // tie-free mid ranks are plain integer ranks
        const int128 diff = (rx.mid_rank_x2[i] - ry.mid_rank_x2[i]) / 2;
        sum_sq = detail::checked_add(sum_sq, detail::checked_mul(diff, diff));
    }
    const int128 den = detail::checked_mul(n, detail::checked_mul(n, n) - 1);
    return detail::to_double(den - 6 * sum_sq) / detail::to_double(den);
}

/// Mid-rank adjusted Spearman coefficient: feature ties allowed, corrected
/// by V; outcomes must be tie-free.
inline double spearman_rho_mid(const PairedSample& sample) {
    const RankVector rx = mid_rank(sample.features());
    const RankVector ry = mid_rank(sample.outcomes());
    if (ry.tie_group_count() != 0)
        throw Error(ErrorCode::TiesInOutcomes, "spearman_rho_mid requires tie-free outcomes");
    const int128 n = static_cast<int128>(sample.size());
    int128 sum_sq4 = 0;  // 4 * sum of squared rank differences
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const int128 diff2 = rx.mid_rank_x2[i] - ry.mid_rank_x2[i];
        sum_sq4 = detail::checked_add(sum_sq4, detail::checked_mul(diff2, diff2));
    }
    const TieCorrection v = tie_correction(rx);
    const int128 den = detail::checked_mul(n, detail::checked_mul(n, n) - 1);
    // rho_M = 1 - (3*sum_sq4 + 12V) / (2 n (n^2-1))
    return detail::to_double(2 * den - 3 * sum_sq4 - v.v_times_12) / detail::to_double(2 * den);
}

/// Population Spearman coefficient of a bivariate Gaussian with Pearson
/// correlation r: (6/pi) * arcsin(r/2).
inline double gaussian_spearman_from_pearson(double r) {
    if (!(r >= -1.0 && r <= 1.0))
        throw Error(ErrorCode::OutOfRange, "Pearson correlation must lie in [-1, 1]");
    return (6.0 / std::numbers::pi) * std::asin(0.5 * r);
}

}  // namespace uroc
