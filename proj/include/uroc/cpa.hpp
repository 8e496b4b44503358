#pragma once

#include <cstdint>
#include <vector>

#include "uroc/detail/fenwick.hpp"
#include "uroc/detail/int128.hpp"
#include "uroc/sample.hpp"

namespace uroc {

enum class CpaMethod { fast, pairwise, covariance, weighted_auc };

/// CPA with its exact integer numerator/denominator (mid ranks scaled by
/// two), so cross-route agreement can be asserted without rounding.
struct CpaResult {
    double value = 0.0;
    int128 numerator = 0;
    int128 denominator = 0;
    CpaMethod method = CpaMethod::fast;
};

/// Rank/class route: two radix sorts joined by carrying payloads, O(n log n)
/// with streaming access only. Numerator and denominator are the doubled
/// class-distance-weighted concordance sums.
inline CpaResult cpa_fast(const PairedSample& sample) {
    const std::size_t nn = sample.size();
    const int128 n = static_cast<int128>(nn);
    const auto x = sample.features();
    const auto y = sample.outcomes();

    // sort by outcome with the feature key as payload; runs are the classes
    std::vector<detail::ValueIndex> entries(nn);
    for (std::size_t i = 0; i < nn; ++i)
        entries[i] = {detail::order_key(y[i]), detail::order_key(x[i])};
    detail::radix_sort_entries(entries);

    // relabel in place: (feature key, class index), collecting class counts
    std::vector<std::int64_t> class_counts;
    {
        std::size_t i = 0;
        while (i < nn) {
            std::size_t j = i;
            const std::uint64_t run_key = entries[i].key;
            const auto cls = static_cast<std::uint64_t>(class_counts.size() + 1);
            while (j < nn && entries[j].key == run_key) {
                entries[j].key = entries[j].idx;
                entries[j].idx = cls;
                ++j;
            }
            class_counts.push_back(static_cast<std::int64_t>(j - i));
            i = j;
        }
    }
    if (class_counts.size() < 2)
        throw Error(ErrorCode::DegenerateOutcomes, "all outcomes are equal");

    // sort by feature; each run shares the doubled mid rank i+1+j
    detail::radix_sort_entries(entries);
    int128 num = 0;
    {
        std::size_t i = 0;
        while (i < nn) {
            std::size_t j = i;
            int128 class_sum = 0;
            while (j < nn && entries[j].key == entries[i].key) {
                class_sum = detail::checked_add(class_sum,
                                                static_cast<int128>(entries[j].idx));
                ++j;
            }
            num = detail::checked_add(
                num, detail::checked_mul(static_cast<int128>(i + 1 + j), class_sum));
            i = j;
        }
    }

    const std::size_t m = class_counts.size();
    int128 den = 0;
    int128 cum = 0;
    for (std::size_t i = 1; i <= m; ++i) {
        const int128 ni = class_counts[i - 1];
        const int128 ini = detail::checked_mul(static_cast<int128>(i), ni);
        num = detail::checked_add(num, detail::checked_mul(ini, 2 * cum + ni - 2 * n - 1));
        den = detail::checked_add(den, detail::checked_mul(ini, 2 * cum + ni - n));
        cum += ni;
    }
    CpaResult res;
    res.numerator = num;
    res.denominator = detail::checked_mul(den, 2);
    res.value = detail::to_double(res.numerator) / detail::to_double(res.denominator);
    res.method = CpaMethod::fast;
    return res;
}

/// Class-distance-weighted pairwise concordance; quadratic, guarded by a
/// size cap. Exists as the oracle for cpa_fast, not a production path.
inline CpaResult cpa_pairwise(const PairedSample& sample, std::size_t size_cap = 5000) {
    if (sample.size() > size_cap)
        throw Error(ErrorCode::SizeCapExceeded,
                    "cpa_pairwise is quadratic; raise size_cap to override");
    const ClassDecomposition d = decompose(sample);
    const auto x = sample.features();
    const std::size_t n = sample.size();

    int128 num = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::int32_t ci = d.class_of[i], cj = d.class_of[j];
            if (ci >= cj) continue;
            num = detail::checked_add(
                num, detail::checked_mul(cj - ci, detail::s2(x[i], x[j])));
        }

    int128 den = 0;
    int128 cum = 0;
    const int128 total = d.size();
    for (std::size_t c = 0; c + 1 < static_cast<std::size_t>(d.class_count()); ++c) {
        cum = detail::checked_add(cum, d.class_counts[c]);
        den = detail::checked_add(den, detail::checked_mul(cum, total - cum));
    }
    CpaResult res;
    res.numerator = num;
    res.denominator = detail::checked_mul(den, 2);
    res.value = detail::to_double(res.numerator) / detail::to_double(res.denominator);
    res.method = CpaMethod::pairwise;
    return res;
}

/// Covariance route: CPA = (cov(cl(Y), mrk(X)) / cov(cl(Y), mrk(Y)) + 1) / 2
/// with covariances over the empirical distribution, reduced to exact
/// integer moments (scaled by n^2 and by two for mid ranks).
inline CpaResult cpa_covariance(const PairedSample& sample) {
    const ClassDecomposition d = decompose(sample);
    const RankVector rx = mid_rank(sample.features());
    const RankVector ry = mid_rank(sample.outcomes());
    const int128 n = d.size();

    int128 s_xy = 0, s_yy = 0, s_cl = 0, s_rx = 0, s_ry = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const int128 cl = d.class_of[i];
        s_xy = detail::checked_add(s_xy, detail::checked_mul(cl, rx.mid_rank_x2[i]));
        s_yy = detail::checked_add(s_yy, detail::checked_mul(cl, ry.mid_rank_x2[i]));
        s_cl += cl;
        s_rx += rx.mid_rank_x2[i];
        s_ry += ry.mid_rank_x2[i];
    }
    const int128 num_x = detail::checked_mul(n, s_xy) - detail::checked_mul(s_cl, s_rx);
    const int128 num_y = detail::checked_mul(n, s_yy) - detail::checked_mul(s_cl, s_ry);
    if (num_y == 0)
        throw Error(ErrorCode::DegenerateOutcomes, "outcome covariance is zero");
    CpaResult res;
    res.numerator = detail::checked_add(num_x, num_y);
    res.denominator = detail::checked_mul(num_y, 2);
    res.value = detail::to_double(res.numerator) / detail::to_double(res.denominator);
    res.method = CpaMethod::covariance;
    return res;
}

/// Unweighted cross-class concordance probability (the C index), via a
/// Fenwick tree over compressed feature ranks; O(n log n).
inline double c_index(const PairedSample& sample) {
    const ClassDecomposition d = decompose(sample);
    const auto x = sample.features();
    const std::size_t n = sample.size();

    std::vector<double> unique_x(x.begin(), x.end());
    std::stable_sort(unique_x.begin(), unique_x.end());
    unique_x.erase(std::unique(unique_x.begin(), unique_x.end()), unique_x.end());
    std::vector<std::size_t> rank_id(n);
    for (std::size_t i = 0; i < n; ++i)
        rank_id[i] = static_cast<std::size_t>(
            std::lower_bound(unique_x.begin(), unique_x.end(), x[i]) - unique_x.begin());

    // instance indices bucketed by class
    const auto m = static_cast<std::size_t>(d.class_count());
    std::vector<std::size_t> offset(m + 1, 0);
    for (std::size_t i = 0; i < n; ++i) ++offset[static_cast<std::size_t>(d.class_of[i])];
    for (std::size_t c = 0; c < m; ++c) offset[c + 1] += offset[c];
    std::vector<std::size_t> by_class(n);
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (std::size_t i = 0; i < n; ++i)
        by_class[fill[static_cast<std::size_t>(d.class_of[i]) - 1]++] = i;

    detail::Fenwick seen(unique_x.size());
    int128 num2 = 0;
    for (std::size_t c = 0; c < m; ++c) {
        const std::size_t begin = offset[c];
        const std::size_t stop = offset[c + 1];
        // query this class against all lower classes, then insert it
        for (std::size_t k = begin; k < stop; ++k) {
            const std::size_t rid = rank_id[by_class[k]];
            const std::int64_t upto = seen.prefix(rid);
            const std::int64_t less = seen.prefix_exclusive(rid);
            num2 = detail::checked_add(num2, 2 * less + (upto - less));
        }
        for (std::size_t k = begin; k < stop; ++k) seen.add(rank_id[by_class[k]], 1);
    }

    int128 sum_sq = 0;
    for (const std::int64_t nc : d.class_counts)
        sum_sq = detail::checked_add(sum_sq, detail::checked_mul(nc, nc));
    const int128 nn = d.size();
    const int128 den2 = detail::checked_mul(nn, nn) - sum_sq;  // 2 * cross-class pairs
    return detail::to_double(num2) / detail::to_double(den2);
}

}  // namespace uroc
