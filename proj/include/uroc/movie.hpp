#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "uroc/detail/fenwick.hpp"
#include "uroc/detail/int128.hpp"
#include "uroc/roc.hpp"
#include "uroc/sample.hpp"
#include "uroc/weights.hpp"

namespace uroc {

struct MovieFrame {
    double threshold = 0.0;        // z_{c+1}; the frame's event is 1{y >= threshold}
    std::int32_t class_index = 0;  // c in [1, m-1]
    double weight = 0.0;
    double relative_weight = 0.0;  // weight / max over the full movie
    double auc = 0.0;
    RocCurve curve;
};

struct Thinning {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::vector<std::int32_t> retained;  // sorted class indices, always contains 1
};

namespace detail {

inline double auc_value(std::int64_t auc_num, std::int64_t n_neg, std::int64_t n_pos) {
    return static_cast<double>(auc_num) /
           (2.0 * static_cast<double>(n_neg) * static_cast<double>(n_pos));
}

// Immutable grouped view of the sample: unique feature values in descending
// order, with per-group class membership (CSR) and per-class group
// membership (CSC). Frames of the movie are cheap functions of this core.
struct MovieCore {
    std::int64_t n = 0;
    std::vector<double> group_values;        // unique features, descending; size u
    std::vector<std::int64_t> group_size;    // size u
    std::vector<std::size_t> grp_ptr;        // size u+1
    std::vector<std::int32_t> grp_cls;       // classes ascending within group
    std::vector<std::int64_t> grp_cum;       // inclusive count prefix within group
    std::vector<std::size_t> cls_ptr;        // size m+1
    std::vector<std::size_t> cls_grp;        // groups ascending within class
    std::vector<std::int64_t> cls_cnt;

    // number of instances in group g with class <= c
    std::int64_t count_up_to_class(std::size_t g, std::int32_t c) const {
        const auto lo = grp_ptr[g], hi = grp_ptr[g + 1];
        auto it = std::upper_bound(grp_cls.begin() + static_cast<std::ptrdiff_t>(lo),
                                   grp_cls.begin() + static_cast<std::ptrdiff_t>(hi), c);
        if (it == grp_cls.begin() + static_cast<std::ptrdiff_t>(lo)) return 0;
        return grp_cum[static_cast<std::size_t>(it - grp_cls.begin()) - 1];
    }
};

inline std::shared_ptr<const MovieCore> build_movie_core(const PairedSample& sample,
                                                         const ClassDecomposition& d) {
    auto core = std::make_shared<MovieCore>();
    core->n = static_cast<std::int64_t>(sample.size());
    const auto x = sample.features();
    const auto order = descending_order(x);
    const std::size_t n = x.size();
    const auto m = static_cast<std::size_t>(d.class_count());

    std::vector<std::size_t> group_of(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && x[order[j]] == x[order[i]]) ++j;
        core->group_values.push_back(x[order[i]]);
        core->group_size.push_back(static_cast<std::int64_t>(j - i));
        for (std::size_t k = i; k < j; ++k) group_of[order[k]] = core->group_values.size() - 1;
        i = j;
    }
    const std::size_t u = core->group_values.size();

    // aggregate (group, class) pairs
    std::vector<std::int64_t> keys(n);
    for (std::size_t k = 0; k < n; ++k)
        keys[k] = static_cast<std::int64_t>(group_of[k]) * static_cast<std::int64_t>(m + 1) +
                  d.class_of[k];
    std::sort(keys.begin(), keys.end());

    core->grp_ptr.assign(u + 1, 0);
    std::vector<std::int64_t> per_class(m, 0);
    std::size_t k = 0;
    while (k < n) {
        std::size_t k2 = k;
        while (k2 < n && keys[k2] == keys[k]) ++k2;
        const auto g = static_cast<std::size_t>(keys[k] / static_cast<std::int64_t>(m + 1));
        const auto cls = static_cast<std::int32_t>(keys[k] % static_cast<std::int64_t>(m + 1));
        core->grp_cls.push_back(cls);
        core->grp_cum.push_back(static_cast<std::int64_t>(k2 - k));
        ++core->grp_ptr[g + 1];
        per_class[static_cast<std::size_t>(cls - 1)] += 1;
        k = k2;
    }
    for (std::size_t g = 0; g < u; ++g) core->grp_ptr[g + 1] += core->grp_ptr[g];
    for (std::size_t g = 0; g < u; ++g) {
        std::int64_t run = 0;
        for (std::size_t e = core->grp_ptr[g]; e < core->grp_ptr[g + 1]; ++e) {
            run += core->grp_cum[e];
            core->grp_cum[e] = run;
        }
    }

    // transpose into per-class group lists
    core->cls_ptr.assign(m + 1, 0);
    for (std::size_t c = 0; c < m; ++c) core->cls_ptr[c + 1] = core->cls_ptr[c] + static_cast<std::size_t>(per_class[c]);
    core->cls_grp.resize(core->grp_cls.size());
    core->cls_cnt.resize(core->grp_cls.size());
    std::vector<std::size_t> fill(core->cls_ptr.begin(), core->cls_ptr.end() - 1);
    for (std::size_t g = 0; g < u; ++g) {
        std::int64_t prev = 0;
        for (std::size_t e = core->grp_ptr[g]; e < core->grp_ptr[g + 1]; ++e) {
            const auto cls = static_cast<std::size_t>(core->grp_cls[e] - 1);
            const std::int64_t cnt = core->grp_cum[e] - prev;
            prev = core->grp_cum[e];
            core->cls_grp[fill[cls]] = g;
            core->cls_cnt[fill[cls]] = cnt;
            ++fill[cls];
        }
    }
    return core;
}

}  // namespace detail

/// The ordered sequence of the m-1 classical ROC curves over all nontrivial
/// binarization thresholds. Per-frame AUCs are computed once, incrementally;
/// individual frames (vertex lists) are materialized on demand and are
/// identical to building the induced binary problem directly.
class RocMovie {
public:
    std::size_t frame_count() const noexcept { return thresholds_.size(); }

    double threshold(std::int32_t c) const { return thresholds_[idx(c)]; }
    double weight(std::int32_t c) const { return weights_.weights[idx(c)]; }
    double relative_weight(std::int32_t c) const { return rel_weights_[idx(c)]; }
    double auc(std::int32_t c) const { return aucs_[idx(c)]; }
    std::int64_t auc_num(std::int32_t c) const { return auc_nums_[idx(c)]; }
    std::int64_t neg_count(std::int32_t c) const { return n_neg_[idx(c)]; }
    std::int64_t pos_count(std::int32_t c) const { return core_->n - n_neg_[idx(c)]; }

    const ClassDecomposition& decomposition() const noexcept { return decomposition_; }
    const WeightVector& weight_vector() const noexcept { return weights_; }

    bool thinned() const noexcept { return thinning_.has_value(); }
    const Thinning& thinning() const { return *thinning_; }

    /// Class indices of the frames to display/export: the retained set when
    /// thinned, all frames otherwise.
    std::vector<std::int32_t> display_indices() const {
        if (thinning_) return thinning_->retained;
        std::vector<std::int32_t> all(frame_count());
        for (std::size_t c = 0; c < all.size(); ++c) all[c] = static_cast<std::int32_t>(c + 1);
        return all;
    }

    /// Materialize frame c (1-based). Vertex lists, counts and AUC are
    /// bit-identical to roc_curve(x, 1{y >= z_{c+1}}).
    MovieFrame frame(std::int32_t c) const {
        const std::size_t ci = idx(c);
        MovieFrame f;
        f.threshold = thresholds_[ci];
        f.class_index = c;
        f.weight = weights_.weights[ci];
        f.relative_weight = rel_weights_[ci];
        f.auc = aucs_[ci];

        RocCurve& curve = f.curve;
        curve.n_neg = n_neg_[ci];
        curve.n_pos = core_->n - curve.n_neg;
        curve.auc_num = auc_nums_[ci];
        curve.auc = aucs_[ci];
        const std::size_t u = core_->group_values.size();
        curve.fpr.reserve(u + 1);
        curve.tpr.reserve(u + 1);
        curve.fp_count.reserve(u + 1);
        curve.tp_count.reserve(u + 1);
        curve.thresholds.reserve(u + 1);
        curve.fpr.push_back(0.0);
        curve.tpr.push_back(0.0);
        curve.fp_count.push_back(0);
        curve.tp_count.push_back(0);
        curve.thresholds.push_back(core_->group_values[0]);
        std::int64_t cum_fp = 0, cum_tp = 0;
        for (std::size_t g = 0; g < u; ++g) {
            const std::int64_t q = core_->count_up_to_class(g, c);
            const std::int64_t p = core_->group_size[g] - q;
            cum_fp += q;
            cum_tp += p;
            curve.fp_count.push_back(cum_fp);
            curve.tp_count.push_back(cum_tp);
            curve.fpr.push_back(static_cast<double>(cum_fp) / static_cast<double>(curve.n_neg));
            curve.tpr.push_back(static_cast<double>(cum_tp) / static_cast<double>(curve.n_pos));
            curve.thresholds.push_back(g + 1 < u ? core_->group_values[g + 1]
                                                 : -std::numeric_limits<double>::infinity());
        }
        return f;
    }

    RocMovie with_thinning(std::int64_t a, std::int64_t b) const;

    friend RocMovie build_movie(const PairedSample& sample);

private:
    std::size_t idx(std::int32_t c) const {
        if (c < 1 || static_cast<std::size_t>(c) > frame_count())
            throw Error(ErrorCode::OutOfRange, "frame index out of range");
        return static_cast<std::size_t>(c - 1);
    }

    std::shared_ptr<const detail::MovieCore> core_;
    ClassDecomposition decomposition_;
    WeightVector weights_;
    std::vector<double> thresholds_;
    std::vector<double> rel_weights_;
    std::vector<double> aucs_;
    std::vector<std::int64_t> auc_nums_;
    std::vector<std::int64_t> n_neg_;
    std::optional<Thinning> thinning_;
};

/// Thinned frame index set C = C_a union C_b (arithmetic index grid of size a
/// plus every class holding at least a 1/b share of the instances).
inline std::vector<std::int32_t> thin_index_set(const ClassDecomposition& d, std::int64_t a,
                                                std::int64_t b) {
    const std::int64_t m1 = d.class_count() - 1;
    if (a < 1 || b < 1 || a > m1)
        throw Error(ErrorCode::InvalidThinningParams,
                    "need 1 <= a <= m-1 and b >= 1 for thinning");
    // largest integer s with 1 + (a-1)s <= m-1; for a == 1 the grid is {1}
    const std::int64_t s = (a == 1) ? 1 : (m1 - 1) / (a - 1);
    std::vector<std::int32_t> set;
    for (std::int64_t k = 0; k < a; ++k)
        set.push_back(static_cast<std::int32_t>(1 + k * s));
    const int128 n = d.size();
    for (std::int64_t c = 1; c <= m1; ++c)
        if (static_cast<int128>(b) * d.class_counts[static_cast<std::size_t>(c - 1)] >= n)
            set.push_back(static_cast<std::int32_t>(c));
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    return set;
}

inline RocMovie RocMovie::with_thinning(std::int64_t a, std::int64_t b) const {
    RocMovie copy(*this);
    copy.thinning_ = Thinning{a, b, thin_index_set(decomposition_, a, b)};
    return copy;
}

/// Build the full movie. Frames advance by flipping one class from the
/// positive to the negative population; the AUC numerator S = sum_g q_g
/// (2 P_g + p_g) is updated per affected feature group, with prefix counts
/// maintained in Fenwick trees, so the whole movie costs O(n log n).
inline RocMovie build_movie(const PairedSample& sample) {
    RocMovie movie;
    movie.decomposition_ = decompose(sample);
    const ClassDecomposition& d = movie.decomposition_;
    const auto m = static_cast<std::size_t>(d.class_count());
    movie.core_ = detail::build_movie_core(sample, d);
    const detail::MovieCore& core = *movie.core_;
    movie.weights_ = class_weights(d);

    const std::size_t u = core.group_values.size();
    std::vector<std::int64_t> p(u), q(u);
    detail::Fenwick fen_p(u), fen_q(u);

    // frame 1: negatives are exactly class 1
    std::int64_t S = 0;
    {
        std::int64_t P = 0;
        for (std::size_t g = 0; g < u; ++g) {
            q[g] = core.count_up_to_class(g, 1);
            p[g] = core.group_size[g] - q[g];
            S += q[g] * (2 * P + p[g]);
            P += p[g];
            fen_p.add(g, p[g]);
            fen_q.add(g, q[g]);
        }
    }

    const std::size_t frames = m - 1;
    movie.thresholds_.resize(frames);
    movie.aucs_.resize(frames);
    movie.auc_nums_.resize(frames);
    movie.n_neg_.resize(frames);

    std::int64_t n_neg = d.class_counts[0];
    movie.thresholds_[0] = d.unique_outcomes[1];
    movie.auc_nums_[0] = S;
    movie.n_neg_[0] = n_neg;
    movie.aucs_[0] = detail::auc_value(S, n_neg, core.n - n_neg);

    for (std::size_t c = 2; c <= frames; ++c) {
        // class c moves from the positive to the negative population
        for (std::size_t e = core.cls_ptr[c - 1]; e < core.cls_ptr[c]; ++e) {
            const std::size_t g = core.cls_grp[e];
            const std::int64_t k = core.cls_cnt[e];
            const std::int64_t P = fen_p.prefix_exclusive(g);          // positives before g
            const std::int64_t R = fen_q.total() - fen_q.prefix(g);    // negatives after g
            S += -q[g] * k + k * (2 * P + p[g]) - k * k - 2 * k * R;
            p[g] -= k;
            q[g] += k;
            fen_p.add(g, -k);
            fen_q.add(g, k);
        }
        n_neg += d.class_counts[c - 1];
        movie.thresholds_[c - 1] = d.unique_outcomes[c];
        movie.auc_nums_[c - 1] = S;
        movie.n_neg_[c - 1] = n_neg;
        movie.aucs_[c - 1] = detail::auc_value(S, n_neg, core.n - n_neg);
    }

    double max_w = 0.0;
    for (double w : movie.weights_.weights) max_w = std::max(max_w, w);
    movie.rel_weights_.resize(frames);
    for (std::size_t c = 0; c < frames; ++c)
        movie.rel_weights_[c] = movie.weights_.weights[c] / max_w;
    return movie;
}

}  // namespace uroc
