#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "uroc/movie.hpp"
#include "uroc/weights.hpp"

namespace uroc {

/// Weighted vertical average of the movie's curves on a uniform grid over
/// the false-positive axis. Endpoints are pinned to (0,0) and (1,1).
struct UrocCurve {
    std::int64_t grid_size = 0;   // G; grid_tpr has G+1 entries
    std::vector<double> grid_tpr;
    double cpa_from_area = 0.0;

    double grid_fpr(std::size_t j) const {
        return static_cast<double>(j) / static_cast<double>(grid_size);
    }
};

namespace detail {

// Evaluate the piecewise-linear interpolant of the vertex list at each grid
// abscissa and accumulate w * value. Vertical segments (repeated fpr) take
// the upper value, matching the CDF reading of a ROC curve.
inline void add_curve_on_grid(const RocCurve& c, double w, std::span<double> grid) {
    const std::size_t G = grid.size() - 1;
    const auto& fx = c.fpr;
    const auto& fy = c.tpr;
    const std::size_t nv = fx.size();
    std::size_t k = 0;
    for (std::size_t j = 0; j <= G; ++j) {
        const double t = static_cast<double>(j) / static_cast<double>(G);
        while (k + 1 < nv && fx[k + 1] <= t) ++k;
        double val;
        if (fx[k] == t)
            val = fy[k];
        else
            val = fy[k] + (fy[k + 1] - fy[k]) * ((t - fx[k]) / (fx[k + 1] - fx[k]));
        grid[j] += w * val;
    }
}

}  // namespace detail

/// Grid-sample one curve with the UROC conventions (upper value at vertical
/// segments, endpoints pinned).
inline std::vector<double> sample_on_grid(const RocCurve& curve, std::int64_t grid_size) {
    if (grid_size < 2)
        throw Error(ErrorCode::GridTooCoarse, "grid size must be at least 2");
    std::vector<double> grid(static_cast<std::size_t>(grid_size) + 1, 0.0);
    detail::add_curve_on_grid(curve, 1.0, grid);
    grid.front() = 0.0;
    grid.back() = 1.0;
    return grid;
}

inline double area_under_grid(std::span<const double> grid_tpr) {
    const std::size_t G = grid_tpr.size() - 1;
    double sum = 0.0;
    for (std::size_t j = 0; j < G; ++j) sum += grid_tpr[j] + grid_tpr[j + 1];
    return sum * 0.5 / static_cast<double>(G);
}

inline double area_under_uroc(const UrocCurve& curve) { return area_under_grid(curve.grid_tpr); }

inline UrocCurve uroc_curve(const RocMovie& movie, const WeightVector& weights,
                            std::int64_t grid_size = 1000) {
    if (grid_size < 2)
        throw Error(ErrorCode::GridTooCoarse, "grid size must be at least 2");
    if (weights.weights.size() != movie.frame_count())
        throw Error(ErrorCode::MovieWeightMismatch,
                    "weight vector does not match the movie's frame count");
    UrocCurve out;
    out.grid_size = grid_size;
    out.grid_tpr.assign(static_cast<std::size_t>(grid_size) + 1, 0.0);
    for (std::size_t c = 1; c <= movie.frame_count(); ++c) {
        const MovieFrame f = movie.frame(static_cast<std::int32_t>(c));
        detail::add_curve_on_grid(f.curve, weights.weights[c - 1], out.grid_tpr);
    }
    out.grid_tpr.front() = 0.0;
    out.grid_tpr.back() = 1.0;
    out.cpa_from_area = area_under_grid(out.grid_tpr);
    return out;
}

inline UrocCurve uroc_curve(const PairedSample& sample, std::int64_t grid_size = 1000) {
    const RocMovie movie = build_movie(sample);
    return uroc_curve(movie, movie.weight_vector(), grid_size);
}

/// CPA as the weighted average of the movie's frame AUCs.
inline double weighted_auc_cpa(const RocMovie& movie) {
    double cpa = 0.0;
    for (std::size_t c = 1; c <= movie.frame_count(); ++c)
        cpa += movie.weight_vector().weights[c - 1] * movie.auc(static_cast<std::int32_t>(c));
    return cpa;
}

}  // namespace uroc
