#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "uroc/detail/format.hpp"
#include "uroc/movie.hpp"
#include "uroc/svg.hpp"
#include "uroc/uroc_curve.hpp"

namespace uroc {

struct FrameExportOptions {
    std::string directory;
    bool svg = false;
};

inline void write_frame_csv(std::ostream& os, const MovieFrame& f) {
    os << "# threshold=" << detail::num17(f.threshold) << "\n";
    os << "# class_index=" << f.class_index << "\n";
    os << "# weight=" << detail::num17(f.weight) << "\n";
    os << "# relative_weight=" << detail::num17(f.relative_weight) << "\n";
    os << "# auc=" << detail::num17(f.auc) << "\n";
    os << "fpr,tpr\n";
    for (std::size_t i = 0; i < f.curve.vertex_count(); ++i)
        os << detail::num17(f.curve.fpr[i]) << ',' << detail::num17(f.curve.tpr[i]) << '\n';
}

inline void write_uroc_csv(std::ostream& os, const UrocCurve& curve) {
    os << "# cpa=" << detail::num17(curve.cpa_from_area) << "\n";
    os << "fpr,tpr\n";
    for (std::size_t j = 0; j < curve.grid_tpr.size(); ++j)
        os << detail::num17(curve.grid_fpr(j)) << ',' << detail::num17(curve.grid_tpr[j]) << '\n';
}

/// Write one CSV (and optionally one SVG) per retained frame, numbered in
/// playback order with zero-padded indices starting at 0001. Returns the
/// paths written.
inline std::vector<std::string> export_frames(const RocMovie& movie,
                                              const FrameExportOptions& opts) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(opts.directory, ec);
    if (ec)
        throw Error(ErrorCode::IoFailure, "cannot create directory '" + opts.directory + "'");

    const std::vector<std::int32_t> indices = movie.display_indices();
    int width = 4;
    for (std::size_t v = indices.size(); v >= 10000; v /= 10) ++width;

    std::vector<std::string> written;
    for (std::size_t pos = 0; pos < indices.size(); ++pos) {
        const MovieFrame f = movie.frame(indices[pos]);
        char num[32];
        std::snprintf(num, sizeof(num), "%0*d", width, static_cast<int>(pos + 1));
        const std::string base = opts.directory + "/frame_" + num;
        {
            std::ofstream os(base + ".csv");
            if (!os)
                throw Error(ErrorCode::IoFailure, "cannot write '" + base + ".csv'");
            write_frame_csv(os, f);
            if (!os)
                throw Error(ErrorCode::IoFailure, "write failed for '" + base + ".csv'");
        }
        written.push_back(base + ".csv");
        if (opts.svg) {
            std::ofstream os(base + ".svg");
            if (!os)
                throw Error(ErrorCode::IoFailure, "cannot write '" + base + ".svg'");
            write_curve_svg(os, f.curve.fpr, f.curve.tpr, "threshold " + detail::num17(f.threshold),
                            {{"threshold", detail::num17(f.threshold)},
                             {"relative_weight", detail::num17(f.relative_weight)},
                             {"auc", detail::num17(f.auc)}});
            if (!os)
                throw Error(ErrorCode::IoFailure, "write failed for '" + base + ".svg'");
            written.push_back(base + ".svg");
        }
    }
    return written;
}

}  // namespace uroc
