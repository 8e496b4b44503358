#pragma once

#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uroc/detail/format.hpp"

namespace uroc {

namespace detail {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace detail

/// Fixed-viewbox (1000x700) curve plot: unit square mapped by affine
/// scaling, diagonal reference, label block on the right. Byte output is
/// deterministic for fixed input.
inline void write_curve_svg(std::ostream& os, std::span<const double> fpr,
                            std::span<const double> tpr, const std::string& title,
                            const std::vector<std::pair<std::string, std::string>>& labels) {
    constexpr double x0 = 70.0, y0 = 640.0, side = 600.0;
    auto px = [&](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", x0 + side * v);
        return std::string(buf);
    };
    auto py = [&](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", y0 - side * v);
        return std::string(buf);
    };

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 700\">\n";
    os << "<rect width=\"1000\" height=\"700\" fill=\"white\"/>\n";
    os << "<rect x=\"" << px(0.0) << "\" y=\"" << py(1.0) << "\" width=\"600\" height=\"600\" "
          "fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << px(0.0) << "\" y1=\"" << py(0.0) << "\" x2=\"" << px(1.0) << "\" y2=\""
       << py(1.0) << "\" stroke=\"gray\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
    os << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < fpr.size(); ++i) {
        if (i != 0) os << ' ';
        os << px(fpr[i]) << ',' << py(tpr[i]);
    }
    os << "\"/>\n";
    os << "<text x=\"70\" y=\"28\" font-family=\"monospace\" font-size=\"20\">"
       << detail::xml_escape(title) << "</text>\n";
    double label_y = 80.0;
    for (const auto& [key, value] : labels) {
        os << "<text x=\"700\" y=\"" << label_y << "\" font-family=\"monospace\" font-size=\"16\">"
           << detail::xml_escape(key) << " = " << detail::xml_escape(value) << "</text>\n";
        label_y += 26.0;
    }
    os << "<text x=\"" << px(0.42) << "\" y=\"676\" font-family=\"monospace\" font-size=\"16\">"
          "false positive rate</text>\n";
    os << "<text x=\"24\" y=\"" << py(0.30)
       << "\" font-family=\"monospace\" font-size=\"16\" transform=\"rotate(-90 24 "
       << py(0.30) << ")\">true positive rate</text>\n";
    os << "</svg>\n";
}

}  // namespace uroc
