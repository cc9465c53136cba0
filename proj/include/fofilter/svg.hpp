#pragma once
// Deterministic standalone SVG line charts for frequency responses: log-omega
// x-axis, dB y-axis, decade gridlines, legend, and title. Identical inputs
// produce byte-identical files.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "sweep.hpp"

namespace fofilter {

struct SvgSeries {
    std::string label;
    std::vector<ResponseSample> samples;
};

struct SvgAxes {
    std::string title;
    std::string x_label = "ω (rad/s)";
    std::string y_label = "Magnitude (dB)";
};

namespace detail {

inline std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string fmtg(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

inline const char* series_color(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    return palette[i % (sizeof(palette) / sizeof(palette[0]))];
}

// Tick step from the 1/2/5 ladder giving roughly the requested count.
inline double nice_step(double range, int target) {
    const double raw = range / std::max(1, target);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (const double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) return m * mag;
    }
    return 10.0 * mag;
}

}  // namespace detail

inline void render_svg(const std::vector<SvgSeries>& series, const SvgAxes& axes, const std::string& path) {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    bool any = false;
    for (const auto& s : series) {
        for (const auto& sample : s.samples) {
            if (sample.pole || !std::isfinite(sample.magnitude_db) || !(sample.omega > 0.0)) continue;
            const double x = std::log10(sample.omega);
            const double y = std::max(sample.magnitude_db, kDbFloor);
            if (!any) {
                xmin = xmax = x;
                ymin = ymax = y;
                any = true;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    }
    if (!any) throw std::invalid_argument("render_svg needs at least one series with plottable samples");
    if (xmax - xmin < 1e-12) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    const double ypad = std::max(1.0, 0.05 * (ymax - ymin));
    ymin -= ypad;
    ymax += ypad;

    constexpr double left = 80.0, right = 930.0, top = 56.0, bottom = 530.0;
    const auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (right - left); };
    const auto py = [&](double y) { return bottom - (y - ymin) / (ymax - ymin) * (bottom - top); };

    std::string svg;
    svg.reserve(1 << 16);
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"600\" viewBox=\"0 0 960 600\" "
           "font-family=\"Helvetica, Arial, sans-serif\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"960\" height=\"600\" fill=\"#ffffff\"/>\n";

    if (!axes.title.empty()) {
        svg += "<text x=\"480\" y=\"28\" font-size=\"18\" text-anchor=\"middle\" fill=\"#222222\">" +
               detail::xml_escape(axes.title) + "</text>\n";
    }

    // Decade gridlines and x tick labels.
    const int k_lo = static_cast<int>(std::ceil(xmin - 1e-9));
    const int k_hi = static_cast<int>(std::floor(xmax + 1e-9));
    const int stride = std::max(1, (k_hi - k_lo) / 8 + ((k_hi - k_lo) % 8 ? 1 : 0));
    for (int k = k_lo; k <= k_hi; k += stride) {
        const std::string x = detail::fmt2(px(k));
        svg += "<line x1=\"" + x + "\" y1=\"" + detail::fmt2(top) + "\" x2=\"" + x + "\" y2=\"" +
               detail::fmt2(bottom) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + x + "\" y=\"" + detail::fmt2(bottom + 20.0) +
               "\" font-size=\"13\" text-anchor=\"middle\" fill=\"#333333\">" +
               detail::fmtg(std::pow(10.0, k)) + "</text>\n";
    }

    // Horizontal gridlines and y tick labels.
    const double ystep = detail::nice_step(ymax - ymin, 6);
    for (double y = std::ceil(ymin / ystep) * ystep; y <= ymax + 1e-9; y += ystep) {
        const std::string yy = detail::fmt2(py(y));
        svg += "<line x1=\"" + detail::fmt2(left) + "\" y1=\"" + yy + "\" x2=\"" + detail::fmt2(right) +
               "\" y2=\"" + yy + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + detail::fmt2(left - 8.0) + "\" y=\"" + yy +
               "\" font-size=\"13\" text-anchor=\"end\" dominant-baseline=\"middle\" fill=\"#333333\">" +
               detail::fmtg(y) + "</text>\n";
    }

    // Axis frame and labels.
    svg += "<rect x=\"" + detail::fmt2(left) + "\" y=\"" + detail::fmt2(top) + "\" width=\"" +
           detail::fmt2(right - left) + "\" height=\"" + detail::fmt2(bottom - top) +
           "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + detail::fmt2((left + right) / 2.0) + "\" y=\"" + detail::fmt2(bottom + 44.0) +
           "\" font-size=\"15\" text-anchor=\"middle\" fill=\"#222222\">" + detail::xml_escape(axes.x_label) +
           "</text>\n";
    svg += "<text x=\"24\" y=\"" + detail::fmt2((top + bottom) / 2.0) +
           "\" font-size=\"15\" text-anchor=\"middle\" fill=\"#222222\" transform=\"rotate(-90 24 " +
           detail::fmt2((top + bottom) / 2.0) + ")\">" + detail::xml_escape(axes.y_label) + "</text>\n";

    // One polyline per run of consecutive plottable samples, so pole gaps break
    // the trace instead of being bridged.
    for (std::size_t i = 0; i < series.size(); ++i) {
        std::string points;
        const auto flush = [&]() {
            if (points.empty()) return;
            svg += "<polyline fill=\"none\" stroke=\"";
            svg += detail::series_color(i);
            svg += "\" stroke-width=\"1.8\" points=\"" + points + "\"/>\n";
            points.clear();
        };
        for (const auto& sample : series[i].samples) {
            if (sample.pole || !std::isfinite(sample.magnitude_db) || !(sample.omega > 0.0)) {
                flush();
                continue;
            }
            const double y = std::max(sample.magnitude_db, kDbFloor);
            if (!points.empty()) points += ' ';
            points += detail::fmt2(px(std::log10(sample.omega))) + ',' + detail::fmt2(py(y));
        }
        flush();
    }

    // Legend, one row per series.
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double ly = top + 18.0 + 20.0 * static_cast<double>(i);
        svg += "<line x1=\"" + detail::fmt2(right - 180.0) + "\" y1=\"" + detail::fmt2(ly) + "\" x2=\"" +
               detail::fmt2(right - 150.0) + "\" y2=\"" + detail::fmt2(ly) + "\" stroke=\"";
        svg += detail::series_color(i);
        svg += "\" stroke-width=\"2.5\"/>\n";
        svg += "<text x=\"" + detail::fmt2(right - 144.0) + "\" y=\"" + detail::fmt2(ly + 4.0) +
               "\" font-size=\"13\" fill=\"#222222\">" + detail::xml_escape(series[i].label) + "</text>\n";
    }

    svg += "</svg>\n";

    auto out = detail::open_for_write(path);
    out << svg;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace fofilter
