// svg.hpp
// Standalone SVG line/scatter charts with no external plotting toolchain.
// Output is byte-deterministic for identical inputs: fixed canvas, fixed
// tick algorithm, coordinates printed with two decimals.

#pragma once
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "energylab/errors.hpp"

namespace energylab {

struct ChartOptions {
    std::string title;
    std::string x_label = "x";
    std::string y_label = "y";
    bool log_x = false;
    bool log_y = false;
    int width = 800;
    int height = 520;
};

namespace detail {

inline std::string fmt2(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string fmt_tick(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
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

// Round tick steps to 1/2/5 times a power of ten.
inline std::vector<double> linear_ticks(double lo, double hi, int target = 6) {
    std::vector<double> ticks;
    if (!(hi > lo)) return {lo};
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    }
    const double first = std::ceil(lo / step) * step;
    for (double t = first; t <= hi + step * 1e-9; t += step) ticks.push_back(t);
    return ticks;
}

inline std::vector<double> log_ticks(double lo, double hi) {
    std::vector<double> ticks;
    const int e0 = static_cast<int>(std::ceil(std::log10(lo) - 1e-9));
    const int e1 = static_cast<int>(std::floor(std::log10(hi) + 1e-9));
    for (int e = e0; e <= e1; ++e) ticks.push_back(std::pow(10.0, e));
    if (ticks.empty()) ticks = {lo, hi};
    return ticks;
}

} // namespace detail

// Render one series as a polyline plus point markers. Points are plotted
// in input order.
inline std::string render_chart(const std::vector<std::pair<double, double>>& points, const ChartOptions& opt) {
    const double ml = 70, mr = 20, mt = opt.title.empty() ? 20 : 44, mb = 50;
    const double pw = opt.width - ml - mr, ph = opt.height - mt - mb;

    for (const auto& [x, y] : points) {
        if (opt.log_x && !(x > 0)) throw domain_error("log-scale x needs positive values");
        if (opt.log_y && !(y > 0)) throw domain_error("log-scale y needs positive values");
    }

    double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
    if (!points.empty()) {
        x_lo = x_hi = points[0].first;
        y_lo = y_hi = points[0].second;
        for (const auto& [x, y] : points) {
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
        if (x_lo == x_hi) {
            x_lo -= opt.log_x ? 0 : 0.5;
            x_hi += 0.5;
            if (opt.log_x) x_lo = x_hi / 2;
        }
        if (y_lo == y_hi) {
            y_lo -= opt.log_y ? 0 : 0.5;
            y_hi += 0.5;
            if (opt.log_y) y_lo = y_hi / 2;
        }
    } else if (opt.log_x || opt.log_y) {
        x_lo = y_lo = 0.1;
        x_hi = y_hi = 1;
    }

    auto tx = [&](double x) {
        const double t = opt.log_x ? (std::log10(x) - std::log10(x_lo)) / (std::log10(x_hi) - std::log10(x_lo))
                                   : (x - x_lo) / (x_hi - x_lo);
        return ml + t * pw;
    };
    auto ty = [&](double y) {
        const double t = opt.log_y ? (std::log10(y) - std::log10(y_lo)) / (std::log10(y_hi) - std::log10(y_lo))
                                   : (y - y_lo) / (y_hi - y_lo);
        return mt + (1 - t) * ph;
    };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.width) + "\" height=\"" +
         std::to_string(opt.height) + "\" viewBox=\"0 0 " + std::to_string(opt.width) + " " +
         std::to_string(opt.height) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!opt.title.empty())
        s += "<text x=\"" + detail::fmt2(opt.width / 2.0) +
             "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
             detail::xml_escape(opt.title) + "</text>\n";

    // Axes.
    s += "<line x1=\"" + detail::fmt2(ml) + "\" y1=\"" + detail::fmt2(mt + ph) + "\" x2=\"" + detail::fmt2(ml + pw) +
         "\" y2=\"" + detail::fmt2(mt + ph) + "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + detail::fmt2(ml) + "\" y1=\"" + detail::fmt2(mt) + "\" x2=\"" + detail::fmt2(ml) +
         "\" y2=\"" + detail::fmt2(mt + ph) + "\" stroke=\"black\"/>\n";

    const auto xticks = opt.log_x ? detail::log_ticks(x_lo, x_hi) : detail::linear_ticks(x_lo, x_hi);
    for (double t : xticks) {
        if (t < x_lo - 1e-12 || t > x_hi * (1 + 1e-12) + 1e-12) continue;
        const double px = tx(t);
        s += "<line x1=\"" + detail::fmt2(px) + "\" y1=\"" + detail::fmt2(mt + ph) + "\" x2=\"" + detail::fmt2(px) +
             "\" y2=\"" + detail::fmt2(mt + ph + 5) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + detail::fmt2(px) + "\" y=\"" + detail::fmt2(mt + ph + 18) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + detail::fmt_tick(t) +
             "</text>\n";
    }
    const auto yticks = opt.log_y ? detail::log_ticks(y_lo, y_hi) : detail::linear_ticks(y_lo, y_hi);
    for (double t : yticks) {
        if (t < y_lo - 1e-12 || t > y_hi * (1 + 1e-12) + 1e-12) continue;
        const double py = ty(t);
        s += "<line x1=\"" + detail::fmt2(ml - 5) + "\" y1=\"" + detail::fmt2(py) + "\" x2=\"" + detail::fmt2(ml) +
             "\" y2=\"" + detail::fmt2(py) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + detail::fmt2(ml - 8) + "\" y=\"" + detail::fmt2(py + 4) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + detail::fmt_tick(t) +
             "</text>\n";
    }

    s += "<text x=\"" + detail::fmt2(ml + pw / 2) + "\" y=\"" + detail::fmt2(mt + ph + 38) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + detail::xml_escape(opt.x_label) +
         "</text>\n";
    s += "<text x=\"16\" y=\"" + detail::fmt2(mt + ph / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 " +
         detail::fmt2(mt + ph / 2) + ")\">" + detail::xml_escape(opt.y_label) + "</text>\n";

    if (points.size() > 1) {
        s += "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (i) s += ' ';
            s += detail::fmt2(tx(points[i].first)) + "," + detail::fmt2(ty(points[i].second));
        }
        s += "\"/>\n";
    }
    for (const auto& [x, y] : points)
        s += "<circle cx=\"" + detail::fmt2(tx(x)) + "\" cy=\"" + detail::fmt2(ty(y)) +
             "\" r=\"3\" fill=\"#1f6fb2\"/>\n";

    s += "</svg>\n";
    return s;
}

} // namespace energylab
