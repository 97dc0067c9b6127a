#include "evs/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace evs {

namespace {

constexpr int kMarginLeft = 58;
constexpr int kMarginRight = 14;
constexpr int kMarginTop = 30;
constexpr int kMarginBottom = 44;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (lo == hi) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

// A handful of round tick positions covering [lo, hi].
std::vector<double> ticks(double lo, double hi) {
    const double span = hi - lo;
    const double raw = span / 4.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * mult >= raw) {
            step = mag * mult;
            break;
        }
    }
    std::vector<double> out;
    for (double v = std::ceil(lo / step) * step; v <= hi + step * 1e-9; v += step)
        out.push_back(std::fabs(v) < step * 1e-9 ? 0.0 : v);
    return out;
}

void render_chart(std::string& out, const Chart& chart, double ox, double oy, int w, int h) {
    Range rx, ry;
    for (const auto& s : chart.series) {
        for (double v : s.x) rx.include(v);
        for (double v : s.y) ry.include(v);
    }
    rx.pad();
    ry.pad();

    const double px0 = ox + kMarginLeft, px1 = ox + w - kMarginRight;
    const double py0 = oy + h - kMarginBottom, py1 = oy + kMarginTop;
    const auto sx = [&](double v) { return px0 + (v - rx.lo) / (rx.hi - rx.lo) * (px1 - px0); };
    const auto sy = [&](double v) { return py0 + (v - ry.lo) / (ry.hi - ry.lo) * (py1 - py0); };

    out += "<rect x=\"" + fmt(px0) + "\" y=\"" + fmt(py1) + "\" width=\"" + fmt(px1 - px0) +
           "\" height=\"" + fmt(py0 - py1) + "\" fill=\"none\" stroke=\"#444\"/>\n";
    out += "<text x=\"" + fmt(ox + w / 2.0) + "\" y=\"" + fmt(oy + 18) +
           "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" +
           chart.title + "</text>\n";

    for (double tv : ticks(rx.lo, rx.hi)) {
        const double x = sx(tv);
        out += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(py0) + "\" x2=\"" + fmt(x) + "\" y2=\"" +
               fmt(py0 + 4) + "\" stroke=\"#444\"/>\n";
        out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(py0 + 16) +
               "\" text-anchor=\"middle\" font-size=\"10\" font-family=\"sans-serif\">" + fmt(tv) +
               "</text>\n";
    }
    for (double tv : ticks(ry.lo, ry.hi)) {
        const double y = sy(tv);
        out += "<line x1=\"" + fmt(px0 - 4) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(px0) +
               "\" y2=\"" + fmt(y) + "\" stroke=\"#444\"/>\n";
        out += "<text x=\"" + fmt(px0 - 7) + "\" y=\"" + fmt(y + 3) +
               "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">" + fmt(tv) +
               "</text>\n";
    }
    out += "<text x=\"" + fmt((px0 + px1) / 2.0) + "\" y=\"" + fmt(py0 + 32) +
           "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" +
           chart.x_label + "</text>\n";
    out += "<text x=\"" + fmt(px0 - 44) + "\" y=\"" + fmt((py0 + py1) / 2.0) +
           "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\" transform=\"rotate(-90 " +
           fmt(px0 - 44) + " " + fmt((py0 + py1) / 2.0) + ")\">" + chart.y_label + "</text>\n";

    int legend_row = 0;
    for (const auto& s : chart.series) {
        if (s.x.empty()) continue;
        out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) out += ' ';
            out += fmt(sx(s.x[i])) + "," + fmt(sy(s.y[i]));
        }
        out += "\"/>\n";
        if (!s.label.empty()) {
            const double ly = py1 + 12 + 13 * legend_row++;
            out += "<line x1=\"" + fmt(px1 - 58) + "\" y1=\"" + fmt(ly - 3) + "\" x2=\"" +
                   fmt(px1 - 42) + "\" y2=\"" + fmt(ly - 3) + "\" stroke=\"" + s.color +
                   "\" stroke-width=\"2\"/>\n";
            out += "<text x=\"" + fmt(px1 - 38) + "\" y=\"" + fmt(ly) +
                   "\" font-size=\"10\" font-family=\"sans-serif\">" + s.label + "</text>\n";
        }
    }
}

}  // namespace

std::string render_panel(std::span<const Chart> charts, int cols, int w, int h) {
    if (cols < 1) cols = 1;
    const int n = static_cast<int>(charts.size());
    const int rows = (n + cols - 1) / cols;
    const int width = cols * w;
    const int height = rows * h;

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
           " " + std::to_string(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (int k = 0; k < n; ++k) {
        const double ox = static_cast<double>(k % cols) * w;
        const double oy = static_cast<double>(k / cols) * h;
        render_chart(out, charts[k], ox, oy, w, h);
    }
    out += "</svg>\n";
    return out;
}

Chart projection_chart_3d(std::span<const double> xs, std::span<const double> ys,
                          std::span<const double> zs, const std::string& title) {
    // Oblique cabinet projection: u = x + 0.4 y, v = z + 0.4 y.
    Series s;
    s.x.reserve(xs.size());
    s.y.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        s.x.push_back(xs[i] + 0.4 * ys[i]);
        s.y.push_back(zs[i] + 0.4 * ys[i]);
    }
    Chart chart;
    chart.title = title;
    chart.x_label = "E + 0.4 V";
    chart.y_label = "S + 0.4 V";
    chart.series.push_back(std::move(s));
    return chart;
}

}  // namespace evs
