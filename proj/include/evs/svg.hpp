#pragma once

#include <span>
#include <string>
#include <vector>

namespace evs {

/// One polyline series for a chart.
struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f6fb2";
    std::string label;
};

/// A single chart: axes, ticks, series polylines, title. Coordinates are
/// data-space; the renderer fits them into the given pixel box.
struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
};

/// Renders charts into a fixed grid (cols columns) of w-by-h pixel panels.
/// Output is plain SVG with no timestamps or external references, so equal
/// inputs give byte-identical files.
std::string render_panel(std::span<const Chart> charts, int cols, int w = 420, int h = 320);

/// Oblique projection of a 3D polyline for the phase-portrait panel.
Chart projection_chart_3d(std::span<const double> xs, std::span<const double> ys,
                          std::span<const double> zs, const std::string& title);

}  // namespace evs
