#pragma once

#include "flexagg/box.hpp"
#include "flexagg/polygon.hpp"

#include <string>
#include <vector>

namespace flexagg {

struct SvgShape {
    std::vector<Point2> points;   // closed outline
    std::string stroke = "#000000";
    std::string fill = "none";
    double fill_opacity = 0.0;
    std::string legend;           // empty: not listed
};

struct SvgPanel {
    std::string title;
    std::vector<SvgShape> shapes;
};

SvgShape svg_shape(const VPolygon& poly, std::string stroke, std::string fill, double opacity, std::string legend);
SvgShape svg_shape(const AlignedBox& box, std::string stroke, std::string fill, double opacity, std::string legend);

// Fill colour for decomposition stage s (cycles after eight stages).
const char* stage_colour(int stage);

// Panels laid out in a grid, each scaled to its own shapes with equal axes and
// a legend of the distinct labels. Coordinates are printed with fixed precision
// so the output bytes depend only on the input.
std::string render_svg(const std::vector<SvgPanel>& panels, int panel_size = 360);

} // namespace flexagg
