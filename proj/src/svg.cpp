#include "flexagg/svg.hpp"

#include "flexagg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace flexagg {

SvgShape svg_shape(const VPolygon& poly, std::string stroke, std::string fill, double opacity, std::string legend) {
    return {poly.vertices(), std::move(stroke), std::move(fill), opacity, std::move(legend)};
}

SvgShape svg_shape(const AlignedBox& box, std::string stroke, std::string fill, double opacity, std::string legend) {
    if (box.dim() != 2) throw InvalidArgument("svg_shape: box is not 2D");
    return {corners_2d(box), std::move(stroke), std::move(fill), opacity, std::move(legend)};
}

const char* stage_colour(int stage) {
    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
    return palette[static_cast<std::size_t>(std::max(stage, 0)) % 8];
}

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    return s == "-0.00" ? "0.00" : s;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
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

} // namespace

std::string render_svg(const std::vector<SvgPanel>& panels, int panel_size) {
    if (panels.empty()) throw InvalidArgument("render_svg: nothing to draw");
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(panels.size()))));
    const int rows = (static_cast<int>(panels.size()) + cols - 1) / cols;
    const double margin = 24.0;
    const double title_h = 20.0;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cols * panel_size << "\" height=\""
        << rows * panel_size << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    for (std::size_t p = 0; p < panels.size(); ++p) {
        const SvgPanel& panel = panels[p];
        const double ox = static_cast<double>(static_cast<int>(p) % cols * panel_size);
        const double oy = static_cast<double>(static_cast<int>(p) / cols * panel_size);

        double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
        for (const auto& s : panel.shapes)
            for (const Point2& q : s.points) {
                xmin = std::min(xmin, q.x), xmax = std::max(xmax, q.x);
                ymin = std::min(ymin, q.y), ymax = std::max(ymax, q.y);
            }
        if (!std::isfinite(xmin)) xmin = ymin = 0.0, xmax = ymax = 1.0;
        const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
        const double inner = panel_size - 2.0 * margin - title_h;
        const double scale = inner / span;
        const double cx = ox + margin + 0.5 * (inner - (xmax - xmin) * scale);
        const double cy = oy + margin + title_h + 0.5 * (inner + (ymax - ymin) * scale);
        auto X = [&](double x) { return cx + (x - xmin) * scale; };
        auto Y = [&](double y) { return cy - (y - ymin) * scale; };

        out << "<g>\n";
        out << "<text x=\"" << num(ox + margin) << "\" y=\"" << num(oy + margin + 10.0) << "\" font-weight=\"bold\">"
            << escape(panel.title) << "</text>\n";
        for (const auto& s : panel.shapes) {
            if (s.points.empty()) continue;
            out << "<polygon points=\"";
            for (std::size_t i = 0; i < s.points.size(); ++i)
                out << (i ? " " : "") << num(X(s.points[i].x)) << "," << num(Y(s.points[i].y));
            out << "\" stroke=\"" << s.stroke << "\" fill=\"" << s.fill << "\" fill-opacity=\"" << num(s.fill_opacity)
                << "\" stroke-width=\"1\"/>\n";
        }
        std::vector<std::pair<std::string, std::string>> legend;
        for (const auto& s : panel.shapes) {
            if (s.legend.empty()) continue;
            const bool seen = std::any_of(legend.begin(), legend.end(), [&](const auto& l) { return l.first == s.legend; });
            if (!seen) legend.emplace_back(s.legend, s.fill == "none" ? s.stroke : s.fill);
        }
        for (std::size_t i = 0; i < legend.size(); ++i) {
            const double ly = oy + margin + title_h + 14.0 * static_cast<double>(i);
            const double lx = ox + panel_size - margin - 110.0;
            out << "<rect x=\"" << num(lx) << "\" y=\"" << num(ly) << "\" width=\"10\" height=\"10\" fill=\""
                << legend[i].second << "\"/>\n";
            out << "<text x=\"" << num(lx + 14.0) << "\" y=\"" << num(ly + 9.0) << "\">" << escape(legend[i].first)
                << "</text>\n";
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace flexagg
