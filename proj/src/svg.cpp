#include "listmatch/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "listmatch/textio.hpp"

namespace listmatch {

namespace {

std::string num(double v) { return format_g(v, 6); }

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    void pad() {
        if (!(hi > lo)) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double margin = 0.04 * (hi - lo);
        lo -= margin;
        hi += margin;
    }
};

// Round tick spacing to 1/2/5 times a power of ten.
std::vector<double> ticks(double lo, double hi, int target = 5) {
    const double span = hi - lo;
    double step = std::pow(10.0, std::floor(std::log10(span / target)));
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (span / (step * mult) <= target + 1) {
            step *= mult;
            break;
        }
    }
    std::vector<double> out;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step)
        out.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
    return out;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgPlot::add_series(SvgSeries series) { series_.push_back(std::move(series)); }

void SvgPlot::add_vline(double x, const std::string& label, const std::string& color) {
    vlines_.push_back({x, {label, color}});
}

std::string SvgPlot::render_panel(double ox, double oy, double width, double height) const {
    const double ml = 52, mr = 12, mt = 26, mb = 40;
    const double pw = width - ml - mr;
    const double ph = height - mt - mb;

    Range xr, yr;
    for (const auto& s : series_)
        for (const auto& [x, y] : s.points) {
            xr.include(x);
            yr.include(y);
        }
    for (const auto& [x, rest] : vlines_) xr.include(x);
    if (!std::isfinite(xr.lo) || !std::isfinite(yr.lo))
        throw std::invalid_argument("SvgPlot: no finite data to plot");
    xr.pad();
    yr.pad();

    const auto px = [&](double x) { return ml + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    const auto py = [&](double y) { return mt + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

    std::string s;
    s += "<g transform=\"translate(" + num(ox) + "," + num(oy) + ")\">\n";
    s += "<rect x=\"" + num(ml) + "\" y=\"" + num(mt) + "\" width=\"" + num(pw) +
         "\" height=\"" + num(ph) + "\" fill=\"white\" stroke=\"#444\"/>\n";
    s += "<text x=\"" + num(ml + pw / 2) + "\" y=\"16\" text-anchor=\"middle\" "
         "font-size=\"13\" font-family=\"sans-serif\">" + title_ + "</text>\n";

    for (double t : ticks(xr.lo, xr.hi)) {
        const double x = px(t);
        s += "<line x1=\"" + num(x) + "\" y1=\"" + num(mt + ph) + "\" x2=\"" + num(x) +
             "\" y2=\"" + num(mt + ph + 4) + "\" stroke=\"#444\"/>\n";
        s += "<text x=\"" + num(x) + "\" y=\"" + num(mt + ph + 16) +
             "\" text-anchor=\"middle\" font-size=\"10\" font-family=\"sans-serif\">" +
             format_g(t, 4) + "</text>\n";
    }
    for (double t : ticks(yr.lo, yr.hi)) {
        const double y = py(t);
        s += "<line x1=\"" + num(ml - 4) + "\" y1=\"" + num(y) + "\" x2=\"" + num(ml) +
             "\" y2=\"" + num(y) + "\" stroke=\"#444\"/>\n";
        s += "<text x=\"" + num(ml - 7) + "\" y=\"" + num(y + 3) +
             "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">" +
             format_g(t, 4) + "</text>\n";
    }
    s += "<text x=\"" + num(ml + pw / 2) + "\" y=\"" + num(height - 8) +
         "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" +
         x_label_ + "</text>\n";
    s += "<text x=\"12\" y=\"" + num(mt + ph / 2) +
         "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\" "
         "transform=\"rotate(-90 12 " + num(mt + ph / 2) + ")\">" + y_label_ + "</text>\n";

    for (const auto& [x, meta] : vlines_) {
        const double vx = px(x);
        s += "<line x1=\"" + num(vx) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(vx) +
             "\" y2=\"" + num(mt + ph) + "\" stroke=\"" + meta.second +
             "\" stroke-dasharray=\"5,3\"/>\n";
        s += "<text x=\"" + num(vx + 4) + "\" y=\"" + num(mt + 12) +
             "\" font-size=\"10\" font-family=\"sans-serif\" fill=\"" + meta.second + "\">" +
             meta.first + "</text>\n";
    }

    for (const auto& series : series_) {
        if (series.points.empty()) continue;
        s += "<polyline fill=\"none\" stroke=\"" + series.color + "\" stroke-width=\"1.4\"";
        if (series.dashed) s += " stroke-dasharray=\"4,3\"";
        s += " points=\"";
        for (const auto& [x, y] : series.points)
            s += num(px(x)) + "," + num(py(y)) + " ";
        s += "\"/>\n";
    }

    double ly = mt + 14;
    for (const auto& series : series_) {
        if (series.label.empty()) continue;
        s += "<line x1=\"" + num(ml + 8) + "\" y1=\"" + num(ly - 3) + "\" x2=\"" +
             num(ml + 28) + "\" y2=\"" + num(ly - 3) + "\" stroke=\"" + series.color +
             "\" stroke-width=\"1.4\"" + (series.dashed ? " stroke-dasharray=\"4,3\"" : "") +
             "/>\n";
        s += "<text x=\"" + num(ml + 32) + "\" y=\"" + num(ly) +
             "\" font-size=\"10\" font-family=\"sans-serif\">" + series.label + "</text>\n";
        ly += 13;
    }
    s += "</g>\n";
    return s;
}

void SvgPlot::write_grid(const std::string& path, const std::vector<SvgPlot>& panels,
                         int columns, double panel_width, double panel_height) {
    if (panels.empty() || columns < 1) throw std::invalid_argument("SvgPlot: empty grid");
    const int rows = (static_cast<int>(panels.size()) + columns - 1) / columns;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open SVG output: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
        << num(columns * panel_width) << "\" height=\"" << num(rows * panel_height)
        << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const double ox = static_cast<double>(i % static_cast<std::size_t>(columns)) * panel_width;
        const double oy = static_cast<double>(i / static_cast<std::size_t>(columns)) * panel_height;
        out << panels[i].render_panel(ox, oy, panel_width, panel_height);
    }
    out << "</svg>\n";
}

void SvgPlot::write(const std::string& path) const {
    write_grid(path, {*this}, 1, 640.0, 440.0);
}

}  // namespace listmatch
