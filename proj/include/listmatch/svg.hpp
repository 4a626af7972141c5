// Minimal hand-emitted SVG line plots; the CSVs are the ground truth and
// these are pure rendering.
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace listmatch {

struct SvgSeries {
    std::string label;
    std::string color;
    bool dashed = false;
    std::vector<std::pair<double, double>> points;
};

class SvgPlot {
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label);

    void add_series(SvgSeries series);
    void add_vline(double x, const std::string& label, const std::string& color);

    // Renders one panel as an <svg> fragment translated to (ox, oy).
    std::string render_panel(double ox, double oy, double width, double height) const;

    static void write_grid(const std::string& path,
                           const std::vector<SvgPlot>& panels, int columns,
                           double panel_width = 420.0, double panel_height = 300.0);

    void write(const std::string& path) const;

private:
    std::string title_, x_label_, y_label_;
    std::vector<SvgSeries> series_;
    std::vector<std::pair<double, std::pair<std::string, std::string>>> vlines_;
};

}  // namespace listmatch
