#pragma once

#include <string>
#include <vector>

namespace lsqb {

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

/// Self-contained SVG line plot. The y axis is logarithmic when the positive
/// y values span more than two decades; non-positive values are then skipped.
std::string render_line_plot(const std::string& title, const std::string& x_label,
                             const std::string& y_label, const std::vector<PlotSeries>& series);

}  // namespace lsqb
