#include "ionshape/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ionshape/errors.hpp"
#include "ionshape/io_csv.hpp"

namespace ionshape {

namespace {

struct Rgb {
    double r, g, b;
};

// coarse viridis control points
constexpr Rgb kViridis[] = {
    {0.267, 0.005, 0.329}, {0.283, 0.141, 0.458}, {0.254, 0.265, 0.530},
    {0.207, 0.372, 0.553}, {0.164, 0.471, 0.558}, {0.128, 0.567, 0.551},
    {0.135, 0.659, 0.518}, {0.267, 0.749, 0.441}, {0.478, 0.821, 0.318},
    {0.741, 0.873, 0.150}, {0.993, 0.906, 0.144}};

std::string color(double v) {
    v = std::clamp(v, 0.0, 1.0);
    const int n = static_cast<int>(std::size(kViridis)) - 1;
    const double x = v * n;
    const int i = std::min(static_cast<int>(x), n - 1);
    const double f = x - i;
    const Rgb c{kViridis[i].r + f * (kViridis[i + 1].r - kViridis[i].r),
                kViridis[i].g + f * (kViridis[i + 1].g - kViridis[i].g),
                kViridis[i].b + f * (kViridis[i + 1].b - kViridis[i].b)};
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", static_cast<int>(255 * c.r + 0.5),
                  static_cast<int>(255 * c.g + 0.5), static_cast<int>(255 * c.b + 0.5));
    return buf;
}

}  // namespace

std::string heatmap_svg(const Eigen::MatrixXd& matrix, const HeatmapOptions& options) {
    if (matrix.size() == 0) throw ValidationError("empty matrix");
    if (!matrix.allFinite()) throw ValidationError("heatmap entries must be finite");

    const int rows = static_cast<int>(matrix.rows());
    const int cols = static_cast<int>(matrix.cols());
    const int cell = std::max(1, options.cell_size);
    const int margin_left = 60, margin_top = options.title.empty() ? 20 : 44;
    const int margin_bottom = 42, bar_width = 18, bar_gap = 24;
    const int width = margin_left + cols * cell + bar_gap + bar_width + 58;
    const int height = margin_top + rows * cell + margin_bottom;

    const double vmax = std::max(matrix.cwiseAbs().maxCoeff(), 1e-300);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    if (!options.title.empty()) {
        svg << "<text x=\"" << margin_left << "\" y=\"24\" font-family=\"sans-serif\" "
               "font-size=\"15\">" << options.title << "</text>\n";
    }

    // cells: row 0 of the matrix at the bottom (mode index increases upward)
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const double v = std::abs(matrix(r, c)) / vmax;
            const int x = margin_left + c * cell;
            const int y = margin_top + (rows - 1 - r) * cell;
            svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell
                << "\" height=\"" << cell << "\" fill=\"" << color(v) << "\"/>\n";
        }
    }

    // axis labels
    svg << "<text x=\"" << margin_left + cols * cell / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << options.x_label << "</text>\n";
    svg << "<text x=\"16\" y=\"" << margin_top + rows * cell / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " << margin_top + rows * cell / 2 << ")\">"
        << options.y_label << "</text>\n";

    // color scale bar
    const int bar_x = margin_left + cols * cell + bar_gap;
    const int bar_h = rows * cell;
    const int steps = 64;
    for (int i = 0; i < steps; ++i) {
        const double v = 1.0 - static_cast<double>(i) / (steps - 1);
        const int y = margin_top + i * bar_h / steps;
        const int hstep = (i + 1) * bar_h / steps - i * bar_h / steps;
        svg << "<rect x=\"" << bar_x << "\" y=\"" << y << "\" width=\"" << bar_width
            << "\" height=\"" << hstep + 1 << "\" fill=\"" << color(v) << "\"/>\n";
    }
    svg << "<text x=\"" << bar_x + bar_width + 6 << "\" y=\"" << margin_top + 10
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << format_double(vmax)
        << "</text>\n";
    svg << "<text x=\"" << bar_x + bar_width + 6 << "\" y=\"" << margin_top + bar_h
        << "\" font-family=\"sans-serif\" font-size=\"11\">0</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

void write_heatmap(const Eigen::MatrixXd& matrix, const std::string& path,
                   const HeatmapOptions& options) {
    write_text_file(path, heatmap_svg(matrix, options));
}

}  // namespace ionshape
