#pragma once

#include <Eigen/Dense>
#include <string>

namespace ionshape {

// |matrix| rendered as an SVG heatmap: one row per mode, one column per ion,
// viridis-style linear color map with an embedded scale bar.
struct HeatmapOptions {
    std::string x_label = "ion index";
    std::string y_label = "mode index";
    std::string title;
    int cell_size = 6;
};

std::string heatmap_svg(const Eigen::MatrixXd& matrix, const HeatmapOptions& options = {});

void write_heatmap(const Eigen::MatrixXd& matrix, const std::string& path,
                   const HeatmapOptions& options = {});

}  // namespace ionshape
