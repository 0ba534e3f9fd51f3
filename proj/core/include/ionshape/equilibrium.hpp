#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "ionshape/errors.hpp"

namespace ionshape {

// Equilibrium axial positions, scaled by l_s, strictly increasing.
struct ChainConfiguration {
    Eigen::VectorXd positions;
    double quartic_ratio = 0.0;

    int size() const { return static_cast<int>(positions.size()); }
};

struct AxialEnergyGradient {
    double energy = 0.0;        // units of M omega_s^2 l_s^2
    Eigen::VectorXd gradient;
};

// u = sum_m (-z_m^2/2 + k4 z_m^4/4) + sum_{m<n} 1/|z_m - z_n|
AxialEnergyGradient scaled_axial_energy_gradient(const Eigen::VectorXd& positions, double k4);

Eigen::MatrixXd scaled_axial_hessian(const Eigen::VectorXd& positions, double k4);

struct EquilibriumOptions {
    int max_iterations = 500;
    double gradient_tolerance = 1e-10;  // infinity norm
};

struct EquilibriumReport {
    int iterations = 0;
    double gradient_norm = 0.0;
    std::vector<double> energy_trace;  // energy after each accepted step
};

// Damped Newton on the axial gradient with ordered-position line search.
// Default seed: uniform spacing across the single-ion turning points
// +-sqrt(2/k4), rescaled once by a 1-D energy search before iterating.
ChainConfiguration solve_equilibrium(int n_ions, double k4,
                                     const std::optional<Eigen::VectorXd>& initial_guess = {},
                                     const EquilibriumOptions& options = {},
                                     EquilibriumReport* report = nullptr);

struct SpacingStatistics {
    double mean = 0.0;
    double relative_std = 0.0;
    double min = 0.0;
    double max = 0.0;
};

// Nearest-neighbor gap statistics over the central ceil(fraction*N) ions.
SpacingStatistics spacing_statistics(const ChainConfiguration& config, double central_fraction);

}  // namespace ionshape
