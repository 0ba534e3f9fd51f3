#pragma once

#include <Eigen/Dense>

#include "ionshape/modes.hpp"

namespace ionshape {

// Duschinsky map between bare and shaped normal coordinates, Q_e = T Q_g,
// plus the frequency-weighted Bogoliubov blocks
//   T_+- = L_e^{-1} T L_g +- P_e^{-1} T P_g,
// which only depend on sqrt(omega_shaped/omega_bare) ratios. The blocks obey
// (1/4)(T_+ T_+^t - T_- T_-^t) = I.
struct DuschinskyMap {
    Eigen::MatrixXd coordinate_map;   // T, rows shaped, cols bare
    Eigen::MatrixXd t_plus;
    Eigen::MatrixXd t_minus;
    Eigen::VectorXd bare_frequencies;
    Eigen::VectorXd shaped_frequencies;

    int size() const { return static_cast<int>(bare_frequencies.size()); }
};

DuschinskyMap duschinsky_map(const ModeDecomposition& bare, const ModeDecomposition& shaped);

// C_g = Re(C_e) L_e^{-1} T L_g + i Im(C_e) P_e^{-1} T P_g.
// Rows are ions, columns shaped modes in, bare modes out.
Eigen::MatrixXcd bare_frame_displacements(const Eigen::MatrixXcd& shaped_coeffs,
                                          const DuschinskyMap& map);

}  // namespace ionshape
