#include "ionshape/duschinsky.hpp"

#include <cmath>

namespace ionshape {

DuschinskyMap duschinsky_map(const ModeDecomposition& bare, const ModeDecomposition& shaped) {
    const int n = bare.size();
    if (shaped.size() != n) throw ValidationError("decomposition dimension mismatch");

    DuschinskyMap map;
    // Normal coordinates: Q = B^t x with eigenvectors as columns of B, so
    // Q_e = (B_e^t B_g) Q_g.
    map.coordinate_map = shaped.vectors.transpose() * bare.vectors;
    map.bare_frequencies = bare.frequencies;
    map.shaped_frequencies = shaped.frequencies;
    map.t_plus.resize(n, n);
    map.t_minus.resize(n, n);
    for (int j = 0; j < n; ++j) {
        for (int p = 0; p < n; ++p) {
            const double r = std::sqrt(shaped.frequencies[j] / bare.frequencies[p]);
            map.t_plus(j, p) = map.coordinate_map(j, p) * (r + 1.0 / r);
            map.t_minus(j, p) = map.coordinate_map(j, p) * (r - 1.0 / r);
        }
    }
    const Eigen::MatrixXd comm =
        0.25 * (map.t_plus * map.t_plus.transpose() - map.t_minus * map.t_minus.transpose());
    if ((comm - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10) {
        throw ConsistencyError("Bogoliubov blocks violate bosonic commutation");
    }
    return map;
}

Eigen::MatrixXcd bare_frame_displacements(const Eigen::MatrixXcd& shaped_coeffs,
                                          const DuschinskyMap& map) {
    const int n = map.size();
    if (shaped_coeffs.cols() != n) throw ValidationError("coefficient column count mismatch");

    // L_e^{-1} T L_g and P_e^{-1} T P_g carry sqrt(omega_e/omega_g) and its
    // inverse; both equal (T_+ +- T_-)/2.
    const Eigen::MatrixXd lmap = 0.5 * (map.t_plus + map.t_minus);
    const Eigen::MatrixXd pmap = 0.5 * (map.t_plus - map.t_minus);
    return shaped_coeffs.real() * lmap +
           std::complex<double>(0.0, 1.0) * (shaped_coeffs.imag() * pmap);
}

}  // namespace ionshape
