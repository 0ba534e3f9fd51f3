#include "ionshape/fidelity.hpp"

#include <cmath>
#include <set>

namespace ionshape {

void GateLayout::validate(int n_ions) const {
    std::set<int> seen;
    for (const auto& pair : pairs_1based) {
        for (int ion : {pair.first, pair.second}) {
            if (ion < 1 || ion > n_ions) throw ValidationError("gate ion index out of range");
            if (!seen.insert(ion).second) throw ValidationError("gate pairs must be disjoint");
        }
    }
}

double gate_fidelity(const Eigen::MatrixXcd& bare_coeffs, const PhaseMatrix& phases,
                     const ThermalState& thermal, const GateLayout& layout) {
    const int n_modes = static_cast<int>(bare_coeffs.cols());
    if (thermal.gamma.size() != n_modes) throw ValidationError("thermal state size mismatch");
    const int n_ions = static_cast<int>(bare_coeffs.rows());
    layout.validate(n_ions);
    if (phases.phi.rows() != n_ions || phases.phi.cols() != n_ions) {
        throw ValidationError("phase matrix size mismatch");
    }
    if ((phases.phi - phases.phi.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw ValidationError("phase matrix must be symmetric");
    }

    const auto qubits = layout.qubit_ions_1based();

    // beta_p^j = sum_m sigma_m^j C_g(m, p) over the four qubit ions
    Eigen::MatrixXcd beta(16, n_modes);
    for (int j = 0; j < 16; ++j) {
        Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(n_modes);
        for (int slot = 0; slot < 4; ++slot) {
            row += spin_sign(j, slot) * bare_coeffs.row(qubits[slot] - 1);
        }
        beta.row(j) = row;
    }

    // theta_j = sum over ordered qubit pairs of phi sigma sigma
    std::array<double, 16> theta{};
    std::array<double, 16> ideal{};
    for (int j = 0; j < 16; ++j) {
        double t = 0.0;
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                if (a == b) continue;
                t += phases.phi(qubits[a] - 1, qubits[b] - 1) * spin_sign(j, a) * spin_sign(j, b);
            }
        }
        theta[j] = t;
        ideal[j] = spin_sign(j, 0) * spin_sign(j, 1) + spin_sign(j, 2) * spin_sign(j, 3);
    }

    Eigen::VectorXd coth(n_modes);
    for (int p = 0; p < n_modes; ++p) coth[p] = 1.0 / std::tanh(0.5 * thermal.gamma[p]);

    std::complex<double> f = 0.0;
    for (int j = 0; j < 16; ++j) {
        for (int k = 0; k < 16; ++k) {
            std::complex<double> ex = 0.0;
            for (int p = 0; p < n_modes; ++p) {
                const std::complex<double> bj = beta(j, p);
                const std::complex<double> bk = beta(k, p);
                ex += 0.5 * (bj * std::conj(bk) - std::conj(bj) * bk -
                             std::norm(bj - bk) * coth[p]);
            }
            const std::complex<double> phase(0.0, M_PI / 4.0 * (ideal[k] - ideal[j]) +
                                                      (theta[j] - theta[k]));
            f += std::exp(phase + ex);
        }
    }
    f /= 256.0;

    if (std::abs(f.imag()) > 1e-8) {
        throw ConsistencyError("fidelity accumulated a non-Hermitian imaginary part");
    }
    return std::clamp(f.real(), 0.0, 1.0);
}

}  // namespace ionshape
