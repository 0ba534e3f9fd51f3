#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "ionshape/equilibrium.hpp"
#include "ionshape/trap.hpp"

namespace ionshape {

enum class IonState { Ell, Rydberg };

// Which ions are Rydberg-excited, and the per-state transverse frequencies.
struct ElectronicAssignment {
    std::vector<IonState> states;
    StateFrequencies frequencies;

    int size() const { return static_cast<int>(states.size()); }
    double frequency_of(int ion_0based) const {
        return states[ion_0based] == IonState::Rydberg ? frequencies.omega_ryd
                                                       : frequencies.omega_ell;
    }

    static ElectronicAssignment all_ell(int n, const StateFrequencies& freqs);
    // Rydberg ion indices are 1-based, matching user-facing ion numbering.
    static ElectronicAssignment with_rydberg(int n, const StateFrequencies& freqs,
                                             const std::vector<int>& rydberg_ions_1based);
};

// Transverse Hessian in units of omega_s^2:
//   diag: (omega_m/omega_s)^2 + 1/2 - (3 k4/2) z_m^2 - sum_{k!=m} 1/|z_k-z_m|^3
//   off:  1/|z_m-z_n|^3
Eigen::MatrixXd build_hessian(const ChainConfiguration& config,
                              const ElectronicAssignment& assignment);

// Columns of `vectors` are orthonormal eigenvectors, ascending frequency,
// sign fixed so the largest-magnitude entry of each column is positive.
struct ModeDecomposition {
    Eigen::VectorXd frequencies;  // units of omega_s
    Eigen::MatrixXd vectors;

    int size() const { return static_cast<int>(frequencies.size()); }
};

ModeDecomposition diagonalize(const Eigen::MatrixXd& hessian);

struct LocalizedModes {
    std::vector<int> mode_indices;     // representative eigenmode per selected mode
    std::vector<double> weights;       // subcrystal weight, in [0, 1]
    std::vector<double> frequencies;   // Rayleigh frequency of the selected mode
};

// Weight of mode j on the subcrystal is sum_{m in set} B_mj^2. Accidentally
// near-degenerate eigenmodes hybridize localized and spectator character
// (exactly so for mirror-symmetric Rydberg patterns); modes closer in
// frequency than `degeneracy_tolerance` are therefore rotated into the
// eigenbasis of the subcrystal overlap matrix before thresholding, which
// recovers the localized combination without changing the spanned space.
// Pass 0 to threshold raw eigenvector weights instead.
LocalizedModes localized_mode_analysis(const ModeDecomposition& modes,
                                       const std::vector<int>& subcrystal_1based,
                                       double weight_threshold,
                                       double degeneracy_tolerance = 0.2);

// Decomposition of the Hessian restricted to a contiguous subcrystal.
// Diagonal entries keep the Coulomb sums over all N ions (spectators pinned).
ModeDecomposition truncated_subcrystal_modes(const ChainConfiguration& config,
                                             const ElectronicAssignment& assignment,
                                             std::pair<int, int> subcrystal_1based_inclusive);

}  // namespace ionshape
