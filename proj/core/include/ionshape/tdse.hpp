#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "ionshape/gate.hpp"

namespace ionshape {

// Direct Schrodinger integration of the interaction-picture spin-phonon
// Hamiltonian for a handful of ions and modes, used to verify the Magnus
// coefficients. sigma^z is conserved, so each spin configuration evolves in
// its own driven-oscillator block.

struct ReducedModeSystem {
    std::vector<int> ions_1based;        // driven/qubit ions, <= 3
    Eigen::VectorXd mode_frequencies;    // <= 2 modes, units of omega_s
    Eigen::MatrixXd couplings;           // eta_j * B_mj, rows follow ions_1based

    int n_ions() const { return static_cast<int>(ions_1based.size()); }
    int n_modes() const { return static_cast<int>(mode_frequencies.size()); }
};

struct TdseOptions {
    int fock_cutoff = 20;          // highest retained Fock level per mode
    double steps_per_period = 200; // RK4 resolution of the fastest frequency
};

struct TdseResult {
    // |<psi_magnus | psi_tdse>| over the full spin+phonon state.
    double overlap_magnitude = 0.0;
    std::complex<double> overlap = 0.0;
    // Measured <b_j> per spin sector (sector-major), for displacement checks.
    Eigen::MatrixXcd sector_displacements;   // sectors x modes
    Eigen::MatrixXcd predicted_displacements;
    double top_fock_population = 0.0;
    bool cutoff_warning = false;   // top-level population above 1e-6
    double norm_drift = 0.0;
};

// Initial phonons: coherent amplitude per mode (zero = ground state). Spins
// start in the |+>^n product state.
TdseResult tdse_oracle(const PulseSchedule& schedule, const ReducedModeSystem& system,
                       const TdseOptions& options,
                       const Eigen::VectorXcd& initial_coherent_amplitudes);

}  // namespace ionshape
