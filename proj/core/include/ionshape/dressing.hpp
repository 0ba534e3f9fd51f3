#pragma once

#include <complex>
#include <vector>

#include "ionshape/errors.hpp"

namespace ionshape {

// Microwave-dressed Rydberg pair {nP, n'S} driven from a low-lying D state.
// All frequencies in rad/s; the rotating-wave Hamiltonian is the model
// boundary (bare fields are absorbed into the four parameters).
struct DressedSystem {
    double delta_s = 0.0;   // rad/s
    double delta_p = 0.0;   // rad/s
    double omega_laser = 0.0;
    double omega_mw = 0.0;

    double delta_plus() const { return delta_p + delta_s; }
    double delta_minus() const { return delta_p - delta_s; }
    void validate() const;
};

struct DressedStates {
    double c_plus = 0.0, c_minus = 0.0;   // mixing coefficients, C+ C- = -1
    double n_plus = 0.0, n_minus = 0.0;   // normalizations 1/sqrt(1+C^2)
    double e_plus = 0.0, e_minus = 0.0;   // dressed energies, rad/s
    double omega_plus = 0.0, omega_minus = 0.0;  // effective D <-> |+-> couplings
};

DressedStates dressed_analysis(const DressedSystem& sys);

// P_+- = N^2 (C^2 P_nP + P_nS); mixing |C| = sqrt(-P_nS/P_nP) nulls it.
struct DressedPolarizability {
    double p_plus = 0.0;
    double p_minus = 0.0;
    bool zero_crossing_exists = false;
    double zero_crossing_mixing = 0.0;  // |C| with P = 0
};

DressedPolarizability dressed_polarizability(const DressedStates& states, double p_np,
                                             double p_ns);

// Amplitudes in the {D, P, S} basis sampled along a trajectory, plus the
// populations of the (instantaneous) dressed states.
struct ThreeLevelSample {
    double time = 0.0;  // s
    std::complex<double> c_d, c_p, c_s;
    double pop_minus = 0.0;
    double pop_plus = 0.0;

    double pop_d() const { return std::norm(c_d); }
    double pop_p() const { return std::norm(c_p); }
    double pop_s() const { return std::norm(c_s); }
};

struct ThreeLevelTrajectory {
    std::vector<ThreeLevelSample> samples;
    double norm_drift = 0.0;
};

struct IntegrationControl {
    // RK4 step <= 1/(50 max(Omega_MW, |Delta_+-|)); smaller factors refine.
    double step_safety = 50.0;
    int max_samples = 4000;  // trajectory thinning only; integration is full-rate
};

// Constant Hamiltonian evolution from |D> (or a custom initial state).
ThreeLevelTrajectory evolve_three_level(const DressedSystem& sys, double duration,
                                        const IntegrationControl& control = {},
                                        const std::vector<std::complex<double>>& initial = {});

// Microwave switch-off: Delta_SP(t) = (Delta_S - Delta_P)(1 - c^2 t^2) with
// Delta_P held fixed, starting from the dressed |-> state, laser off.
ThreeLevelTrajectory adiabatic_ramp(const DressedSystem& sys, double sweep_rate,
                                    double duration, const IntegrationControl& control = {},
                                    double detuning_cutoff_mw_multiple = 50.0);

}  // namespace ionshape
