#pragma once

#include <Eigen/Dense>

#include "ionshape/trap.hpp"

namespace ionshape {

// Thermal phonon state of the bare modes: one temperature for all modes,
// anchored by the mean occupation of a reference mode. gamma_p = hbar
// omega_p / (k_B T) in scaled form gamma_p = gamma_ref * omega_p/omega_ref.
struct ThermalState {
    Eigen::VectorXd frequencies;  // bare mode frequencies, units of omega_s
    Eigen::VectorXd gamma;        // temperature factors, > 0

    Eigen::VectorXd mean_occupations() const;
    // Physical temperature given the frequency scale omega_s in rad/s.
    double temperature_kelvin(double frequency_scale_si, const PhysicalConstants& consts) const;

    static ThermalState from_occupation(const Eigen::VectorXd& bare_frequencies,
                                        int reference_mode_0based, double nbar);
};

// gamma = ln(1 + 1/nbar)
double temperature_factor_from_occupation(double nbar);

// Radiative-decay penalty exp(-n_ryd * excited_duration / lifetime).
double decay_penalty(int n_rydberg, double excited_duration, double lifetime);

}  // namespace ionshape
