#pragma once

#include "ionshape/errors.hpp"

namespace ionshape {

struct PhysicalConstants {
    double elementary_charge = 1.602176634e-19;   // C
    double vacuum_permittivity = 8.8541878128e-12;  // F/m
    double ion_mass = 0.0;                        // kg
    double reduced_planck = 1.054571817e-34;      // J s
    double boltzmann = 1.380649e-23;              // J/K

    void validate() const;

    // 40Ca+ (atomic mass minus one electron)
    static PhysicalConstants ca40_ion();
};

// Quartic linear trap: rf gradient alpha, rf drive Omega, static coefficients
// beta2 (negative) and beta4 (positive).
struct TrapParameters {
    double rf_gradient = 0.0;           // V/m^2
    double rf_frequency = 0.0;          // rad/s
    double quadratic_coefficient = 0.0; // V/m^2, < 0
    double quartic_coefficient = 0.0;   // V/m^4, > 0

    void validate() const;
};

// Dimensionless unit system: lengths in l_s, frequencies in omega_s.
struct ScaledUnits {
    double length_scale = 0.0;     // m
    double frequency_scale = 0.0;  // rad/s
    double quartic_ratio = 0.0;    // k4
};

ScaledUnits derive_scaled_units(const TrapParameters& trap, const PhysicalConstants& consts);

// beta4 that realizes a target k4 for the given beta2.
double quartic_coefficient_for_ratio(double quadratic_coefficient, double target_k4,
                                     const PhysicalConstants& consts);

// Transverse ELL (ponderomotive) frequency sqrt(2) e alpha / (M Omega), rad/s.
double transverse_ell_frequency(const TrapParameters& trap, const PhysicalConstants& consts);

// omega_ryd/omega_ell = sqrt(1 + term) with term = -M Omega^2 P_nP (dimensionless).
// term <= -1 means the Rydberg ion is radially unconfined.
double rydberg_frequency_ratio(double polarizability_term);

// Per-state transverse trap frequencies in units of omega_s.
struct StateFrequencies {
    double omega_ell = 0.0;
    double omega_ryd = 0.0;

    void validate() const;
    static StateFrequencies from_ratio(double omega_ell, double ryd_to_ell_ratio);
};

}  // namespace ionshape
