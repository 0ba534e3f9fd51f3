#include "ionshape/trap.hpp"

#include <cmath>

namespace ionshape {

void PhysicalConstants::validate() const {
    if (elementary_charge <= 0 || vacuum_permittivity <= 0 || ion_mass <= 0 ||
        reduced_planck <= 0 || boltzmann <= 0) {
        throw ValidationError("physical constants must be strictly positive");
    }
}

PhysicalConstants PhysicalConstants::ca40_ion() {
    PhysicalConstants c;
    constexpr double atomic_mass_unit = 1.66053906660e-27;
    constexpr double electron_mass = 9.1093837015e-31;
    c.ion_mass = 39.962590863 * atomic_mass_unit - electron_mass;
    return c;
}

void TrapParameters::validate() const {
    if (quadratic_coefficient >= 0) {
        throw ValidationError("quadratic coefficient beta2 must be negative");
    }
    if (quartic_coefficient <= 0) {
        throw ValidationError("quartic coefficient beta4 must be positive");
    }
    if (rf_frequency <= 0) {
        throw ValidationError("rf frequency must be positive");
    }
    if (rf_gradient <= 0) {
        throw ValidationError("rf gradient must be positive");
    }
}

ScaledUnits derive_scaled_units(const TrapParameters& trap, const PhysicalConstants& consts) {
    trap.validate();
    consts.validate();
    const double abs_beta2 = std::abs(trap.quadratic_coefficient);
    ScaledUnits u;
    u.length_scale = std::cbrt(consts.elementary_charge /
                               (8.0 * M_PI * consts.vacuum_permittivity * abs_beta2));
    u.frequency_scale = std::sqrt(2.0 * consts.elementary_charge * abs_beta2 / consts.ion_mass);
    u.quartic_ratio = 2.0 * trap.quartic_coefficient * u.length_scale * u.length_scale / abs_beta2;
    return u;
}

double quartic_coefficient_for_ratio(double quadratic_coefficient, double target_k4,
                                     const PhysicalConstants& consts) {
    if (quadratic_coefficient >= 0) {
        throw ValidationError("quadratic coefficient beta2 must be negative");
    }
    if (target_k4 <= 0) {
        throw ValidationError("k4 must be positive");
    }
    const double abs_beta2 = std::abs(quadratic_coefficient);
    const double l_s = std::cbrt(consts.elementary_charge /
                                 (8.0 * M_PI * consts.vacuum_permittivity * abs_beta2));
    return target_k4 * abs_beta2 / (2.0 * l_s * l_s);
}

double transverse_ell_frequency(const TrapParameters& trap, const PhysicalConstants& consts) {
    trap.validate();
    consts.validate();
    return std::sqrt(2.0) * consts.elementary_charge * trap.rf_gradient /
           (consts.ion_mass * trap.rf_frequency);
}

double rydberg_frequency_ratio(double polarizability_term) {
    if (polarizability_term <= -1.0) {
        throw InstabilityError("Rydberg radial potential overcomes the trap", -1);
    }
    return std::sqrt(1.0 + polarizability_term);
}

void StateFrequencies::validate() const {
    if (!(omega_ell > 0)) {
        throw ValidationError("omega_ell must be positive");
    }
    if (omega_ryd < omega_ell) {
        throw ValidationError("omega_ryd must be >= omega_ell");
    }
}

StateFrequencies StateFrequencies::from_ratio(double omega_ell, double ryd_to_ell_ratio) {
    StateFrequencies f;
    f.omega_ell = omega_ell;
    f.omega_ryd = omega_ell * ryd_to_ell_ratio;
    f.validate();
    return f;
}

}  // namespace ionshape
