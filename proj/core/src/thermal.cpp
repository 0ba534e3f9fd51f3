#include "ionshape/thermal.hpp"

#include <cmath>

namespace ionshape {

double temperature_factor_from_occupation(double nbar) {
    if (!(nbar > 0)) throw ValidationError("mean occupation must be positive");
    return std::log1p(1.0 / nbar);
}

ThermalState ThermalState::from_occupation(const Eigen::VectorXd& bare_frequencies,
                                           int reference_mode_0based, double nbar) {
    const int n = static_cast<int>(bare_frequencies.size());
    if (reference_mode_0based < 0 || reference_mode_0based >= n) {
        throw ValidationError("reference mode index out of range");
    }
    for (int p = 0; p < n; ++p) {
        if (!(bare_frequencies[p] > 0)) throw ValidationError("mode frequencies must be positive");
    }
    ThermalState t;
    t.frequencies = bare_frequencies;
    const double gamma_ref = temperature_factor_from_occupation(nbar);
    t.gamma = bare_frequencies * (gamma_ref / bare_frequencies[reference_mode_0based]);
    return t;
}

Eigen::VectorXd ThermalState::mean_occupations() const {
    Eigen::VectorXd n(gamma.size());
    for (int p = 0; p < gamma.size(); ++p) n[p] = 1.0 / std::expm1(gamma[p]);
    return n;
}

double ThermalState::temperature_kelvin(double frequency_scale_si,
                                        const PhysicalConstants& consts) const {
    if (gamma.size() == 0) throw ValidationError("empty thermal state");
    // gamma_p = hbar omega_p / (k_B T); any mode gives the same T
    const double omega_si = frequencies[0] * frequency_scale_si;
    return consts.reduced_planck * omega_si / (consts.boltzmann * gamma[0]);
}

double decay_penalty(int n_rydberg, double excited_duration, double lifetime) {
    if (n_rydberg < 0) throw ValidationError("Rydberg ion count must be >= 0");
    if (excited_duration < 0) throw ValidationError("excited duration must be >= 0");
    if (!(lifetime > 0)) throw ValidationError("lifetime must be positive");
    return std::exp(-static_cast<double>(n_rydberg) * excited_duration / lifetime);
}

}  // namespace ionshape
