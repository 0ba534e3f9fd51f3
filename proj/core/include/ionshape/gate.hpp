#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "ionshape/modes.hpp"
#include "ionshape/pulse.hpp"

namespace ionshape {

// Lamb-Dicke parameters. eta scales as 1/sqrt(omega); the reference value is
// quoted at reference_frequency (the ELL transverse frequency by default).
struct GateCoupling {
    double eta_reference = 0.1;
    double reference_frequency = 150.0;  // units of omega_s

    double eta(double mode_frequency) const;
    Eigen::VectorXd eta_vector(const Eigen::VectorXd& mode_frequencies) const;
};

// alpha_m^(j): residual displacement of mode j driven through ion m.
// Rows are ions (zero when undriven), columns modes of the decomposition.
struct DisplacementCoefficients {
    Eigen::MatrixXcd alpha;
};

// phi_mn: symmetric, zero diagonal. The evolution operator carries
// sum over ordered pairs of phi_mn sigma_m sigma_n, so a perfect gate has
// phi = pi/8 on its pair.
struct PhaseMatrix {
    Eigen::MatrixXd phi;
};

// Optional restriction of the mode sums (e.g. to the localized modes).
using ModeSubset = std::optional<std::vector<int>>;

DisplacementCoefficients displacement_coefficients(const PulseSchedule& schedule,
                                                   const ModeDecomposition& modes,
                                                   const GateCoupling& coupling,
                                                   double t_end,
                                                   const ModeSubset& subset = {});

PhaseMatrix phase_matrix(const PulseSchedule& schedule, const ModeDecomposition& modes,
                         const GateCoupling& coupling, double t_end,
                         const ModeSubset& subset = {});

// Spin-independent second-order phase (needed when comparing full states).
double magnus_global_phase(const PulseSchedule& schedule, const ModeDecomposition& modes,
                           const GateCoupling& coupling, double t_end,
                           const ModeSubset& subset = {});

// Scale factor for the pair's pulse amplitudes such that the recomputed
// phi_mn equals pi/8. The template schedule should carry the pair's relative
// amplitude pattern (typically +1/-1). Throws DegenerateDriveError when the
// unit-amplitude phase is non-positive.
double calibrate_amplitude(const PulseSchedule& unit_template, const ModeDecomposition& modes,
                           const GateCoupling& coupling, std::pair<int, int> gate_pair_1based,
                           double t_end);

}  // namespace ionshape
