#include "ionshape/gate.hpp"

#include <cmath>
#include <sstream>

#include "ionshape/phase_integrals.hpp"

namespace ionshape {

namespace {

std::vector<int> resolve_subset(const ModeSubset& subset, int n_modes) {
    if (!subset) {
        std::vector<int> all(n_modes);
        for (int j = 0; j < n_modes; ++j) all[j] = j;
        return all;
    }
    for (int j : *subset) {
        if (j < 0 || j >= n_modes) throw ValidationError("mode subset index out of range");
    }
    return *subset;
}

void check_schedule(const PulseSchedule& schedule, int n_ions, double t_end) {
    schedule.validate(n_ions);
    if (schedule.latest_end() > t_end + 1e-12) {
        throw ValidationError("t_end precedes the end of a pulse window");
    }
}

}  // namespace

double GateCoupling::eta(double mode_frequency) const {
    if (!(mode_frequency > 0)) throw ValidationError("mode frequency must be positive");
    return eta_reference * std::sqrt(reference_frequency / mode_frequency);
}

Eigen::VectorXd GateCoupling::eta_vector(const Eigen::VectorXd& mode_frequencies) const {
    Eigen::VectorXd out(mode_frequencies.size());
    for (int j = 0; j < mode_frequencies.size(); ++j) out[j] = eta(mode_frequencies[j]);
    return out;
}

DisplacementCoefficients displacement_coefficients(const PulseSchedule& schedule,
                                                   const ModeDecomposition& modes,
                                                   const GateCoupling& coupling,
                                                   double t_end, const ModeSubset& subset) {
    const int n = modes.size();
    check_schedule(schedule, n, t_end);
    const std::vector<int> cols = resolve_subset(subset, n);

    DisplacementCoefficients out;
    out.alpha = Eigen::MatrixXcd::Zero(n, n);
    for (const TonePulse& p : schedule.pulses) {
        const int m = p.ion_1based - 1;
        for (int j : cols) {
            const double wj = modes.frequencies[j];
            out.alpha(m, j) -= coupling.eta(wj) * modes.vectors(m, j) * pulse_fourier(p, wj);
        }
    }
    return out;
}

PhaseMatrix phase_matrix(const PulseSchedule& schedule, const ModeDecomposition& modes,
                         const GateCoupling& coupling, double t_end, const ModeSubset& subset) {
    const int n = modes.size();
    check_schedule(schedule, n, t_end);
    const std::vector<int> cols = resolve_subset(subset, n);

    PhaseMatrix out;
    out.phi = Eigen::MatrixXd::Zero(n, n);
    const int np = static_cast<int>(schedule.pulses.size());
    for (int a = 0; a < np; ++a) {
        for (int b = a + 1; b < np; ++b) {
            const TonePulse& pa = schedule.pulses[a];
            const TonePulse& pb = schedule.pulses[b];
            if (pa.ion_1based == pb.ion_1based) continue;
            const int m = pa.ion_1based - 1;
            const int k = pb.ion_1based - 1;
            double phi = 0.0;
            for (int j : cols) {
                const double wj = modes.frequencies[j];
                const double eta = coupling.eta(wj);
                phi += 0.5 * eta * eta * modes.vectors(m, j) * modes.vectors(k, j) *
                       pulse_pair_phase_kernel(pa, pb, wj);
            }
            out.phi(m, k) += phi;
            out.phi(k, m) += phi;
        }
    }
    return out;
}

double magnus_global_phase(const PulseSchedule& schedule, const ModeDecomposition& modes,
                           const GateCoupling& coupling, double t_end, const ModeSubset& subset) {
    const int n = modes.size();
    check_schedule(schedule, n, t_end);
    const std::vector<int> cols = resolve_subset(subset, n);

    double phase = 0.0;
    const int np = static_cast<int>(schedule.pulses.size());
    for (int a = 0; a < np; ++a) {
        for (int b = 0; b < np; ++b) {
            const TonePulse& pa = schedule.pulses[a];
            const TonePulse& pb = schedule.pulses[b];
            if (pa.ion_1based != pb.ion_1based) continue;
            if (b < a) continue;
            const double mult = (a == b) ? 0.5 : 1.0;  // kernel already sums both orderings
            const int m = pa.ion_1based - 1;
            for (int j : cols) {
                const double wj = modes.frequencies[j];
                const double eta = coupling.eta(wj);
                phase += mult * eta * eta * modes.vectors(m, j) * modes.vectors(m, j) *
                         pulse_pair_phase_kernel(pa, pb, wj);
            }
        }
    }
    return phase;
}

double calibrate_amplitude(const PulseSchedule& unit_template, const ModeDecomposition& modes,
                           const GateCoupling& coupling, std::pair<int, int> gate_pair_1based,
                           double t_end) {
    const PhaseMatrix unit = phase_matrix(unit_template, modes, coupling, t_end);
    const double phi = unit.phi(gate_pair_1based.first - 1, gate_pair_1based.second - 1);
    if (!(phi > 1e-15)) {
        std::ostringstream msg;
        msg << "unit-amplitude pair phase " << phi
            << " is not positive; the drive cannot be calibrated to pi/8";
        throw DegenerateDriveError(msg.str());
    }
    return std::sqrt((M_PI / 8.0) / phi);
}

}  // namespace ionshape
