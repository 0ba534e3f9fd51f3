#include <doctest.h>

#include <cmath>
#include <complex>

#include "ionshape/gate.hpp"
#include "ionshape/tdse.hpp"

using namespace ionshape;

namespace {

// two ions, two synthetic modes; mode vectors rows 0..1
ModeDecomposition two_mode_system() {
    ModeDecomposition d;
    d.frequencies = Eigen::VectorXd(2);
    d.frequencies << 9.0, 11.0;
    d.vectors = Eigen::MatrixXd(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    d.vectors << s, s, s, -s;
    return d;
}

PulseSchedule sine_pair(double amp1, double amp2, double nu, double t0_2, double tau) {
    PulseSchedule s;
    TonePulse p;
    p.shape_frequency = nu;
    p.duration = tau;
    p.ion_1based = 1;
    p.amplitude = amp1;
    p.start_time = 0.0;
    s.pulses.push_back(p);
    p.ion_1based = 2;
    p.amplitude = amp2;
    p.start_time = t0_2;
    s.pulses.push_back(p);
    return s;
}

}  // namespace

TEST_CASE("single-mode constant-drive phase matches the analytic double integral") {
    ModeDecomposition d;
    d.frequencies = Eigen::VectorXd::Constant(1, 7.0);
    d.vectors = Eigen::MatrixXd(2, 1);
    d.vectors << 0.6, 0.8;
    GateCoupling coupling;
    coupling.eta_reference = 0.1;
    coupling.reference_frequency = 7.0;  // eta exactly 0.1 for this mode

    const double tau = 0.9, omega = 7.0, amp = 1.3;
    PulseSchedule s;
    for (int ion : {1, 2}) {
        TonePulse p;
        p.ion_1based = ion;
        p.amplitude = amp;
        p.shape = PulseShape::Constant;
        p.start_time = 0.0;
        p.duration = tau;
        s.pulses.push_back(p);
    }
    const PhaseMatrix phi = phase_matrix(s, d, coupling, tau);
    // Eq.-(1) normalization: the stored phi is half the summed two-ordering
    // double integral, so a perfect gate sits at phi = pi/8.
    const double expected = 0.1 * 0.1 * 0.6 * 0.8 * amp * amp *
                            (tau / omega - std::sin(omega * tau) / (omega * omega));
    CHECK(phi.phi(0, 1) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(phi.phi(1, 0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(phi.phi(0, 0) == 0.0);
}

TEST_CASE("phi vanishes when only one ion is driven") {
    const ModeDecomposition d = two_mode_system();
    GateCoupling coupling;
    PulseSchedule s = sine_pair(1.0, 0.0, 8.5, 0.0, 1.0);
    s.pulses.pop_back();
    const PhaseMatrix phi = phase_matrix(s, d, coupling, 1.0);
    CHECK(phi.phi.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("alpha scales linearly and phi quadratically in the amplitude") {
    const ModeDecomposition d = two_mode_system();
    GateCoupling coupling;
    const double tau = 1.1, nu = 8.7;

    const PulseSchedule unit = sine_pair(1.0, 1.0, nu, 0.0, tau);
    const auto alpha1 = displacement_coefficients(unit, d, coupling, tau);
    const auto phi1 = phase_matrix(unit, d, coupling, tau);
    for (double scale : {0.5, 2.0}) {
        const PulseSchedule scaled = sine_pair(scale, scale, nu, 0.0, tau);
        const auto alpha_s = displacement_coefficients(scaled, d, coupling, tau);
        const auto phi_s = phase_matrix(scaled, d, coupling, tau);
        CHECK((alpha_s.alpha - scale * alpha1.alpha).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((phi_s.phi - scale * scale * phi1.phi).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("time translation covariance") {
    const ModeDecomposition d = two_mode_system();
    GateCoupling coupling;
    const double tau = 0.8, nu = 9.4, shift = 0.37;

    const PulseSchedule base = sine_pair(1.0, 1.0, nu, 0.0, tau);
    PulseSchedule moved = base;
    for (TonePulse& p : moved.pulses) p.start_time += shift;

    const auto a0 = displacement_coefficients(base, d, coupling, tau);
    const auto a1 = displacement_coefficients(moved, d, coupling, tau + shift);
    for (int m = 0; m < 2; ++m) {
        for (int j = 0; j < 2; ++j) {
            const std::complex<double> phase =
                std::polar(1.0, d.frequencies[j] * shift);
            CHECK(std::abs(a1.alpha(m, j) - phase * a0.alpha(m, j)) < 1e-12);
        }
    }
    const auto p0 = phase_matrix(base, d, coupling, tau);
    const auto p1 = phase_matrix(moved, d, coupling, tau + shift);
    CHECK((p1.phi - p0.phi).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("amplitude calibration fixes the pair phase at pi/8") {
    const ModeDecomposition d = two_mode_system();
    GateCoupling coupling;
    const double tau = 1.3, nu = 8.2;
    const PulseSchedule unit = sine_pair(1.0, -1.0, nu, 0.0, tau);

    const PhaseMatrix unit_phi = phase_matrix(unit, d, coupling, tau);
    REQUIRE(unit_phi.phi(0, 1) > 0);
    const double scale = calibrate_amplitude(unit, d, coupling, {1, 2}, tau);
    CHECK(scale == doctest::Approx(std::sqrt((M_PI / 8.0) / unit_phi.phi(0, 1))).epsilon(1e-12));

    const PulseSchedule cal = sine_pair(scale, -scale, nu, 0.0, tau);
    const PhaseMatrix phi = phase_matrix(cal, d, coupling, tau);
    CHECK(phi.phi(0, 1) == doctest::Approx(M_PI / 8.0).epsilon(1e-10));

    // scaling identities: phi_unit = pi/8 -> 1, phi_unit = pi/2 -> 1/2
    const double boost = std::sqrt((M_PI / 8.0) / unit_phi.phi(0, 1));
    const PulseSchedule at_pi8 = sine_pair(boost, -boost, nu, 0.0, tau);
    CHECK(calibrate_amplitude(at_pi8, d, coupling, {1, 2}, tau) == doctest::Approx(1.0).epsilon(1e-10));
    const double boost2 = 2.0 * boost;
    const PulseSchedule at_pi2 = sine_pair(boost2, -boost2, nu, 0.0, tau);
    CHECK(calibrate_amplitude(at_pi2, d, coupling, {1, 2}, tau) == doctest::Approx(0.5).epsilon(1e-10));

    // degenerate drive: opposite relative sign makes the unit phase negative
    const PulseSchedule flipped = sine_pair(1.0, 1.0, nu, 0.0, tau);
    const PhaseMatrix flipped_phi = phase_matrix(flipped, d, coupling, tau);
    if (flipped_phi.phi(0, 1) <= 0) {
        CHECK_THROWS_AS(calibrate_amplitude(flipped, d, coupling, {1, 2}, tau),
                        DegenerateDriveError);
    }
    PulseSchedule undriven = unit;
    undriven.pulses[0].amplitude = 0.0;
    undriven.pulses[1].amplitude = 0.0;
    CHECK_THROWS_AS(calibrate_amplitude(undriven, d, coupling, {1, 2}, tau),
                    DegenerateDriveError);
}

TEST_CASE("tdse oracle: zero drive leaves the state untouched") {
    ReducedModeSystem sys;
    sys.ions_1based = {1, 2};
    sys.mode_frequencies = Eigen::VectorXd::Constant(1, 10.0);
    sys.couplings = Eigen::MatrixXd::Constant(2, 1, 0.07);

    PulseSchedule s = sine_pair(0.0, 0.0, 9.0, 0.0, 0.5);
    TdseOptions opts;
    opts.fock_cutoff = 6;
    const TdseResult r = tdse_oracle(s, sys, opts, Eigen::VectorXcd::Zero(1));
    CHECK(r.overlap_magnitude == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(r.cutoff_warning);
}

TEST_CASE("tdse oracle validates the Magnus picture for a calibrated gate") {
    // one near-resonant mode, two driven ions
    ReducedModeSystem sys;
    sys.ions_1based = {1, 2};
    sys.mode_frequencies = Eigen::VectorXd::Constant(1, 12.0);
    sys.couplings = Eigen::MatrixXd(2, 1);
    sys.couplings << 0.08, 0.08;

    ModeDecomposition d;
    d.frequencies = sys.mode_frequencies;
    d.vectors = Eigen::MatrixXd(2, 1);
    d.vectors << 0.08 * std::sqrt(12.0), 0.08 * std::sqrt(12.0);
    GateCoupling flat;
    flat.eta_reference = 1.0;
    flat.reference_frequency = 1.0;

    const double tau = 8.0 * 2.0 * M_PI / 12.0;
    const double nu = 7.0 / 8.0 * 12.0;  // closure point below resonance
    const PulseSchedule unit = sine_pair(1.0, 1.0, nu, 0.0, tau);
    const double scale = calibrate_amplitude(unit, d, flat, {1, 2}, tau);
    const PulseSchedule cal = sine_pair(scale, scale, nu, 0.0, tau);

    TdseOptions opts;
    opts.fock_cutoff = 20;
    opts.steps_per_period = 400;
    const TdseResult r = tdse_oracle(cal, sys, opts, Eigen::VectorXcd::Zero(1));
    CHECK(r.overlap_magnitude >= 1.0 - 1e-4);
    CHECK(r.norm_drift < 1e-8);
    CHECK_FALSE(r.cutoff_warning);
}

TEST_CASE("tdse oracle reproduces the displacement coefficients") {
    ReducedModeSystem sys;
    sys.ions_1based = {1, 2};
    sys.mode_frequencies = Eigen::VectorXd(2);
    sys.mode_frequencies << 9.0, 11.0;
    sys.couplings = Eigen::MatrixXd(2, 2);
    sys.couplings << 0.05, 0.04, 0.05, -0.04;

    const PulseSchedule s = sine_pair(0.6, 0.6, 8.0, 0.0, 1.9);
    TdseOptions opts;
    opts.fock_cutoff = 16;
    opts.steps_per_period = 400;
    Eigen::VectorXcd coherent(2);
    coherent << std::complex<double>(0.4, -0.2), std::complex<double>(0.1, 0.3);
    const TdseResult r = tdse_oracle(s, sys, opts, coherent);

    CHECK(r.overlap_magnitude >= 1.0 - 1e-5);
    for (int sector = 0; sector < 4; ++sector) {
        for (int j = 0; j < 2; ++j) {
            CHECK(std::abs(r.sector_displacements(sector, j) -
                           r.predicted_displacements(sector, j)) < 1e-6);
        }
    }
}
