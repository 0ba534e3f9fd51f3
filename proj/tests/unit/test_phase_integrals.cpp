#include <doctest.h>

#include <cmath>

#include "ionshape/phase_integrals.hpp"

using namespace ionshape;

namespace {

TonePulse sine_pulse(double amp, double nu, double start, double duration) {
    TonePulse p;
    p.ion_1based = 1;
    p.amplitude = amp;
    p.shape_frequency = nu;
    p.start_time = start;
    p.duration = duration;
    return p;
}

TonePulse const_pulse(double amp, double start, double duration) {
    TonePulse p = sine_pulse(amp, 1.0, start, duration);
    p.shape = PulseShape::Constant;
    return p;
}

}  // namespace

TEST_CASE("exp segment and power moments against quadrature") {
    for (double p : {0.0, 1e-7, 0.3, 5.0, 137.0}) {
        const std::complex<double> seg = exp_segment(p, 0.2, 1.1);
        const double re = adaptive_quadrature([&](double t) { return std::cos(p * t); }, 0.2, 1.1, 1e-13);
        const double im = adaptive_quadrature([&](double t) { return std::sin(p * t); }, 0.2, 1.1, 1e-13);
        CHECK(std::abs(seg - std::complex<double>(re, im)) < 1e-12);

        for (int k : {1, 3, 6}) {
            const std::complex<double> m = power_moment(p, k, 0.0, 0.9);
            const double mre = adaptive_quadrature(
                [&](double t) { return std::pow(t, k) * std::cos(p * t); }, 0.0, 0.9, 1e-13);
            const double mim = adaptive_quadrature(
                [&](double t) { return std::pow(t, k) * std::sin(p * t); }, 0.0, 0.9, 1e-13);
            CHECK(std::abs(m - std::complex<double>(mre, mim)) < 1e-11);
        }
    }
}

TEST_CASE("pulse fourier closed form vs quadrature") {
    const TonePulse generic = sine_pulse(1.7, 119.3, 0.13, 0.37);
    for (double omega : {0.0, 3.0, 119.3, 119.3001, 150.44}) {
        const auto closed = pulse_fourier(generic, omega);
        const auto quad = pulse_fourier_quadrature(generic, omega, 1e-13);
        CHECK(std::abs(closed - quad) < 1e-11);
    }
}

TEST_CASE("fourier orthogonality at commensurate frequencies") {
    // nu and omega integer multiples of 2 pi / tau, nu != omega
    const double tau = 0.4;
    const double base = 2.0 * M_PI / tau;
    const TonePulse p = sine_pulse(1.0, 3.0 * base, 0.0, tau);
    CHECK(std::abs(pulse_fourier(p, 7.0 * base)) < 1e-13);
    // resonant case is decisively nonzero
    CHECK(std::abs(pulse_fourier(p, 3.0 * base)) > 0.01);

    // constant pulse closes every mode with omega tau = 2 pi K
    const TonePulse c = const_pulse(0.8, 0.0, tau);
    CHECK(std::abs(pulse_fourier(c, 5.0 * base)) < 1e-13);
}

TEST_CASE("phase kernel closed form for constant drives") {
    // D = 2 Omega^2 (tau/omega - sin(omega tau)/omega^2) for equal windows
    const double tau = 0.52, omega = 17.3, amp = 0.9;
    const TonePulse a = const_pulse(amp, 0.0, tau);
    const TonePulse b = const_pulse(amp, 0.0, tau);
    const double expected =
        2.0 * amp * amp * (tau / omega - std::sin(omega * tau) / (omega * omega));
    CHECK(pulse_pair_phase_kernel(a, b, omega) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("phase kernel vs nested quadrature across window layouts") {
    const double nu = 11.0, omega = 13.7;
    struct Layout {
        double a_start, a_len, b_start, b_len;
    };
    const Layout layouts[] = {
        {0.0, 0.6, 0.0, 0.6},    // identical windows
        {0.0, 0.6, 0.25, 0.6},   // partial overlap
        {0.0, 0.4, 0.55, 0.4},   // disjoint, a before b
        {0.5, 0.4, 0.0, 0.35},   // disjoint, b before a
        {0.0, 0.8, 0.2, 0.3},    // nested
    };
    for (const Layout& l : layouts) {
        const TonePulse a = sine_pulse(1.3, nu, l.a_start, l.a_len);
        const TonePulse b = sine_pulse(0.7, nu, l.b_start, l.b_len);
        const double closed = pulse_pair_phase_kernel(a, b, omega);
        const double quad = pulse_pair_phase_kernel_quadrature(a, b, omega, 1e-11);
        CHECK(closed == doctest::Approx(quad).epsilon(5e-8));
    }
}

TEST_CASE("phase kernel near-degenerate branches stay smooth") {
    // sweep the drive through the mode frequency; closed form must agree
    // with quadrature through the small-denominator branch switches
    const double tau = 0.45;
    const TonePulse a = sine_pulse(1.0, 100.0, 0.0, tau);
    const TonePulse b = sine_pulse(1.0, 100.0, 0.0, tau);
    for (double omega : {99.999999, 100.0, 100.0000003, 100.02, 100.3}) {
        const double closed = pulse_pair_phase_kernel(a, b, omega);
        const double quad = pulse_pair_phase_kernel_quadrature(a, b, omega, 1e-12);
        CHECK(closed == doctest::Approx(quad).epsilon(1e-7));
    }
    // single integral at exact resonance
    CHECK(std::abs(pulse_fourier(a, 100.0) - pulse_fourier_quadrature(a, 100.0, 1e-13)) < 1e-11);
}
