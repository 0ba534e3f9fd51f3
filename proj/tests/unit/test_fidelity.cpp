#include <doctest.h>

#include <cmath>
#include <random>

#include "ionshape/fidelity.hpp"
#include "support/oracles.hpp"

using namespace ionshape;

namespace {

GateLayout four_ion_layout() {
    GateLayout l;
    l.pairs_1based = {{{1, 2}, {3, 4}}};
    return l;
}

PhaseMatrix perfect_phases() {
    PhaseMatrix p;
    p.phi = Eigen::MatrixXd::Zero(4, 4);
    p.phi(0, 1) = p.phi(1, 0) = M_PI / 8.0;
    p.phi(2, 3) = p.phi(3, 2) = M_PI / 8.0;
    return p;
}

ThermalState uniform_thermal(int n_modes, double nbar) {
    Eigen::VectorXd f = Eigen::VectorXd::Constant(n_modes, 1.0);
    return ThermalState::from_occupation(f, 0, nbar);
}

}  // namespace

TEST_CASE("perfect gate reaches unit fidelity") {
    const Eigen::MatrixXcd cg = Eigen::MatrixXcd::Zero(4, 3);
    const double f = gate_fidelity(cg, perfect_phases(), uniform_thermal(3, 3.25),
                                   four_ion_layout());
    CHECK(f == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("missing gate phases leave the quarter overlap") {
    const Eigen::MatrixXcd cg = Eigen::MatrixXcd::Zero(4, 2);
    PhaseMatrix none;
    none.phi = Eigen::MatrixXd::Zero(4, 4);
    const double f = gate_fidelity(cg, none, uniform_thermal(2, 1.0), four_ion_layout());
    CHECK(f == doctest::Approx(0.25).epsilon(1e-12));

    // independent 16-dimensional construction gives the same number
    const double brute = oracles::brute_force_fidelity(Eigen::MatrixXcd::Zero(4, 2),
                                                       Eigen::Matrix4d::Zero(),
                                                       Eigen::VectorXd::Constant(2, 40.0), 8);
    CHECK(brute == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("zero-temperature fidelity matches the Fock-space oracle") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-0.25, 0.25);
    for (int trial = 0; trial < 3; ++trial) {
        Eigen::MatrixXcd cg(4, 2);
        for (int m = 0; m < 4; ++m) {
            for (int p = 0; p < 2; ++p) cg(m, p) = std::complex<double>(dist(rng), dist(rng));
        }
        Eigen::Matrix4d phi_q = Eigen::Matrix4d::Zero();
        phi_q(0, 1) = phi_q(1, 0) = M_PI / 8.0 + 0.3 * dist(rng);
        phi_q(2, 3) = phi_q(3, 2) = M_PI / 8.0 + 0.3 * dist(rng);
        phi_q(0, 2) = phi_q(2, 0) = 0.1 * dist(rng);

        PhaseMatrix phases;
        phases.phi = phi_q;
        // gamma = 40 leaves nbar ~ 4e-18: numerically the ground state
        ThermalState cold = uniform_thermal(2, 1.0);
        cold.gamma = Eigen::VectorXd::Constant(2, 40.0);

        const double f = gate_fidelity(cg, phases, cold, four_ion_layout());
        const double brute = oracles::brute_force_fidelity(
            cg, phi_q, Eigen::VectorXd::Constant(2, 40.0), 22);
        CHECK(f == doctest::Approx(brute).epsilon(1e-6));
    }
}

TEST_CASE("thermal fidelity matches the truncated-Fock thermal oracle") {
    Eigen::MatrixXcd cg(4, 1);
    cg << std::complex<double>(0.15, 0.05), std::complex<double>(-0.10, 0.12),
        std::complex<double>(0.08, -0.03), std::complex<double>(0.02, 0.09);
    PhaseMatrix phases = perfect_phases();
    phases.phi(0, 2) = phases.phi(2, 0) = 0.01;

    // nbar = 0.5 -> gamma = ln 3; cutoff 60 holds the thermal tail
    ThermalState t = uniform_thermal(1, 0.5);
    CHECK(t.gamma[0] == doctest::Approx(std::log(3.0)).epsilon(1e-12));

    const double f = gate_fidelity(cg, phases, t, four_ion_layout());
    const double brute = oracles::brute_force_fidelity(
        cg, Eigen::Matrix4d(phases.phi), Eigen::VectorXd::Constant(1, std::log(3.0)), 60);
    CHECK(f == doctest::Approx(brute).epsilon(1e-7));
}

TEST_CASE("fidelity is bounded and sign-convention robust") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> dist(-0.6, 0.6);
    for (int trial = 0; trial < 8; ++trial) {
        Eigen::MatrixXcd cg(4, 3);
        for (int m = 0; m < 4; ++m) {
            for (int p = 0; p < 3; ++p) cg(m, p) = std::complex<double>(dist(rng), dist(rng));
        }
        PhaseMatrix phases;
        phases.phi = Eigen::MatrixXd::Zero(4, 4);
        for (int a = 0; a < 4; ++a) {
            for (int b = a + 1; b < 4; ++b) {
                phases.phi(a, b) = phases.phi(b, a) = dist(rng);
            }
        }
        const ThermalState t = uniform_thermal(3, 2.0);
        const double f = gate_fidelity(cg, phases, t, four_ion_layout());
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);

        // flipping the sign of any bare-mode column is a gauge choice
        Eigen::MatrixXcd flipped = cg;
        flipped.col(1) *= -1.0;
        CHECK(gate_fidelity(flipped, phases, t, four_ion_layout()) ==
              doctest::Approx(f).epsilon(1e-12));
    }
}

TEST_CASE("hotter bus reduces the fidelity at fixed residuals") {
    Eigen::MatrixXcd cg = Eigen::MatrixXcd::Zero(4, 1);
    cg(0, 0) = std::complex<double>(0.2, 0.1);
    cg(1, 0) = std::complex<double>(-0.1, 0.05);
    double prev = 1.0;
    for (double nbar : {0.5, 3.25, 10.0}) {
        const double f =
            gate_fidelity(cg, perfect_phases(), uniform_thermal(1, nbar), four_ion_layout());
        CHECK(f < prev);
        prev = f;
    }
}

TEST_CASE("temperature factor inversions") {
    CHECK(temperature_factor_from_occupation(3.25) == doctest::Approx(0.268264).epsilon(1e-5));
    CHECK(temperature_factor_from_occupation(0.5) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    // zero-temperature limit: coth(gamma/2) -> 1
    const double gamma = temperature_factor_from_occupation(1e-9);
    CHECK(1.0 / std::tanh(0.5 * gamma) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(temperature_factor_from_occupation(0.0), ValidationError);

    Eigen::VectorXd freqs(3);
    freqs << 100.0, 120.0, 150.0;
    const ThermalState t = ThermalState::from_occupation(freqs, 2, 3.25);
    CHECK(t.mean_occupations()[2] == doctest::Approx(3.25).epsilon(1e-12));
    // same temperature: gamma proportional to frequency
    CHECK(t.gamma[0] / t.gamma[2] == doctest::Approx(100.0 / 150.0).epsilon(1e-12));
}

TEST_CASE("decay penalty") {
    CHECK(decay_penalty(1, 4.9e-6, 1e9) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(decay_penalty(1, 4.9e-6, 270e-6) == doctest::Approx(0.982).epsilon(1e-3));
    CHECK(decay_penalty(4, 4.9e-6, 270e-6) == doctest::Approx(0.930).epsilon(2e-3));
    CHECK_THROWS_AS(decay_penalty(1, -1.0, 270e-6), ValidationError);
    CHECK_THROWS_AS(decay_penalty(1, 1.0, 0.0), ValidationError);
}
