#include <doctest.h>

#include <cmath>
#include <random>

#include "ionshape/duschinsky.hpp"
#include "ionshape/equilibrium.hpp"

using namespace ionshape;

namespace {

ModeDecomposition decomposition(const Eigen::VectorXd& freqs, const Eigen::MatrixXd& vecs) {
    ModeDecomposition d;
    d.frequencies = freqs;
    d.vectors = vecs;
    return d;
}

}  // namespace

TEST_CASE("identity map when nothing is shaped") {
    Eigen::VectorXd f(3);
    f << 2.0, 3.0, 5.0;
    const ModeDecomposition d = decomposition(f, Eigen::MatrixXd::Identity(3, 3));
    const DuschinskyMap map = duschinsky_map(d, d);
    CHECK(map.coordinate_map.isApprox(Eigen::MatrixXd::Identity(3, 3), 1e-14));
    CHECK(map.t_plus.isApprox(2.0 * Eigen::MatrixXd::Identity(3, 3), 1e-14));
    CHECK(map.t_minus.cwiseAbs().maxCoeff() < 1e-14);

    Eigen::MatrixXcd ce = Eigen::MatrixXcd::Random(3, 3);
    CHECK(bare_frame_displacements(ce, map).isApprox(ce, 1e-13));
}

TEST_CASE("frequency ratio four with shared eigenvectors") {
    Eigen::VectorXd fg(2), fe(2);
    fg << 2.0, 3.0;
    fe = 4.0 * fg;
    const Eigen::MatrixXd vecs = Eigen::MatrixXd::Identity(2, 2);
    const DuschinskyMap map = duschinsky_map(decomposition(fg, vecs), decomposition(fe, vecs));
    // sqrt(4) + sqrt(1/4) and sqrt(4) - sqrt(1/4)
    CHECK(map.t_plus(0, 0) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(map.t_plus(1, 1) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(std::abs(map.t_minus(0, 0)) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(std::abs(map.t_minus(1, 1)) == doctest::Approx(1.5).epsilon(1e-14));

    // purely real coefficients propagate through the L-block only
    Eigen::MatrixXcd ce(1, 2);
    ce << 0.3, -0.7;
    const Eigen::MatrixXcd cg = bare_frame_displacements(ce, map);
    CHECK(cg.imag().cwiseAbs().maxCoeff() < 1e-14);
    CHECK(cg(0, 0).real() == doctest::Approx(0.3 * 2.0).epsilon(1e-14));
    CHECK(cg(0, 1).real() == doctest::Approx(-0.7 * 2.0).epsilon(1e-14));
}

TEST_CASE("bosonic commutation for random orthogonal maps") {
    std::mt19937 rng(11);
    std::normal_distribution<double> dist;
    for (int trial = 0; trial < 4; ++trial) {
        Eigen::MatrixXd a = Eigen::MatrixXd::NullaryExpr(5, 5, [&]() { return dist(rng); });
        const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
        Eigen::MatrixXd q1 = qr.householderQ();
        Eigen::MatrixXd b = Eigen::MatrixXd::NullaryExpr(5, 5, [&]() { return dist(rng); });
        const Eigen::HouseholderQR<Eigen::MatrixXd> qr2(b);
        Eigen::MatrixXd q2 = qr2.householderQ();

        Eigen::VectorXd fg(5), fe(5);
        for (int i = 0; i < 5; ++i) {
            fg[i] = 1.0 + 0.3 * i + 0.1 * dist(rng) * dist(rng);
            fe[i] = 1.5 + 0.4 * i + 0.1 * dist(rng) * dist(rng);
        }
        std::sort(fg.data(), fg.data() + 5);
        std::sort(fe.data(), fe.data() + 5);
        const DuschinskyMap map =
            duschinsky_map(decomposition(fg, q1), decomposition(fe, q2));
        const Eigen::MatrixXd comm = 0.25 * (map.t_plus * map.t_plus.transpose() -
                                             map.t_minus * map.t_minus.transpose());
        CHECK((comm - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
        const Eigen::MatrixXd tt = map.coordinate_map * map.coordinate_map.transpose();
        CHECK((tt - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("bare-frame coefficients agree with the classical phase-space map") {
    // Independent route: a coherent displacement in the shaped frame has
    // first moments <Q_e>, <P_e>; mapping them classically through T and
    // reassembling <a_p> in the bare frame must match bare_frame_displacements.
    Eigen::VectorXd fg(2), fe(2);
    fg << 3.0, 5.0;
    fe << 4.0, 7.0;
    const double c = std::cos(0.41), s = std::sin(0.41);
    Eigen::MatrixXd rot(2, 2);
    rot << c, -s, s, c;
    const ModeDecomposition bare = decomposition(fg, Eigen::MatrixXd::Identity(2, 2));
    const ModeDecomposition shaped = decomposition(fe, rot);
    const DuschinskyMap map = duschinsky_map(bare, shaped);

    Eigen::MatrixXcd ce(1, 2);
    ce << std::complex<double>(0.21, -0.34), std::complex<double>(-0.15, 0.42);
    const Eigen::MatrixXcd cg = bare_frame_displacements(ce, map);

    // shaped-frame coherent amplitudes i*alpha give (hbar = M = 1 units)
    //   <Q_e,j> = sqrt(2/omega_j) Re(i alpha_j), <P_e,j> = sqrt(2 omega_j) Im(i alpha_j)
    Eigen::VectorXd qe(2), pe(2);
    for (int j = 0; j < 2; ++j) {
        const std::complex<double> amp = std::complex<double>(0, 1) * ce(0, j);
        qe[j] = std::sqrt(2.0 / fe[j]) * amp.real();
        pe[j] = std::sqrt(2.0 * fe[j]) * amp.imag();
    }
    const Eigen::VectorXd qg = map.coordinate_map.transpose() * qe;
    const Eigen::VectorXd pg = map.coordinate_map.transpose() * pe;
    for (int p = 0; p < 2; ++p) {
        const std::complex<double> a_bare(std::sqrt(fg[p] / 2.0) * qg[p],
                                          pg[p] / std::sqrt(2.0 * fg[p]));
        // bare coherent amplitude should equal i * C_g(0, p)
        CHECK(std::abs(a_bare - std::complex<double>(0, 1) * cg(0, p)) < 1e-12);
    }
}

TEST_CASE("dimension mismatch is rejected") {
    Eigen::VectorXd f2(2), f3(3);
    f2 << 1.0, 2.0;
    f3 << 1.0, 2.0, 3.0;
    const ModeDecomposition d2 = decomposition(f2, Eigen::MatrixXd::Identity(2, 2));
    const ModeDecomposition d3 = decomposition(f3, Eigen::MatrixXd::Identity(3, 3));
    CHECK_THROWS_AS(duschinsky_map(d2, d3), ValidationError);
    const DuschinskyMap map = duschinsky_map(d2, d2);
    CHECK_THROWS_AS(bare_frame_displacements(Eigen::MatrixXcd::Zero(1, 3), map), ValidationError);
}
