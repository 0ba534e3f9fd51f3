#pragma once

// Test-only reference implementations, kept independent of the library code
// paths they check: truncated-Fock displacement operators built by matrix
// exponentiation, a 16-dimensional direct fidelity construction, and small
// root-finding / grid-refinement helpers.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracles {

using cd = std::complex<double>;

inline Eigen::MatrixXcd expm_taylor(Eigen::MatrixXcd a) {
    // scaling and squaring with a plain Taylor core; fine for small norms
    int squarings = 0;
    double norm = a.cwiseAbs().sum();
    while (norm > 0.5) {
        a *= 0.5;
        norm *= 0.5;
        ++squarings;
    }
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
    Eigen::MatrixXcd term = result;
    for (int k = 1; k <= 24; ++k) {
        term = term * a / static_cast<double>(k);
        result += term;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

inline Eigen::MatrixXcd displacement_matrix(cd gamma, int cutoff) {
    const int dim = cutoff + 1;
    Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n < dim - 1; ++n) {
        const double root = std::sqrt(static_cast<double>(n + 1));
        gen(n + 1, n) += gamma * root;            // gamma b^dag
        gen(n, n + 1) -= std::conj(gamma) * root;  // - gamma^* b
    }
    return expm_taylor(gen);
}

inline double spin_sign(int basis_index, int slot) {
    return ((basis_index >> (3 - slot)) & 1) ? -1.0 : 1.0;
}

// Direct fidelity: the reduced 16x16 spin density matrix is assembled from
// truncated-Fock thermal displacement traces and projected on the ideal
// output state, with no use of the coth closed form.
inline double brute_force_fidelity(const Eigen::MatrixXcd& qubit_coeffs,  // 4 x modes
                                   const Eigen::Matrix4d& phi_qubits,
                                   const Eigen::VectorXd& gamma, int cutoff) {
    const int n_modes = static_cast<int>(qubit_coeffs.cols());

    std::array<double, 16> theta{};
    for (int j = 0; j < 16; ++j) {
        double t = 0.0;
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                if (a != b) t += phi_qubits(a, b) * spin_sign(j, a) * spin_sign(j, b);
            }
        }
        theta[j] = t;
    }

    Eigen::MatrixXcd beta(16, n_modes);
    for (int j = 0; j < 16; ++j) {
        for (int p = 0; p < n_modes; ++p) {
            cd b = 0.0;
            for (int a = 0; a < 4; ++a) b += spin_sign(j, a) * qubit_coeffs(a, p);
            beta(j, p) = b;
        }
    }

    // thermal density matrices per mode
    std::vector<Eigen::MatrixXcd> rho(n_modes);
    for (int p = 0; p < n_modes; ++p) {
        Eigen::VectorXd pops(cutoff + 1);
        for (int n = 0; n <= cutoff; ++n) pops[n] = std::exp(-gamma[p] * n);
        pops /= pops.sum();
        rho[p] = pops.cast<cd>().asDiagonal();
    }

    // ideal output state: exp[i pi/4 (s1 s2 + s3 s4)] |+>^4
    Eigen::VectorXcd ideal(16);
    for (int j = 0; j < 16; ++j) {
        const double s = spin_sign(j, 0) * spin_sign(j, 1) + spin_sign(j, 2) * spin_sign(j, 3);
        ideal[j] = 0.25 * std::exp(cd(0.0, M_PI / 4.0 * s));
    }

    Eigen::MatrixXcd rho_spin(16, 16);
    for (int j = 0; j < 16; ++j) {
        for (int k = 0; k < 16; ++k) {
            cd trace_factor = 1.0;
            for (int p = 0; p < n_modes; ++p) {
                const Eigen::MatrixXcd dj = displacement_matrix(cd(0, 1) * beta(j, p), cutoff);
                const Eigen::MatrixXcd dk = displacement_matrix(cd(0, 1) * beta(k, p), cutoff);
                trace_factor *= (dk.adjoint() * dj * rho[p]).trace();
            }
            rho_spin(j, k) =
                (1.0 / 16.0) * std::exp(cd(0.0, theta[j] - theta[k])) * trace_factor;
        }
    }
    return (ideal.adjoint() * rho_spin * ideal).value().real();
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double tol = 1e-13) {
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo < 0) == (fm < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// coarse-to-fine 1-D minimization by repeated grid refinement
inline double grid_refine_min(const std::function<double(double)>& f, double lo, double hi,
                              int levels = 24, int points = 41) {
    for (int level = 0; level < levels; ++level) {
        double best_x = lo, best_f = f(lo);
        for (int i = 1; i < points; ++i) {
            const double x = lo + (hi - lo) * i / (points - 1);
            const double v = f(x);
            if (v < best_f) {
                best_f = v;
                best_x = x;
            }
        }
        const double h = (hi - lo) / (points - 1);
        lo = best_x - h;
        hi = best_x + h;
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracles
