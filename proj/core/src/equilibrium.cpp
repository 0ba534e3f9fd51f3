#include "ionshape/equilibrium.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace ionshape {

namespace {

bool strictly_increasing(const Eigen::VectorXd& z) {
    for (int i = 1; i < z.size(); ++i) {
        if (!(z[i] > z[i - 1])) return false;
    }
    return true;
}

void check_distinct(const Eigen::VectorXd& z) {
    for (int i = 0; i < z.size(); ++i) {
        for (int j = i + 1; j < z.size(); ++j) {
            if (z[i] == z[j]) {
                std::ostringstream msg;
                msg << "coincident ion positions at indices " << i << " and " << j;
                throw SingularityError(msg.str());
            }
        }
    }
}

}  // namespace

AxialEnergyGradient scaled_axial_energy_gradient(const Eigen::VectorXd& z, double k4) {
    check_distinct(z);
    const int n = static_cast<int>(z.size());
    AxialEnergyGradient out;
    out.gradient = Eigen::VectorXd::Zero(n);
    double e = 0.0;
    for (int m = 0; m < n; ++m) {
        e += -0.5 * z[m] * z[m] + 0.25 * k4 * std::pow(z[m], 4);
        out.gradient[m] = -z[m] + k4 * z[m] * z[m] * z[m];
    }
    for (int m = 0; m < n; ++m) {
        for (int k = m + 1; k < n; ++k) {
            const double d = z[m] - z[k];
            e += 1.0 / std::abs(d);
            const double f = 1.0 / (d * d);  // magnitude of the pair force
            const double s = (d > 0) ? 1.0 : -1.0;
            out.gradient[m] -= s * f;
            out.gradient[k] += s * f;
        }
    }
    out.energy = e;
    return out;
}

Eigen::MatrixXd scaled_axial_hessian(const Eigen::VectorXd& z, double k4) {
    check_distinct(z);
    const int n = static_cast<int>(z.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int m = 0; m < n; ++m) {
        h(m, m) = -1.0 + 3.0 * k4 * z[m] * z[m];
    }
    for (int m = 0; m < n; ++m) {
        for (int k = m + 1; k < n; ++k) {
            const double inv3 = 2.0 / std::pow(std::abs(z[m] - z[k]), 3);
            h(m, m) += inv3;
            h(k, k) += inv3;
            h(m, k) -= inv3;
            h(k, m) -= inv3;
        }
    }
    return h;
}

ChainConfiguration solve_equilibrium(int n_ions, double k4,
                                     const std::optional<Eigen::VectorXd>& initial_guess,
                                     const EquilibriumOptions& options,
                                     EquilibriumReport* report) {
    if (n_ions < 1) throw ValidationError("need at least one ion");
    if (!(k4 > 0)) throw ValidationError("k4 must be positive");

    if (n_ions == 1) {
        ChainConfiguration c;
        c.positions = Eigen::VectorXd::Zero(1);
        c.quartic_ratio = k4;
        if (report) {
            report->iterations = 0;
            report->gradient_norm = 0.0;
        }
        return c;
    }

    Eigen::VectorXd z;
    if (initial_guess) {
        z = *initial_guess;
        if (static_cast<int>(z.size()) != n_ions) {
            throw ValidationError("initial guess size mismatch");
        }
        std::sort(z.data(), z.data() + z.size());
        check_distinct(z);
    } else {
        const double span = std::sqrt(2.0 / k4);
        z = Eigen::VectorXd::LinSpaced(n_ions, -span, span);
        // condition the compressed seed: 1-D search on an overall scale
        double best_scale = 1.0;
        double best_energy = scaled_axial_energy_gradient(z, k4).energy;
        for (int i = 1; i <= 60; ++i) {
            const double s = 1.0 + 0.1 * i;
            const double e = scaled_axial_energy_gradient(s * z, k4).energy;
            if (e < best_energy) {
                best_energy = e;
                best_scale = s;
            }
        }
        z *= best_scale;
    }

    AxialEnergyGradient cur = scaled_axial_energy_gradient(z, k4);
    if (report) {
        report->energy_trace.clear();
        report->energy_trace.push_back(cur.energy);
    }

    int it = 0;
    double grad_norm = cur.gradient.lpNorm<Eigen::Infinity>();
    for (; it < options.max_iterations && grad_norm > options.gradient_tolerance; ++it) {
        Eigen::MatrixXd h = scaled_axial_hessian(z, k4);
        Eigen::VectorXd step;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
        bool newton_ok = ldlt.info() == Eigen::Success && ldlt.isPositive();
        if (newton_ok) {
            step = ldlt.solve(-cur.gradient);
            newton_ok = step.allFinite() && step.dot(cur.gradient) < 0;
        }
        if (!newton_ok) {
            // Levenberg fallback, then plain descent as a last resort
            const double mu = 1e-3 + h.diagonal().cwiseAbs().maxCoeff();
            Eigen::LDLT<Eigen::MatrixXd> damped(h + mu * Eigen::MatrixXd::Identity(n_ions, n_ions));
            step = damped.solve(-cur.gradient);
            if (!step.allFinite() || step.dot(cur.gradient) >= 0) {
                step = -cur.gradient;
            }
        }

        double lambda = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            Eigen::VectorXd trial = z + lambda * step;
            if (strictly_increasing(trial)) {
                AxialEnergyGradient t = scaled_axial_energy_gradient(trial, k4);
                if (t.energy < cur.energy) {
                    z = trial;
                    cur = t;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!accepted) {
            // gradient direction with an ordering-safe trust radius
            double min_gap = (z.tail(n_ions - 1) - z.head(n_ions - 1)).minCoeff();
            Eigen::VectorXd dir = -cur.gradient / grad_norm;
            lambda = 0.25 * min_gap;
            for (int ls = 0; ls < 80; ++ls) {
                Eigen::VectorXd trial = z + lambda * dir;
                if (strictly_increasing(trial)) {
                    AxialEnergyGradient t = scaled_axial_energy_gradient(trial, k4);
                    if (t.energy < cur.energy) {
                        z = trial;
                        cur = t;
                        accepted = true;
                        break;
                    }
                }
                lambda *= 0.5;
            }
        }
        if (!accepted) break;
        if (report) report->energy_trace.push_back(cur.energy);
        grad_norm = cur.gradient.lpNorm<Eigen::Infinity>();
    }

    if (report) {
        report->iterations = it;
        report->gradient_norm = grad_norm;
    }
    if (grad_norm > options.gradient_tolerance) {
        std::ostringstream msg;
        msg << "equilibrium solve did not converge after " << it
            << " iterations; |grad|_inf = " << grad_norm;
        throw ConvergenceError(msg.str(), grad_norm);
    }

    // minimum check: the axial Hessian must be positive semidefinite
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(scaled_axial_hessian(z, k4),
                                                      Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -1e-8) {
        throw ConvergenceError("stationary point is not a minimum", min_eig);
    }

    ChainConfiguration c;
    c.positions = z;
    c.quartic_ratio = k4;
    return c;
}

SpacingStatistics spacing_statistics(const ChainConfiguration& config, double central_fraction) {
    const int n = config.size();
    if (n < 2) throw ValidationError("spacing statistics need at least two ions");
    if (!(central_fraction > 0.0) || central_fraction > 1.0) {
        throw ValidationError("central fraction must be in (0, 1]");
    }
    const int m = std::min(n, static_cast<int>(std::ceil(central_fraction * n)));
    const int count = std::max(m, 2);
    const int start = (n - count) / 2;

    SpacingStatistics s;
    const int gaps = count - 1;
    double sum = 0.0, sum2 = 0.0;
    s.min = std::numeric_limits<double>::infinity();
    s.max = 0.0;
    for (int i = 0; i < gaps; ++i) {
        const double d = config.positions[start + i + 1] - config.positions[start + i];
        sum += d;
        sum2 += d * d;
        s.min = std::min(s.min, d);
        s.max = std::max(s.max, d);
    }
    s.mean = sum / gaps;
    const double var = std::max(0.0, sum2 / gaps - s.mean * s.mean);
    s.relative_std = (s.mean > 0) ? std::sqrt(var) / s.mean : 0.0;
    return s;
}

}  // namespace ionshape
