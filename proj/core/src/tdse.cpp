#include "ionshape/tdse.hpp"

#include <cmath>

#include "ionshape/phase_integrals.hpp"

namespace ionshape {

namespace {

using cd = std::complex<double>;

// Tensor-product Fock space helpers: mode 0 is the fastest-varying index.
struct FockSpace {
    int n_modes;
    int levels;  // cutoff + 1
    int dim;

    int stride(int mode) const {
        int s = 1;
        for (int j = 0; j < mode; ++j) s *= levels;
        return s;
    }
};

// out += coeff * (b_j^dag psi)  and  out += conj_coeff * (b_j psi)
void apply_mode_drive(const FockSpace& fs, int mode, cd coeff, cd conj_coeff,
                      const Eigen::VectorXcd& psi, Eigen::VectorXcd& out) {
    const int s = fs.stride(mode);
    const int block = s * fs.levels;
    for (int base = 0; base < fs.dim; base += block) {
        for (int off = 0; off < s; ++off) {
            for (int n = 0; n < fs.levels - 1; ++n) {
                const int idx = base + off + n * s;
                const double root = std::sqrt(static_cast<double>(n + 1));
                out[idx + s] += coeff * root * psi[idx];    // raise
                out[idx] += conj_coeff * root * psi[idx + s];  // lower
            }
        }
    }
}

Eigen::VectorXcd coherent_state(const FockSpace& fs, const Eigen::VectorXcd& amplitudes) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(fs.dim);
    // product of per-mode coherent vectors
    std::vector<Eigen::VectorXcd> per_mode(fs.n_modes);
    for (int j = 0; j < fs.n_modes; ++j) {
        Eigen::VectorXcd v(fs.levels);
        const cd g = amplitudes[j];
        cd term = std::exp(-0.5 * std::norm(g));
        for (int n = 0; n < fs.levels; ++n) {
            v[n] = term;
            term *= g / std::sqrt(static_cast<double>(n + 1));
        }
        per_mode[j] = v;
    }
    for (int idx = 0; idx < fs.dim; ++idx) {
        cd amp = 1.0;
        int rest = idx;
        for (int j = 0; j < fs.n_modes; ++j) {
            amp *= per_mode[j][rest % fs.levels];
            rest /= fs.levels;
        }
        psi[idx] = amp;
    }
    return psi;
}

cd mode_annihilation_expectation(const FockSpace& fs, int mode, const Eigen::VectorXcd& psi) {
    const int s = fs.stride(mode);
    const int block = s * fs.levels;
    cd acc = 0.0;
    for (int base = 0; base < fs.dim; base += block) {
        for (int off = 0; off < s; ++off) {
            for (int n = 0; n < fs.levels - 1; ++n) {
                const int idx = base + off + n * s;
                acc += std::conj(psi[idx]) * std::sqrt(static_cast<double>(n + 1)) * psi[idx + s];
            }
        }
    }
    return acc;
}

double top_level_population(const FockSpace& fs, const Eigen::VectorXcd& psi) {
    double pop = 0.0;
    for (int j = 0; j < fs.n_modes; ++j) {
        const int s = fs.stride(j);
        const int block = s * fs.levels;
        for (int base = 0; base < fs.dim; base += block) {
            for (int off = 0; off < s; ++off) {
                pop += std::norm(psi[base + off + (fs.levels - 1) * s]);
            }
        }
    }
    return pop;
}

}  // namespace

TdseResult tdse_oracle(const PulseSchedule& schedule, const ReducedModeSystem& system,
                       const TdseOptions& options,
                       const Eigen::VectorXcd& initial_coherent_amplitudes) {
    const int ni = system.n_ions();
    const int nm = system.n_modes();
    if (ni < 1 || ni > 3) throw ValidationError("tdse oracle supports 1..3 ions");
    if (nm < 1 || nm > 2) throw ValidationError("tdse oracle supports 1..2 modes");
    if (options.fock_cutoff < 2 || options.fock_cutoff > 30) {
        throw ValidationError("fock cutoff must be in 2..30");
    }
    if (initial_coherent_amplitudes.size() != nm) {
        throw ValidationError("initial coherent amplitude count mismatch");
    }

    const FockSpace fs{nm, options.fock_cutoff + 1,
                       static_cast<int>(std::pow(options.fock_cutoff + 1, nm))};
    const double t_end = schedule.latest_end();

    // Magnus prediction inputs from the same reduced couplings
    ModeDecomposition reduced;
    reduced.frequencies = system.mode_frequencies;
    // encode eta_j B_mj in rows of a pseudo eigenvector matrix; unit eta
    int max_ion = 0;
    for (int m : system.ions_1based) max_ion = std::max(max_ion, m);
    reduced.vectors = Eigen::MatrixXd::Zero(std::max(max_ion, nm), nm);
    for (int a = 0; a < ni; ++a) {
        for (int j = 0; j < nm; ++j) {
            reduced.vectors(system.ions_1based[a] - 1, j) = system.couplings(a, j);
        }
    }
    // system.couplings already carries eta_j B_mj; cancel the sqrt(1/omega)
    // the coupling helper would apply so the product is exactly couplings.
    GateCoupling flat;
    flat.eta_reference = 1.0;
    flat.reference_frequency = 1.0;
    ModeDecomposition reduced_flat = reduced;
    for (int j = 0; j < nm; ++j) {
        reduced_flat.vectors.col(j) *= std::sqrt(reduced.frequencies[j]);
    }

    const DisplacementCoefficients alpha =
        displacement_coefficients(schedule, reduced_flat, flat, t_end);
    const PhaseMatrix phi = phase_matrix(schedule, reduced_flat, flat, t_end);
    const double global_phase = magnus_global_phase(schedule, reduced_flat, flat, t_end);

    const int sectors = 1 << ni;
    TdseResult result;
    result.sector_displacements.resize(sectors, nm);
    result.predicted_displacements.resize(sectors, nm);

    const double w_max = system.mode_frequencies.maxCoeff();
    double drive_max = w_max;
    for (const TonePulse& p : schedule.pulses) {
        if (p.shape == PulseShape::WindowedSine) drive_max = std::max(drive_max, p.shape_frequency);
    }
    const int n_steps = std::max(
        64, static_cast<int>(std::ceil(t_end * drive_max / (2.0 * M_PI) * options.steps_per_period)));
    const double dt = t_end / n_steps;

    const Eigen::VectorXcd psi0 = coherent_state(fs, initial_coherent_amplitudes);
    const double w_sector = 1.0 / static_cast<double>(sectors);  // |amplitude|^2 of |+>^n

    cd overlap = 0.0;
    double norm_drift = 0.0;
    double top_pop = 0.0;

    for (int s = 0; s < sectors; ++s) {
        std::array<double, 3> sign{};
        for (int a = 0; a < ni; ++a) {
            sign[a] = ((s >> (ni - 1 - a)) & 1) ? -1.0 : 1.0;
        }

        auto apply_h = [&](double t, const Eigen::VectorXcd& psi, Eigen::VectorXcd& out) {
            out.setZero();
            for (int j = 0; j < nm; ++j) {
                double g = 0.0;
                for (int a = 0; a < ni; ++a) {
                    g += sign[a] * system.couplings(a, j) *
                         schedule.amplitude_at(system.ions_1based[a], t);
                }
                if (g == 0.0) continue;
                const double w = system.mode_frequencies[j];
                const cd ph = std::polar(g, w * t);
                apply_mode_drive(fs, j, ph, std::conj(ph), psi, out);
            }
        };

        Eigen::VectorXcd psi = psi0;
        Eigen::VectorXcd k1(fs.dim), k2(fs.dim), k3(fs.dim), k4(fs.dim), tmp(fs.dim);
        double t = 0.0;
        const cd m_i(0.0, -1.0);
        for (int step = 0; step < n_steps; ++step) {
            apply_h(t, psi, k1);
            k1 *= m_i;
            tmp = psi + 0.5 * dt * k1;
            apply_h(t + 0.5 * dt, tmp, k2);
            k2 *= m_i;
            tmp = psi + 0.5 * dt * k2;
            apply_h(t + 0.5 * dt, tmp, k3);
            k3 *= m_i;
            tmp = psi + dt * k3;
            apply_h(t + dt, tmp, k4);
            k4 *= m_i;
            psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += dt;
        }
        norm_drift = std::max(norm_drift, std::abs(psi.norm() - 1.0));
        top_pop = std::max(top_pop, top_level_population(fs, psi));

        // Magnus prediction for this sector
        Eigen::VectorXcd beta(nm);
        for (int j = 0; j < nm; ++j) {
            cd b = 0.0;
            for (int a = 0; a < ni; ++a) {
                b += sign[a] * alpha.alpha(system.ions_1based[a] - 1, j);
            }
            beta[j] = b;
        }
        double theta = global_phase;
        for (int a = 0; a < ni; ++a) {
            for (int b = 0; b < ni; ++b) {
                if (a == b) continue;
                theta += phi.phi(system.ions_1based[a] - 1, system.ions_1based[b] - 1) *
                         sign[a] * sign[b];
            }
        }
        // exp[i(beta b^dag + beta^* b)] |gamma> = e^{i Re(beta gamma^*)} |gamma + i beta>
        Eigen::VectorXcd displaced(nm);
        double extra_phase = 0.0;
        for (int j = 0; j < nm; ++j) {
            displaced[j] = initial_coherent_amplitudes[j] + cd(0.0, 1.0) * beta[j];
            extra_phase += (beta[j] * std::conj(initial_coherent_amplitudes[j])).real();
        }
        Eigen::VectorXcd predicted = coherent_state(fs, displaced);
        predicted *= std::exp(cd(0.0, theta + extra_phase));

        overlap += w_sector * predicted.dot(psi);  // dot conjugates the left factor

        for (int j = 0; j < nm; ++j) {
            result.sector_displacements(s, j) = mode_annihilation_expectation(fs, j, psi);
            result.predicted_displacements(s, j) = displaced[j];
        }
    }

    result.overlap = overlap;
    result.overlap_magnitude = std::abs(overlap);
    result.norm_drift = norm_drift;
    result.top_fock_population = top_pop;
    result.cutoff_warning = top_pop > 1e-6;
    return result;
}

}  // namespace ionshape
