#include "ionshape/dressing.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace ionshape {

namespace {

using cd = std::complex<double>;
using Vec3 = Eigen::Vector3cd;

double dressed_population(const Vec3& psi, double c_mix) {
    const double norm = 1.0 / std::sqrt(1.0 + c_mix * c_mix);
    const cd amp = norm * (c_mix * psi[1] + psi[2]);  // N (C <P| + <S|)
    return std::norm(amp);
}

}  // namespace

void DressedSystem::validate() const {
    if (!(omega_mw > 0)) throw ValidationError("microwave Rabi frequency must be positive");
}

DressedStates dressed_analysis(const DressedSystem& sys) {
    sys.validate();
    const double dm = sys.delta_minus();
    const double root = std::hypot(sys.omega_mw, dm);

    DressedStates d;
    d.c_plus = (dm + root) / sys.omega_mw;
    d.c_minus = (dm - root) / sys.omega_mw;
    d.n_plus = 1.0 / std::sqrt(1.0 + d.c_plus * d.c_plus);
    d.n_minus = 1.0 / std::sqrt(1.0 + d.c_minus * d.c_minus);
    d.e_plus = 0.5 * sys.delta_plus() + 0.5 * root;
    d.e_minus = 0.5 * sys.delta_plus() - 0.5 * root;
    d.omega_plus = sys.omega_mw * sys.omega_laser / (2.0 * root * d.n_plus);
    d.omega_minus = sys.omega_mw * sys.omega_laser / (2.0 * root * d.n_minus);
    return d;
}

DressedPolarizability dressed_polarizability(const DressedStates& states, double p_np,
                                             double p_ns) {
    DressedPolarizability out;
    out.p_plus = states.n_plus * states.n_plus *
                 (states.c_plus * states.c_plus * p_np + p_ns);
    out.p_minus = states.n_minus * states.n_minus *
                  (states.c_minus * states.c_minus * p_np + p_ns);
    if (p_np * p_ns < 0) {
        out.zero_crossing_exists = true;
        out.zero_crossing_mixing = std::sqrt(-p_ns / p_np);
    }
    return out;
}

ThreeLevelTrajectory evolve_three_level(const DressedSystem& sys, double duration,
                                        const IntegrationControl& control,
                                        const std::vector<std::complex<double>>& initial) {
    sys.validate();
    if (!(duration > 0)) throw ValidationError("duration must be positive");

    Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
    h(0, 1) = h(1, 0) = 0.5 * sys.omega_laser;
    h(1, 1) = sys.delta_p;
    h(1, 2) = h(2, 1) = 0.5 * sys.omega_mw;
    h(2, 2) = sys.delta_s;

    const double scale = std::max({sys.omega_mw, std::abs(sys.delta_plus()),
                                   std::abs(sys.delta_minus()), std::abs(sys.omega_laser)});
    const double dt_max = 1.0 / (control.step_safety * scale);
    const int n_steps = std::max(16, static_cast<int>(std::ceil(duration / dt_max)));
    const double dt = duration / n_steps;
    if (dt > dt_max * (1.0 + 1e-12)) {
        throw ConsistencyError("integration step exceeds the stability bound");
    }

    Vec3 psi;
    if (initial.empty()) {
        psi << 1.0, 0.0, 0.0;
    } else if (initial.size() == 3) {
        psi << initial[0], initial[1], initial[2];
        psi.normalize();
    } else {
        throw ValidationError("initial state needs exactly three amplitudes");
    }

    const DressedStates ds = dressed_analysis(sys);
    ThreeLevelTrajectory traj;
    const int thin = std::max(1, n_steps / control.max_samples);

    auto record = [&](double t, const Vec3& v) {
        ThreeLevelSample s;
        s.time = t;
        s.c_d = v[0];
        s.c_p = v[1];
        s.c_s = v[2];
        s.pop_minus = dressed_population(v, ds.c_minus);
        s.pop_plus = dressed_population(v, ds.c_plus);
        traj.samples.push_back(s);
    };
    record(0.0, psi);

    const cd m_i(0.0, -1.0);
    double t = 0.0;
    for (int step = 0; step < n_steps; ++step) {
        const Vec3 k1 = m_i * (h * psi);
        const Vec3 k2 = m_i * (h * (psi + 0.5 * dt * k1));
        const Vec3 k3 = m_i * (h * (psi + 0.5 * dt * k2));
        const Vec3 k4 = m_i * (h * (psi + dt * k3));
        psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += dt;
        if ((step + 1) % thin == 0 || step + 1 == n_steps) record(t, psi);
    }

    traj.norm_drift = std::abs(psi.norm() - 1.0);
    if (traj.norm_drift > 1e-8) {
        throw ConsistencyError("three-level evolution lost unitarity beyond 1e-8");
    }
    return traj;
}

ThreeLevelTrajectory adiabatic_ramp(const DressedSystem& sys, double sweep_rate,
                                    double duration, const IntegrationControl& control,
                                    double detuning_cutoff_mw_multiple) {
    sys.validate();
    if (sys.omega_laser != 0.0) {
        throw ValidationError("ramp requires the Rydberg laser off");
    }
    if (!(duration > 0) || sweep_rate < 0) throw ValidationError("bad ramp parameters");

    const double dsp0 = sys.delta_s - sys.delta_p;
    auto delta_sp = [&](double t) { return dsp0 * (1.0 - sweep_rate * sweep_rate * t * t); };

    // step bound from the largest detuning reached along the ramp
    const double dsp_end = std::abs(delta_sp(duration));
    const double scale = std::max({sys.omega_mw, std::abs(dsp0), dsp_end,
                                   std::abs(sys.delta_p) + dsp_end});
    const double dt_max = 1.0 / (control.step_safety * scale);
    const int n_steps = std::max(64, static_cast<int>(std::ceil(duration / dt_max)));
    const double dt = duration / n_steps;

    // start in the dressed |-> of the initial detunings
    const DressedStates ds0 = dressed_analysis(sys);
    Vec3 psi;
    psi << 0.0, ds0.n_minus * ds0.c_minus, ds0.n_minus;

    ThreeLevelTrajectory traj;
    const int thin = std::max(1, n_steps / control.max_samples);
    const double cutoff = detuning_cutoff_mw_multiple * sys.omega_mw;

    auto h_at = [&](double t) {
        Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
        h(1, 1) = sys.delta_p;
        h(1, 2) = h(2, 1) = 0.5 * sys.omega_mw;
        h(2, 2) = sys.delta_p + delta_sp(t);  // Delta_P fixed, MW frequency swept
        return h;
    };
    auto record = [&](double t, const Vec3& v) {
        DressedSystem inst = sys;
        inst.delta_s = sys.delta_p + delta_sp(t);
        const DressedStates ds = dressed_analysis(inst);
        ThreeLevelSample s;
        s.time = t;
        s.c_d = v[0];
        s.c_p = v[1];
        s.c_s = v[2];
        s.pop_minus = dressed_population(v, ds.c_minus);
        s.pop_plus = dressed_population(v, ds.c_plus);
        traj.samples.push_back(s);
    };
    record(0.0, psi);

    const cd m_i(0.0, -1.0);
    double t = 0.0;
    for (int step = 0; step < n_steps; ++step) {
        const Eigen::Matrix3cd h1 = h_at(t);
        const Eigen::Matrix3cd h2 = h_at(t + 0.5 * dt);
        const Eigen::Matrix3cd h3 = h_at(t + dt);
        const Vec3 k1 = m_i * (h1 * psi);
        const Vec3 k2 = m_i * (h2 * (psi + 0.5 * dt * k1));
        const Vec3 k3 = m_i * (h2 * (psi + 0.5 * dt * k2));
        const Vec3 k4 = m_i * (h3 * (psi + dt * k3));
        psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += dt;
        if ((step + 1) % thin == 0 || step + 1 == n_steps) record(t, psi);
        if (std::abs(delta_sp(t)) >= cutoff) break;
    }

    traj.norm_drift = std::abs(psi.norm() - 1.0);
    if (traj.norm_drift > 1e-8) {
        throw ConsistencyError("ramp evolution lost unitarity beyond 1e-8");
    }
    return traj;
}

}  // namespace ionshape
