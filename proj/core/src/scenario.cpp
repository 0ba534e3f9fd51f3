#include "ionshape/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

namespace ionshape {

std::string to_string(ModeSet m) {
    switch (m) {
        case ModeSet::All: return "all";
        case ModeSet::Localized: return "localized";
        case ModeSet::Bare: return "bare";
    }
    return "all";
}

ModeSet mode_set_from_string(const std::string& s) {
    if (s == "all") return ModeSet::All;
    if (s == "localized") return ModeSet::Localized;
    if (s == "bare") return ModeSet::Bare;
    throw ValidationError("mode_set must be one of all|localized|bare");
}

void ScenarioConfig::validate() const {
    if (ions < 1) throw ValidationError("ion count must be >= 1");
    if (!(quartic_ratio > 0)) throw ValidationError("quartic_ratio must be positive");
    StateFrequencies{omega_ell, omega_ryd}.validate();
    for (int ion : rydberg_ions) {
        if (ion < 1 || ion > ions) throw ValidationError("rydberg ion index out of range");
    }
    GateLayout layout{gate_pairs};
    layout.validate(ions);
    for (const auto& pair : gate_pairs) {
        for (int ion : {pair.first, pair.second}) {
            if (std::find(rydberg_ions.begin(), rydberg_ions.end(), ion) != rydberg_ions.end()) {
                throw ValidationError("a gate ion cannot be Rydberg-excited");
            }
        }
    }
    if (!(eta_reference > 0)) throw ValidationError("eta_reference must be positive");
    if (!(thermal_nbar > 0)) throw ValidationError("thermal nbar must be positive");
    if (pulse.cycles_points < 2 || pulse.delay_points < 1 || pulse.delay_cycles_points < 2) {
        throw ValidationError("scan grids must be nonempty");
    }
    if (!(pulse.cycles_max > pulse.cycles_min) || !(pulse.cycles_min > 0)) {
        throw ValidationError("cycle window must satisfy 0 < min < max");
    }
    if (!(pulse.tau_bus_periods > 0) || pulse.delay_max_bus_periods < 0) {
        throw ValidationError("bad pulse timing parameters");
    }
    if (!(localization_threshold > 0) || localization_threshold > 1) {
        throw ValidationError("localization threshold must be in (0, 1]");
    }
    if (degeneracy_tolerance < 0) throw ValidationError("degeneracy tolerance must be >= 0");
}

namespace {

// Two localized modes of one pair, rotated within quasi-degenerate clusters;
// returns (lower, upper) frequencies by weight ranking.
std::pair<double, double> pair_mode_frequencies(const ModeDecomposition& shaped,
                                                const std::pair<int, int>& pair,
                                                double degeneracy_tolerance) {
    LocalizedModes all = localized_mode_analysis(shaped, {pair.first, pair.second}, 0.0,
                                                 degeneracy_tolerance);
    std::vector<int> order(all.weights.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return all.weights[a] > all.weights[b]; });
    if (order.size() < 2) throw ConsistencyError("pair hosts fewer than two modes");
    double f1 = all.frequencies[order[0]];
    double f2 = all.frequencies[order[1]];
    if (f1 > f2) std::swap(f1, f2);
    return {f1, f2};
}

std::vector<int> top_union_weight_modes(const ModeDecomposition& shaped,
                                        const GateLayout& layout, int count) {
    const int n = shaped.size();
    std::vector<double> weight(n, 0.0);
    for (int j = 0; j < n; ++j) {
        for (int ion : layout.qubit_ions_1based()) {
            weight[j] += shaped.vectors(ion - 1, j) * shaped.vectors(ion - 1, j);
        }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return weight[a] > weight[b]; });
    std::vector<int> top(order.begin(), order.begin() + std::min(count, n));
    std::sort(top.begin(), top.end());
    return top;
}

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return std::max(1u, std::min(hw, 16u));
}

template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    threads = std::min(resolve_threads(threads), std::max(1, count));
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&]() {
            while (true) {
                const int i = next.fetch_add(1);
                if (i >= count) break;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

ScanContext prepare_scan(const ScenarioConfig& config, ModeSet mode_set) {
    config.validate();
    ScanContext ctx;
    ctx.config = config;
    ctx.mode_set = mode_set;
    ctx.chain = solve_equilibrium(config.ions, config.quartic_ratio);

    const StateFrequencies freqs{config.omega_ell, config.omega_ryd};
    ctx.bare = diagonalize(build_hessian(ctx.chain, ElectronicAssignment::all_ell(config.ions, freqs)));
    ctx.layout.pairs_1based = config.gate_pairs;
    ctx.coupling.eta_reference = config.eta_reference;
    ctx.coupling.reference_frequency = config.omega_ell;
    ctx.thermal = ThermalState::from_occupation(ctx.bare.frequencies, config.ions - 1,
                                                config.thermal_nbar);

    if (mode_set == ModeSet::Bare) {
        ctx.active = ctx.bare;
        ctx.map = duschinsky_map(ctx.bare, ctx.bare);
        ctx.bus_frequency = ctx.bare.frequencies[config.ions - 1];
        ctx.localized_modes.clear();
    } else {
        const ElectronicAssignment shaped_assignment =
            ElectronicAssignment::with_rydberg(config.ions, freqs, config.rydberg_ions);
        ctx.active = diagonalize(build_hessian(ctx.chain, shaped_assignment));
        ctx.map = duschinsky_map(ctx.bare, ctx.active);
        ctx.localized_modes = top_union_weight_modes(ctx.active, ctx.layout, 4);
        const auto [lower, upper] = pair_mode_frequencies(ctx.active, config.gate_pairs[0],
                                                          config.degeneracy_tolerance);
        (void)lower;
        ctx.bus_frequency = upper;
        if (mode_set == ModeSet::Localized) ctx.mode_subset = ctx.localized_modes;
    }
    ctx.tau = config.pulse.tau_bus_periods * 2.0 * M_PI / ctx.bus_frequency;
    return ctx;
}

ScanRow evaluate_scan_point(const ScanContext& ctx, double nu, double delay) {
    ScanRow row;
    row.nu = nu;
    row.cycles = nu * ctx.tau / (2.0 * M_PI);
    row.delay = delay;

    const auto qubits = ctx.layout.qubit_ions_1based();
    PulseSchedule schedule;
    for (int slot = 0; slot < 4; ++slot) {
        TonePulse p;
        p.ion_1based = qubits[slot];
        p.amplitude = ctx.config.drive_signs[slot];
        p.shape_frequency = nu;
        p.start_time = (slot < 2) ? 0.0 : delay;
        p.duration = ctx.tau;
        schedule.pulses.push_back(p);
    }
    const double t_end = ctx.tau + delay;

    const PhaseMatrix unit_phi =
        phase_matrix(schedule, ctx.active, ctx.coupling, t_end, ctx.mode_subset);
    row.phi_11 = unit_phi.phi(qubits[0] - 1, qubits[1] - 1);
    row.phi_22 = unit_phi.phi(qubits[2] - 1, qubits[3] - 1);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (!(row.phi_11 > 1e-15) || !(row.phi_22 > 1e-15)) {
        row.fidelity = nan;
        row.max_abs_alpha = nan;
        row.calibrated = false;
        return row;
    }

    const double scale1 = std::sqrt((M_PI / 8.0) / row.phi_11);
    const double scale2 = std::sqrt((M_PI / 8.0) / row.phi_22);
    Eigen::VectorXd ion_scale = Eigen::VectorXd::Ones(ctx.config.ions);
    ion_scale[qubits[0] - 1] = scale1;
    ion_scale[qubits[1] - 1] = scale1;
    ion_scale[qubits[2] - 1] = scale2;
    ion_scale[qubits[3] - 1] = scale2;

    // alpha is linear and phi bilinear in the per-ion amplitudes
    DisplacementCoefficients alpha =
        displacement_coefficients(schedule, ctx.active, ctx.coupling, t_end, ctx.mode_subset);
    Eigen::MatrixXcd alpha_cal = ion_scale.asDiagonal() * alpha.alpha;
    PhaseMatrix phi_cal;
    phi_cal.phi = ion_scale.asDiagonal() * unit_phi.phi * ion_scale.asDiagonal();

    const Eigen::MatrixXcd bare_coeffs = bare_frame_displacements(alpha_cal, ctx.map);
    row.fidelity = gate_fidelity(bare_coeffs, phi_cal, ctx.thermal, ctx.layout);
    row.max_abs_alpha = alpha_cal.cwiseAbs().maxCoeff();
    row.calibrated = true;
    return row;
}

std::vector<ScanRow> gate_scan(const ScanContext& ctx, int threads) {
    const PulseGrid& g = ctx.config.pulse;
    std::vector<ScanRow> rows(g.cycles_points);
    const double step = (g.cycles_max - g.cycles_min) / (g.cycles_points - 1);
    parallel_for(g.cycles_points, threads, [&](int i) {
        const double cycles = g.cycles_min + i * step;
        rows[i] = evaluate_scan_point(ctx, cycles * 2.0 * M_PI / ctx.tau, 0.0);
    });
    return rows;
}

DelayScanResult delay_scan(const ScanContext& ctx, int threads) {
    const PulseGrid& g = ctx.config.pulse;
    DelayScanResult out;
    const double tau_bus = 2.0 * M_PI / ctx.bus_frequency;
    out.delays.resize(g.delay_points);
    for (int d = 0; d < g.delay_points; ++d) {
        out.delays[d] = (g.delay_points == 1)
                            ? 0.0
                            : g.delay_max_bus_periods * tau_bus * d / (g.delay_points - 1);
    }
    const int nv = g.delay_cycles_points;
    const double step = (g.cycles_max - g.cycles_min) / (nv - 1);
    out.rows.resize(g.delay_points * nv);
    parallel_for(g.delay_points * nv, threads, [&](int i) {
        const int d = i / nv;
        const int v = i % nv;
        const double cycles = g.cycles_min + v * step;
        out.rows[i] = evaluate_scan_point(ctx, cycles * 2.0 * M_PI / ctx.tau, out.delays[d]);
    });
    out.max_fidelity.assign(g.delay_points, std::numeric_limits<double>::quiet_NaN());
    for (int d = 0; d < g.delay_points; ++d) {
        double best = -1.0;
        for (int v = 0; v < nv; ++v) {
            const double f = out.rows[d * nv + v].fidelity;
            if (std::isfinite(f) && f > best) best = f;
        }
        if (best >= 0.0) out.max_fidelity[d] = best;
    }
    return out;
}

DressingReport run_dressing(const DressingConfig& config) {
    constexpr double mhz = 2.0 * M_PI * 1e6;
    DressedSystem sys;
    sys.delta_s = config.delta_s_mhz * mhz;
    sys.delta_p = config.delta_p_mhz * mhz;
    sys.omega_mw = config.omega_mw_mhz * mhz;

    DressingReport rep;
    // laser amplitude realizing the target effective D <-> |-> coupling
    const DressedStates bare = dressed_analysis(sys);
    const double root = std::hypot(sys.omega_mw, sys.delta_minus());
    rep.omega_laser = config.omega_minus_mhz * mhz * 2.0 * root * bare.n_minus / sys.omega_mw;
    sys.omega_laser = rep.omega_laser;
    rep.states = dressed_analysis(sys);

    rep.pi_pulse = evolve_three_level(sys, config.pulse_duration_us * 1e-6);
    rep.pi_pulse_minus_population = rep.pi_pulse.samples.back().pop_minus;

    // reduced model: Rabi oscillation D <-> |-> with detuning E_-
    const double om = rep.states.omega_minus;
    const double em = rep.states.e_minus;
    const double rabi = std::hypot(om, em);
    for (const ThreeLevelSample& s : rep.pi_pulse.samples) {
        const double p2 = (om * om / (rabi * rabi)) * std::pow(std::sin(0.5 * rabi * s.time), 2);
        rep.two_level_max_deviation =
            std::max(rep.two_level_max_deviation, std::abs(s.pop_minus - p2));
    }

    DressedSystem ramp_sys = sys;
    ramp_sys.omega_laser = 0.0;
    const double sweep = sys.omega_mw / config.ramp_rate_divisor;
    rep.ramp = adiabatic_ramp(ramp_sys, sweep, config.ramp_duration_ns * 1e-9);
    rep.ramp_final_p_population = rep.ramp.samples.back().pop_p();
    double closest_13 = 1e9;
    for (const ThreeLevelSample& s : rep.ramp.samples) {
        const double t_ns = s.time * 1e9;
        if (rep.ramp_time_to_99_ns < 0 && s.pop_p() >= 0.99) rep.ramp_time_to_99_ns = t_ns;
        if (rep.ramp_time_to_999_ns < 0 && s.pop_p() >= 0.999) rep.ramp_time_to_999_ns = t_ns;
        if (std::abs(t_ns - 13.0) < closest_13) {
            closest_13 = std::abs(t_ns - 13.0);
            rep.ramp_p_population_at_13ns = s.pop_p();
        }
    }
    return rep;
}

PhysicalReport physical_report(const ScenarioConfig& config, const ScanContext& shaped_ctx) {
    if (!config.trap) throw ValidationError("no trap parameters configured");
    PhysicalConstants consts = PhysicalConstants::ca40_ion();
    consts.ion_mass = config.trap->ion_mass_u * 1.66053906660e-27;

    TrapParameters trap;
    trap.rf_gradient = config.trap->rf_gradient;
    trap.rf_frequency = 2.0 * M_PI * config.trap->rf_frequency_mhz * 1e6;
    trap.quadratic_coefficient = config.trap->quadratic_coefficient;
    trap.quartic_coefficient = quartic_coefficient_for_ratio(config.trap->quadratic_coefficient,
                                                             config.quartic_ratio, consts);

    PhysicalReport rep;
    rep.units = derive_scaled_units(trap, consts);
    rep.omega_ell_over_omega_s =
        transverse_ell_frequency(trap, consts) / rep.units.frequency_scale;
    rep.gate_time_us = shaped_ctx.tau / rep.units.frequency_scale * 1e6;
    rep.decay_factor_single = decay_penalty(1, config.decay.excited_duration_us * 1e-6,
                                            config.decay.lifetime_us * 1e-6);
    rep.decay_factor_all_rydberg =
        decay_penalty(static_cast<int>(config.rydberg_ions.size()),
                      config.decay.excited_duration_us * 1e-6, config.decay.lifetime_us * 1e-6);
    rep.thermal_temperature_mk =
        shaped_ctx.thermal.temperature_kelvin(rep.units.frequency_scale, consts) * 1e3;
    return rep;
}

}  // namespace ionshape
