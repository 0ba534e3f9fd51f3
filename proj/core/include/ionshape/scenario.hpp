#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ionshape/dressing.hpp"
#include "ionshape/duschinsky.hpp"
#include "ionshape/fidelity.hpp"
#include "ionshape/gate.hpp"
#include "ionshape/modes.hpp"
#include "ionshape/thermal.hpp"
#include "ionshape/trap.hpp"

namespace ionshape {

enum class ModeSet { All, Localized, Bare };

std::string to_string(ModeSet m);
ModeSet mode_set_from_string(const std::string& s);

struct PulseGrid {
    double tau_bus_periods = 8.0;
    double cycles_min = 2.5;   // nu * tau / (2 pi)
    double cycles_max = 9.5;
    int cycles_points = 1751;  // step 1/250: integer cycle counts land on-grid
    double delay_max_bus_periods = 4.0;
    int delay_points = 20;
    int delay_cycles_points = 99;  // step 1/14, integers on-grid
};

struct DressingConfig {
    double delta_s_mhz = 136.074;    // cycles-MHz; rad/s = 2 pi 1e6 * value
    double delta_p_mhz = 293.957;
    double omega_mw_mhz = 400.0;
    double omega_minus_mhz = 1.0;    // target effective D <-> |-> Rabi
    double pulse_duration_us = 0.5;
    double ramp_rate_divisor = 4.7;  // c = Omega_MW / divisor
    double ramp_duration_ns = 20.0;
};

struct TrapConfig {
    double rf_gradient = 7.0e8;          // V/m^2
    double rf_frequency_mhz = 25.2;      // cycles-MHz
    double quadratic_coefficient = -2.09e3;  // V/m^2
    double ion_mass_u = 39.9615;         // atomic mass units (Ca-40 ion)
};

struct DecayConfig {
    double lifetime_us = 270.0;
    double excited_duration_us = 4.9;  // gate time plus excitation overhead
};

// Full scenario description; defaults reproduce the reference setup.
struct ScenarioConfig {
    int ions = 100;
    double quartic_ratio = 1.343;
    double omega_ell = 150.0;   // units of omega_s
    double omega_ryd = 198.5;
    std::vector<int> rydberg_ions = {45, 48, 53, 56};  // 1-based
    std::array<std::pair<int, int>, 2> gate_pairs = {{{46, 47}, {54, 55}}};
    std::array<double, 4> drive_signs = {1.0, -1.0, 1.0, -1.0};
    double eta_reference = 0.1;
    PulseGrid pulse;
    double thermal_nbar = 3.25;
    ModeSet mode_set = ModeSet::All;
    double localization_threshold = 0.95;
    double degeneracy_tolerance = 0.2;
    std::optional<TrapConfig> trap = TrapConfig{};
    DressingConfig dressing;
    DecayConfig decay;
    std::string output_dir = "out";

    void validate() const;
};

// Heavy state shared by every grid point of a scan.
struct ScanContext {
    ScenarioConfig config;
    ModeSet mode_set = ModeSet::All;
    ChainConfiguration chain;
    ModeDecomposition bare;
    ModeDecomposition active;    // shaped modes, or bare for ModeSet::Bare
    DuschinskyMap map;           // identity for ModeSet::Bare
    ThermalState thermal;
    GateLayout layout;
    GateCoupling coupling;
    std::vector<int> localized_modes;  // four highest pair-union-weight modes
    double bus_frequency = 0.0;  // higher-energy localized mode (pair 1)
    double tau = 0.0;            // gate window, units of 1/omega_s
    ModeSubset mode_subset;      // engaged for ModeSet::Localized
};

ScanContext prepare_scan(const ScenarioConfig& config, ModeSet mode_set);

struct ScanRow {
    double nu = 0.0;       // units of omega_s
    double cycles = 0.0;   // nu tau / 2 pi
    double delay = 0.0;    // units of 1/omega_s
    double phi_11 = 0.0;   // unit-amplitude pair phases
    double phi_22 = 0.0;
    double max_abs_alpha = 0.0;
    double fidelity = 0.0;
    bool calibrated = false;
};

// Fidelity at one (nu, delay) grid point: calibrate each pair to pi/8 and
// evaluate the thermal fidelity. Uncalibratable points (unit phase <= 0)
// report fidelity NaN.
ScanRow evaluate_scan_point(const ScanContext& ctx, double nu, double delay);

std::vector<ScanRow> gate_scan(const ScanContext& ctx, int threads = 0);

struct DelayScanResult {
    std::vector<ScanRow> rows;          // all (delay, nu) points, delay-major
    std::vector<double> delays;
    std::vector<double> max_fidelity;   // per delay, NaN-aware max over nu
};

DelayScanResult delay_scan(const ScanContext& ctx, int threads = 0);

// Dressed-state excitation run: carrier pi pulse on the D <-> |-> transition
// plus the adiabatic microwave switch-off, with the reduced two-level model
// as a cross-check.
struct DressingReport {
    DressedStates states;
    double omega_laser = 0.0;              // rad/s, realizes the target Omega_-
    ThreeLevelTrajectory pi_pulse;
    ThreeLevelTrajectory ramp;
    double pi_pulse_minus_population = 0.0;
    double two_level_max_deviation = 0.0;  // full vs dressed Rabi model, pointwise
    double ramp_final_p_population = 0.0;
    double ramp_time_to_99_ns = -1.0;      // first passage, -1 when not reached
    double ramp_time_to_999_ns = -1.0;
    double ramp_p_population_at_13ns = 0.0;
};

DressingReport run_dressing(const DressingConfig& config);

// Derived SI quantities when trap parameters are configured.
struct PhysicalReport {
    ScaledUnits units;
    double omega_ell_over_omega_s = 0.0;
    double gate_time_us = 0.0;
    double decay_factor_single = 0.0;
    double decay_factor_all_rydberg = 0.0;
    double thermal_temperature_mk = 0.0;
};

PhysicalReport physical_report(const ScenarioConfig& config, const ScanContext& shaped_ctx);

}  // namespace ionshape
