// ionshape command-line driver: equilibrium, mode, gate-scan, delay-scan and
// dressed-state computations with CSV/SVG/JSON outputs.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "ionshape/config_json.hpp"
#include "ionshape/io_csv.hpp"
#include "ionshape/scenario.hpp"
#include "ionshape/svg.hpp"

namespace {

using nlohmann::json;
using namespace ionshape;

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    int threads = 0;
    std::string mode_set;
};

ScenarioConfig load_config(const CliOptions& opts) {
    ScenarioConfig cfg;
    if (!opts.config_path.empty()) {
        cfg = scenario_from_json_file(opts.config_path);
    } else {
        cfg.validate();
    }
    if (!opts.out_dir.empty()) cfg.output_dir = opts.out_dir;
    if (!opts.mode_set.empty()) cfg.mode_set = mode_set_from_string(opts.mode_set);
    return cfg;
}

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void write_json(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

void write_positions_csv(const ChainConfiguration& chain, const std::string& path) {
    CsvWriter csv("index,z_scaled");
    for (int i = 0; i < chain.size(); ++i) {
        csv.row_raw(std::to_string(i + 1) + "," + format_double(chain.positions[i]));
    }
    csv.write(path);
}

void write_modes_csv(const ModeDecomposition& modes, const std::string& path) {
    CsvWriter csv("mode_index,ion_index,amplitude");
    for (int j = 0; j < modes.size(); ++j) {
        for (int m = 0; m < static_cast<int>(modes.vectors.rows()); ++m) {
            csv.row_raw(std::to_string(j + 1) + "," + std::to_string(m + 1) + "," +
                        format_double(modes.vectors(m, j)));
        }
    }
    csv.write(path);
}

// Contiguous ELL regions strictly between consecutive Rydberg ions.
std::vector<std::pair<int, int>> inner_subcrystals(const ScenarioConfig& cfg) {
    std::vector<int> ryd = cfg.rydberg_ions;
    std::sort(ryd.begin(), ryd.end());
    std::vector<std::pair<int, int>> regions;
    for (size_t i = 0; i + 1 < ryd.size(); ++i) {
        if (ryd[i + 1] - ryd[i] > 1) regions.push_back({ryd[i] + 1, ryd[i + 1] - 1});
    }
    return regions;
}

json localized_region_report(const ScenarioConfig& cfg, const ChainConfiguration& chain,
                             const ModeDecomposition& shaped) {
    json out = json::array();
    const StateFrequencies freqs{cfg.omega_ell, cfg.omega_ryd};
    const ElectronicAssignment assignment =
        ElectronicAssignment::with_rydberg(cfg.ions, freqs, cfg.rydberg_ions);
    for (const auto& [lo, hi] : inner_subcrystals(cfg)) {
        std::vector<int> ions;
        for (int m = lo; m <= hi; ++m) ions.push_back(m);
        const LocalizedModes loc = localized_mode_analysis(
            shaped, ions, cfg.localization_threshold, cfg.degeneracy_tolerance);
        const ModeDecomposition trunc = truncated_subcrystal_modes(chain, assignment, {lo, hi});

        double max_rel = 0.0;
        const int n_match = std::min<int>(loc.frequencies.size(), trunc.size());
        for (int k = 0; k < n_match; ++k) {
            max_rel = std::max(max_rel, std::abs(trunc.frequencies[k] - loc.frequencies[k]) /
                                            loc.frequencies[k]);
        }
        json region;
        region["ions"] = {lo, hi};
        region["localized_count"] = loc.frequencies.size();
        region["weights"] = loc.weights;
        region["frequencies"] = loc.frequencies;
        region["truncated_frequencies"] =
            std::vector<double>(trunc.frequencies.data(), trunc.frequencies.data() + trunc.size());
        region["truncation_max_rel_discrepancy"] =
            (static_cast<int>(loc.frequencies.size()) == trunc.size()) ? json(max_rel) : json();
        out.push_back(region);
    }
    return out;
}

void write_scan_csv(const std::vector<ScanRow>& rows, const std::string& path) {
    CsvWriter csv("nu_over_omegas,phi_11,phi_22,max_abs_alpha,nu_cycles,fidelity,calibrated");
    for (const ScanRow& r : rows) {
        csv.row_raw(format_double(r.nu) + "," + format_double(r.phi_11) + "," +
                    format_double(r.phi_22) + "," + format_double(r.max_abs_alpha) + "," +
                    format_double(r.cycles) + "," + format_double(r.fidelity) + "," +
                    (r.calibrated ? "1" : "0"));
    }
    csv.write(path);
}

json scan_summary(const std::vector<ScanRow>& rows) {
    json s;
    double best = -1.0;
    const ScanRow* arg = nullptr;
    int calibrated = 0;
    for (const ScanRow& r : rows) {
        if (r.calibrated) ++calibrated;
        if (std::isfinite(r.fidelity) && r.fidelity > best) {
            best = r.fidelity;
            arg = &r;
        }
    }
    s["points"] = rows.size();
    s["calibrated_points"] = calibrated;
    if (arg) {
        s["max_fidelity"] = best;
        s["argmax_cycles"] = arg->cycles;
        s["argmax_nu_over_omegas"] = arg->nu;
    }
    return s;
}

void write_trajectory_csv(const ThreeLevelTrajectory& traj, const std::string& path) {
    CsvWriter csv("t_ns,pop_D,pop_P,pop_S,pop_minus,pop_plus");
    for (const ThreeLevelSample& s : traj.samples) {
        csv.row({s.time * 1e9, s.pop_d(), s.pop_p(), s.pop_s(), s.pop_minus, s.pop_plus});
    }
    csv.write(path);
}

json dressing_json(const DressingReport& rep) {
    json d;
    d["c_minus"] = rep.states.c_minus;
    d["c_plus"] = rep.states.c_plus;
    d["c_minus_abs"] = std::abs(rep.states.c_minus);
    d["e_minus_mhz"] = rep.states.e_minus / (2.0 * M_PI * 1e6);
    d["e_plus_mhz"] = rep.states.e_plus / (2.0 * M_PI * 1e6);
    d["omega_laser_mhz"] = rep.omega_laser / (2.0 * M_PI * 1e6);
    d["pi_pulse_minus_population"] = rep.pi_pulse_minus_population;
    d["two_level_max_deviation"] = rep.two_level_max_deviation;
    d["ramp_final_p_population"] = rep.ramp_final_p_population;
    d["ramp_time_to_99_ns"] = rep.ramp_time_to_99_ns;
    d["ramp_time_to_999_ns"] = rep.ramp_time_to_999_ns;
    d["ramp_p_population_at_13ns"] = rep.ramp_p_population_at_13ns;
    return d;
}

int cmd_equilibrium(const ScenarioConfig& cfg) {
    EquilibriumReport report;
    const ChainConfiguration chain =
        solve_equilibrium(cfg.ions, cfg.quartic_ratio, {}, {}, &report);
    write_positions_csv(chain, join(cfg.output_dir, "positions.csv"));

    json stats;
    stats["ions"] = cfg.ions;
    stats["quartic_ratio"] = cfg.quartic_ratio;
    stats["iterations"] = report.iterations;
    stats["gradient_norm"] = report.gradient_norm;
    if (cfg.ions >= 2) {
        const SpacingStatistics s = spacing_statistics(chain, 0.5);
        stats["central_half"] = {{"mean_spacing", s.mean},
                                 {"relative_std", s.relative_std},
                                 {"min", s.min},
                                 {"max", s.max}};
    }
    write_json(join(cfg.output_dir, "spacing_stats.json"), stats);
    std::cout << "wrote " << join(cfg.output_dir, "positions.csv") << "\n";
    return 0;
}

int cmd_modes(const ScenarioConfig& cfg) {
    const ChainConfiguration chain = solve_equilibrium(cfg.ions, cfg.quartic_ratio);
    const StateFrequencies freqs{cfg.omega_ell, cfg.omega_ryd};
    const ModeDecomposition bare =
        diagonalize(build_hessian(chain, ElectronicAssignment::all_ell(cfg.ions, freqs)));
    write_modes_csv(bare, join(cfg.output_dir, "bare_modes.csv"));
    HeatmapOptions opts;
    opts.title = "bare transverse modes |B|";
    write_heatmap(bare.vectors.transpose(), join(cfg.output_dir, "bare_modes.svg"), opts);

    json loc = json::array();
    if (!cfg.rydberg_ions.empty()) {
        const ModeDecomposition shaped = diagonalize(build_hessian(
            chain, ElectronicAssignment::with_rydberg(cfg.ions, freqs, cfg.rydberg_ions)));
        write_modes_csv(shaped, join(cfg.output_dir, "shaped_modes.csv"));
        opts.title = "shaped transverse modes |B|";
        write_heatmap(shaped.vectors.transpose(), join(cfg.output_dir, "shaped_modes.svg"), opts);
        loc = localized_region_report(cfg, chain, shaped);
    }
    write_json(join(cfg.output_dir, "localized.json"), loc);
    std::cout << "wrote mode CSV/SVG under " << cfg.output_dir << "\n";
    return 0;
}

int cmd_gate_scan(const ScenarioConfig& cfg, int threads) {
    const ScanContext ctx = prepare_scan(cfg, cfg.mode_set);
    const std::vector<ScanRow> rows = gate_scan(ctx, threads);
    const std::string name = "gate_scan_" + to_string(cfg.mode_set);
    write_scan_csv(rows, join(cfg.output_dir, name + ".csv"));
    json summary = scan_summary(rows);
    summary["mode_set"] = to_string(cfg.mode_set);
    summary["bus_frequency"] = ctx.bus_frequency;
    summary["tau"] = ctx.tau;
    write_json(join(cfg.output_dir, name + ".json"), summary);
    std::cout << name << ": max fidelity "
              << (summary.contains("max_fidelity") ? summary["max_fidelity"].dump() : "n/a")
              << "\n";
    return 0;
}

int cmd_delay_scan(const ScenarioConfig& cfg, int threads) {
    const ScanContext ctx = prepare_scan(cfg, cfg.mode_set);
    const DelayScanResult res = delay_scan(ctx, threads);
    CsvWriter csv("nu,delay,fidelity,mode_set");
    for (const ScanRow& r : res.rows) {
        csv.row_raw(format_double(r.nu) + "," + format_double(r.delay) + "," +
                    format_double(r.fidelity) + "," + to_string(cfg.mode_set));
    }
    const std::string name = "fidelity_scan_" + to_string(cfg.mode_set);
    csv.write(join(cfg.output_dir, name + ".csv"));

    json summary;
    summary["mode_set"] = to_string(cfg.mode_set);
    summary["delays"] = res.delays;
    summary["max_fidelity_per_delay"] = res.max_fidelity;
    double worst = 2.0;
    for (double f : res.max_fidelity) {
        if (std::isfinite(f)) worst = std::min(worst, f);
    }
    summary["min_over_delays"] = worst <= 1.0 ? json(worst) : json();
    write_json(join(cfg.output_dir, name + ".json"), summary);
    std::cout << name << ": min over delays " << summary["min_over_delays"].dump() << "\n";
    return 0;
}

int cmd_dressing(const ScenarioConfig& cfg) {
    const DressingReport rep = run_dressing(cfg.dressing);
    write_trajectory_csv(rep.pi_pulse, join(cfg.output_dir, "dressing_pi_pulse.csv"));
    write_trajectory_csv(rep.ramp, join(cfg.output_dir, "dressing_ramp.csv"));
    write_json(join(cfg.output_dir, "dressing.json"), dressing_json(rep));
    std::cout << "dressing: |C-| = " << std::abs(rep.states.c_minus) << "\n";
    return 0;
}

int cmd_reproduce(const ScenarioConfig& cfg, int threads) {
    json summary;
    summary["schema"] = "ionshape-summary/1";

    // equilibrium and spacing
    const ChainConfiguration chain = solve_equilibrium(cfg.ions, cfg.quartic_ratio);
    write_positions_csv(chain, join(cfg.output_dir, "positions.csv"));
    const SpacingStatistics sp = spacing_statistics(chain, 0.5);
    summary["equilibrium"] = {{"ions", cfg.ions},
                              {"quartic_ratio", cfg.quartic_ratio},
                              {"central_relative_spacing_std", sp.relative_std},
                              {"central_mean_spacing", sp.mean},
                              {"half_span", chain.positions[cfg.ions - 1]}};

    // two-Rydberg localization scenario
    ScenarioConfig two = cfg;
    two.rydberg_ions = {45, 56};
    const StateFrequencies freqs{cfg.omega_ell, cfg.omega_ryd};
    const ModeDecomposition bare =
        diagonalize(build_hessian(chain, ElectronicAssignment::all_ell(cfg.ions, freqs)));
    const ModeDecomposition shaped_two = diagonalize(build_hessian(
        chain, ElectronicAssignment::with_rydberg(cfg.ions, freqs, two.rydberg_ions)));
    write_heatmap(shaped_two.vectors.transpose(),
                  join(cfg.output_dir, "modes_two_rydberg.svg"),
                  {"ion index", "mode index", "two Rydberg ions |B|", 6});
    {
        const json reg = localized_region_report(two, chain, shaped_two);
        summary["two_rydberg"] = reg.empty() ? json() : reg[0];
    }

    // four-Rydberg scenario: modes and heatmaps
    const ModeDecomposition shaped = diagonalize(build_hessian(
        chain, ElectronicAssignment::with_rydberg(cfg.ions, freqs, cfg.rydberg_ions)));
    write_heatmap(bare.vectors.transpose(), join(cfg.output_dir, "modes_bare.svg"),
                  {"ion index", "mode index", "bare chain |B|", 6});
    write_heatmap(shaped.vectors.transpose(), join(cfg.output_dir, "modes_four_rydberg.svg"),
                  {"ion index", "mode index", "four Rydberg ions |B|", 6});
    summary["four_rydberg"] = {{"regions", localized_region_report(cfg, chain, shaped)}};

    // gate scans for the three mode sets
    json scans;
    ScanContext shaped_ctx;
    for (ModeSet ms : {ModeSet::All, ModeSet::Localized, ModeSet::Bare}) {
        ScenarioConfig run = cfg;
        run.mode_set = ms;
        const ScanContext ctx = prepare_scan(run, ms);
        if (ms == ModeSet::All) shaped_ctx = ctx;
        const std::vector<ScanRow> rows = gate_scan(ctx, threads);
        write_scan_csv(rows, join(cfg.output_dir, "gate_scan_" + to_string(ms) + ".csv"));
        json s = scan_summary(rows);
        s["bus_frequency"] = ctx.bus_frequency;
        s["tau"] = ctx.tau;
        scans[to_string(ms)] = s;
    }
    summary["gate_scan"] = scans;

    // delay scans with and without shaping
    json delays;
    for (ModeSet ms : {ModeSet::All, ModeSet::Bare}) {
        ScenarioConfig run = cfg;
        run.mode_set = ms;
        const ScanContext ctx = prepare_scan(run, ms);
        const DelayScanResult res = delay_scan(ctx, threads);
        CsvWriter csv("nu,delay,fidelity,mode_set");
        for (const ScanRow& r : res.rows) {
            csv.row_raw(format_double(r.nu) + "," + format_double(r.delay) + "," +
                        format_double(r.fidelity) + "," + to_string(ms));
        }
        csv.write(join(cfg.output_dir, "fidelity_scan_" + to_string(ms) + ".csv"));
        double worst = 2.0;
        for (double f : res.max_fidelity) {
            if (std::isfinite(f)) worst = std::min(worst, f);
        }
        delays[to_string(ms)] = {{"min_over_delays", worst},
                                 {"max_fidelity_per_delay", res.max_fidelity}};
    }
    summary["delay_scan"] = delays;

    // dressed-state excitation
    const DressingReport dress = run_dressing(cfg.dressing);
    write_trajectory_csv(dress.pi_pulse, join(cfg.output_dir, "dressing_pi_pulse.csv"));
    write_trajectory_csv(dress.ramp, join(cfg.output_dir, "dressing_ramp.csv"));
    summary["dressing"] = dressing_json(dress);

    // physical units
    if (cfg.trap) {
        const PhysicalReport rep = physical_report(cfg, shaped_ctx);
        summary["physical"] = {{"omega_s_rad_s", rep.units.frequency_scale},
                               {"length_scale_um", rep.units.length_scale * 1e6},
                               {"quartic_ratio", rep.units.quartic_ratio},
                               {"omega_ell_over_omega_s", rep.omega_ell_over_omega_s},
                               {"gate_time_us", rep.gate_time_us},
                               {"decay_factor_single", rep.decay_factor_single},
                               {"decay_factor_all_rydberg", rep.decay_factor_all_rydberg},
                               {"thermal_temperature_mk", rep.thermal_temperature_mk}};
    }

    write_json(join(cfg.output_dir, "summary.json"), summary);
    std::cout << "wrote " << join(cfg.output_dir, "summary.json") << "\n";
    return 0;
}

json error_json(const std::string& code, const std::string& what) {
    json e;
    e["error"] = {{"code", code}, {"message", what}};
    return e;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ion chain mode shaping and parallel gate fidelity"};
    app.require_subcommand(1);

    CliOptions opts;
    app.add_option("--config", opts.config_path, "JSON scenario config");
    app.add_option("--out", opts.out_dir, "output directory (overrides config)");
    app.add_option("--threads", opts.threads, "worker threads for sweeps (0 = auto)");
    app.add_option("--mode-set", opts.mode_set, "all|localized|bare (overrides config)");

    auto* equilibrium = app.add_subcommand("equilibrium", "solve chain equilibrium positions");
    auto* modes = app.add_subcommand("modes", "transverse modes and localization analysis");
    auto* gate = app.add_subcommand("gate-scan", "fidelity vs drive frequency");
    auto* delay = app.add_subcommand("delay-scan", "fidelity vs (drive frequency, start delay)");
    auto* dressing = app.add_subcommand("dressing", "dressed-state excitation dynamics");
    auto* reproduce = app.add_subcommand("reproduce-paper", "run every preset and summarize");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const ScenarioConfig cfg = load_config(opts);
        if (equilibrium->parsed()) return cmd_equilibrium(cfg);
        if (modes->parsed()) return cmd_modes(cfg);
        if (gate->parsed()) return cmd_gate_scan(cfg, opts.threads);
        if (delay->parsed()) return cmd_delay_scan(cfg, opts.threads);
        if (dressing->parsed()) return cmd_dressing(cfg);
        if (reproduce->parsed()) return cmd_reproduce(cfg, opts.threads);
        std::cerr << error_json("validation", "no subcommand").dump() << "\n";
        return 2;
    } catch (const ionshape::ValidationError& e) {
        std::cerr << error_json("validation", e.what()).dump() << "\n";
        return 2;
    } catch (const ionshape::DegenerateDriveError& e) {
        std::cerr << error_json("validation", e.what()).dump() << "\n";
        return 2;
    } catch (const ionshape::ConvergenceError& e) {
        std::cerr << error_json("convergence", e.what()).dump() << "\n";
        return 3;
    } catch (const ionshape::InstabilityError& e) {
        std::cerr << error_json("convergence", e.what()).dump() << "\n";
        return 3;
    } catch (const ionshape::ConsistencyError& e) {
        std::cerr << error_json("convergence", e.what()).dump() << "\n";
        return 3;
    } catch (const ionshape::IoError& e) {
        std::cerr << error_json("io", e.what()).dump() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << error_json("internal", e.what()).dump() << "\n";
        return 3;
    }
}
