#include "ionshape/config_json.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "ionshape/io_csv.hpp"

namespace ionshape {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw ValidationError("unknown config key '" + it.key() + "' in " + where);
        }
    }
}

double num(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw ValidationError("config key '" + key + "' must be a number");
    return j[key].get<double>();
}

int integer(const json& j, const std::string& key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) {
        throw ValidationError("config key '" + key + "' must be an integer");
    }
    return j[key].get<int>();
}

}  // namespace

ScenarioConfig scenario_from_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ValidationError("config root must be a JSON object");

    reject_unknown(root,
                   {"ions", "quartic_ratio", "omega_ell", "omega_ryd", "rydberg_ions",
                    "gate_pairs", "drive_signs", "eta_reference", "pulse", "thermal",
                    "mode_set", "localization", "trap", "dressing", "decay", "output_dir"},
                   "config root");

    ScenarioConfig c;
    c.ions = integer(root, "ions", c.ions);
    c.quartic_ratio = num(root, "quartic_ratio", c.quartic_ratio);
    c.omega_ell = num(root, "omega_ell", c.omega_ell);
    c.omega_ryd = num(root, "omega_ryd", c.omega_ryd);

    if (root.contains("rydberg_ions")) {
        if (!root["rydberg_ions"].is_array()) throw ValidationError("rydberg_ions must be an array");
        c.rydberg_ions.clear();
        for (const auto& v : root["rydberg_ions"]) {
            if (!v.is_number_integer()) throw ValidationError("rydberg_ions entries must be integers");
            c.rydberg_ions.push_back(v.get<int>());
        }
    }
    if (root.contains("gate_pairs")) {
        const auto& gp = root["gate_pairs"];
        if (!gp.is_array() || gp.size() != 2) {
            throw ValidationError("gate_pairs must be an array of two [m, n] pairs");
        }
        for (int i = 0; i < 2; ++i) {
            if (!gp[i].is_array() || gp[i].size() != 2 || !gp[i][0].is_number_integer() ||
                !gp[i][1].is_number_integer()) {
                throw ValidationError("gate_pairs entries must be [m, n] integer pairs");
            }
            c.gate_pairs[i] = {gp[i][0].get<int>(), gp[i][1].get<int>()};
        }
    }
    if (root.contains("drive_signs")) {
        const auto& ds = root["drive_signs"];
        if (!ds.is_array() || ds.size() != 4) {
            throw ValidationError("drive_signs must be an array of four numbers");
        }
        for (int i = 0; i < 4; ++i) {
            if (!ds[i].is_number()) throw ValidationError("drive_signs entries must be numbers");
            c.drive_signs[i] = ds[i].get<double>();
        }
    }
    c.eta_reference = num(root, "eta_reference", c.eta_reference);

    if (root.contains("pulse")) {
        const json& p = root["pulse"];
        if (!p.is_object()) throw ValidationError("pulse must be an object");
        reject_unknown(p,
                       {"tau_bus_periods", "cycles_min", "cycles_max", "cycles_points",
                        "delay_max_bus_periods", "delay_points", "delay_cycles_points"},
                       "pulse");
        c.pulse.tau_bus_periods = num(p, "tau_bus_periods", c.pulse.tau_bus_periods);
        c.pulse.cycles_min = num(p, "cycles_min", c.pulse.cycles_min);
        c.pulse.cycles_max = num(p, "cycles_max", c.pulse.cycles_max);
        c.pulse.cycles_points = integer(p, "cycles_points", c.pulse.cycles_points);
        c.pulse.delay_max_bus_periods =
            num(p, "delay_max_bus_periods", c.pulse.delay_max_bus_periods);
        c.pulse.delay_points = integer(p, "delay_points", c.pulse.delay_points);
        c.pulse.delay_cycles_points =
            integer(p, "delay_cycles_points", c.pulse.delay_cycles_points);
    }
    if (root.contains("thermal")) {
        const json& t = root["thermal"];
        if (!t.is_object()) throw ValidationError("thermal must be an object");
        reject_unknown(t, {"nbar"}, "thermal");
        c.thermal_nbar = num(t, "nbar", c.thermal_nbar);
    }
    if (root.contains("mode_set")) {
        if (!root["mode_set"].is_string()) throw ValidationError("mode_set must be a string");
        c.mode_set = mode_set_from_string(root["mode_set"].get<std::string>());
    }
    if (root.contains("localization")) {
        const json& l = root["localization"];
        if (!l.is_object()) throw ValidationError("localization must be an object");
        reject_unknown(l, {"weight_threshold", "degeneracy_tolerance"}, "localization");
        c.localization_threshold = num(l, "weight_threshold", c.localization_threshold);
        c.degeneracy_tolerance = num(l, "degeneracy_tolerance", c.degeneracy_tolerance);
    }
    if (root.contains("trap")) {
        if (root["trap"].is_null()) {
            c.trap.reset();
        } else {
            const json& t = root["trap"];
            if (!t.is_object()) throw ValidationError("trap must be an object or null");
            reject_unknown(t, {"rf_gradient", "rf_frequency_mhz", "quadratic_coefficient",
                               "ion_mass_u"},
                           "trap");
            TrapConfig tc;
            tc.rf_gradient = num(t, "rf_gradient", tc.rf_gradient);
            tc.rf_frequency_mhz = num(t, "rf_frequency_mhz", tc.rf_frequency_mhz);
            tc.quadratic_coefficient = num(t, "quadratic_coefficient", tc.quadratic_coefficient);
            tc.ion_mass_u = num(t, "ion_mass_u", tc.ion_mass_u);
            c.trap = tc;
        }
    }
    if (root.contains("dressing")) {
        const json& d = root["dressing"];
        if (!d.is_object()) throw ValidationError("dressing must be an object");
        reject_unknown(d,
                       {"delta_s_mhz", "delta_p_mhz", "omega_mw_mhz", "omega_minus_mhz",
                        "pulse_duration_us", "ramp_rate_divisor", "ramp_duration_ns"},
                       "dressing");
        c.dressing.delta_s_mhz = num(d, "delta_s_mhz", c.dressing.delta_s_mhz);
        c.dressing.delta_p_mhz = num(d, "delta_p_mhz", c.dressing.delta_p_mhz);
        c.dressing.omega_mw_mhz = num(d, "omega_mw_mhz", c.dressing.omega_mw_mhz);
        c.dressing.omega_minus_mhz = num(d, "omega_minus_mhz", c.dressing.omega_minus_mhz);
        c.dressing.pulse_duration_us = num(d, "pulse_duration_us", c.dressing.pulse_duration_us);
        c.dressing.ramp_rate_divisor = num(d, "ramp_rate_divisor", c.dressing.ramp_rate_divisor);
        c.dressing.ramp_duration_ns = num(d, "ramp_duration_ns", c.dressing.ramp_duration_ns);
    }
    if (root.contains("decay")) {
        const json& d = root["decay"];
        if (!d.is_object()) throw ValidationError("decay must be an object");
        reject_unknown(d, {"lifetime_us", "excited_duration_us"}, "decay");
        c.decay.lifetime_us = num(d, "lifetime_us", c.decay.lifetime_us);
        c.decay.excited_duration_us = num(d, "excited_duration_us", c.decay.excited_duration_us);
    }
    if (root.contains("output_dir")) {
        if (!root["output_dir"].is_string()) throw ValidationError("output_dir must be a string");
        c.output_dir = root["output_dir"].get<std::string>();
    }

    c.validate();
    return c;
}

ScenarioConfig scenario_from_json_file(const std::string& path) {
    return scenario_from_json_text(read_text_file(path));
}

std::string scenario_to_json_text(const ScenarioConfig& c) {
    json root;
    root["ions"] = c.ions;
    root["quartic_ratio"] = c.quartic_ratio;
    root["omega_ell"] = c.omega_ell;
    root["omega_ryd"] = c.omega_ryd;
    root["rydberg_ions"] = c.rydberg_ions;
    root["gate_pairs"] = {{c.gate_pairs[0].first, c.gate_pairs[0].second},
                          {c.gate_pairs[1].first, c.gate_pairs[1].second}};
    root["drive_signs"] = c.drive_signs;
    root["eta_reference"] = c.eta_reference;
    root["pulse"] = {{"tau_bus_periods", c.pulse.tau_bus_periods},
                     {"cycles_min", c.pulse.cycles_min},
                     {"cycles_max", c.pulse.cycles_max},
                     {"cycles_points", c.pulse.cycles_points},
                     {"delay_max_bus_periods", c.pulse.delay_max_bus_periods},
                     {"delay_points", c.pulse.delay_points},
                     {"delay_cycles_points", c.pulse.delay_cycles_points}};
    root["thermal"] = {{"nbar", c.thermal_nbar}};
    root["mode_set"] = to_string(c.mode_set);
    root["localization"] = {{"weight_threshold", c.localization_threshold},
                            {"degeneracy_tolerance", c.degeneracy_tolerance}};
    if (c.trap) {
        root["trap"] = {{"rf_gradient", c.trap->rf_gradient},
                        {"rf_frequency_mhz", c.trap->rf_frequency_mhz},
                        {"quadratic_coefficient", c.trap->quadratic_coefficient},
                        {"ion_mass_u", c.trap->ion_mass_u}};
    } else {
        root["trap"] = nullptr;
    }
    root["dressing"] = {{"delta_s_mhz", c.dressing.delta_s_mhz},
                        {"delta_p_mhz", c.dressing.delta_p_mhz},
                        {"omega_mw_mhz", c.dressing.omega_mw_mhz},
                        {"omega_minus_mhz", c.dressing.omega_minus_mhz},
                        {"pulse_duration_us", c.dressing.pulse_duration_us},
                        {"ramp_rate_divisor", c.dressing.ramp_rate_divisor},
                        {"ramp_duration_ns", c.dressing.ramp_duration_ns}};
    root["decay"] = {{"lifetime_us", c.decay.lifetime_us},
                     {"excited_duration_us", c.decay.excited_duration_us}};
    root["output_dir"] = c.output_dir;
    return root.dump(2) + "\n";
}

}  // namespace ionshape
