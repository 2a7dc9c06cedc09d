#include "vpq/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vpq/control.hpp"
#include "vpq/detail/strfmt.hpp"
#include "vpq/errors.hpp"

namespace vpq::io {

namespace {

using nlohmann::json;

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError(detail::strfmt("cannot open %s", path.c_str()));
    }
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::exception& e) {
        throw ValidationError(detail::strfmt("%s: %s", path.c_str(), e.what()));
    }
}

const json& require(const json& j, const char* key, const std::string& where) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw ValidationError(detail::strfmt("%s: missing key '%s'", where.c_str(), key));
    }
    return *it;
}

double require_number(const json& j, const char* key, const std::string& where) {
    const json& v = require(j, key, where);
    if (!v.is_number()) {
        throw ValidationError(detail::strfmt("%s: key '%s' must be a number", where.c_str(), key));
    }
    return v.get<double>();
}

double optional_number(const json& j, const char* key, double fallback) {
    const auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number()) {
        throw ValidationError(detail::strfmt("key '%s' must be a number", key));
    }
    return it->get<double>();
}

int require_int(const json& j, const char* key, const std::string& where) {
    const json& v = require(j, key, where);
    if (!v.is_number_integer()) {
        throw ValidationError(
            detail::strfmt("%s: key '%s' must be an integer", where.c_str(), key));
    }
    return v.get<int>();
}

std::string require_string(const json& j, const char* key, const std::string& where) {
    const json& v = require(j, key, where);
    if (!v.is_string()) {
        throw ValidationError(detail::strfmt("%s: key '%s' must be a string", where.c_str(), key));
    }
    return v.get<std::string>();
}

bool require_bool(const json& j, const char* key, const std::string& where) {
    const json& v = require(j, key, where);
    if (!v.is_boolean()) {
        throw ValidationError(detail::strfmt("%s: key '%s' must be a boolean", where.c_str(), key));
    }
    return v.get<bool>();
}

const json& require_object(const json& j, const char* key, const std::string& where) {
    const json& v = require(j, key, where);
    if (!v.is_object()) {
        throw ValidationError(
            detail::strfmt("%s: section '%s' must be an object", where.c_str(), key));
    }
    return v;
}

// Serializes a double with 9 significant digits, the file-format precision.
void append_field(std::string& out, double value, bool last) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    out += buf;
    out += last ? '\n' : ',';
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) {
        throw ValidationError(detail::strfmt("cannot write %s", path.c_str()));
    }
    out << body;
    if (!out) {
        throw ValidationError(detail::strfmt("write to %s failed", path.c_str()));
    }
}

}  // namespace

VehicleConfig load_vehicle(const std::string& path) {
    const json doc = read_json(path);
    VehicleConfig cfg;

    const json& aero_sec = require_object(doc, "aero", path);
    cfg.aero_constants.lift_slope = require_number(aero_sec, "a", path + " [aero]");
    cfg.aero_constants.kappa = require_number(aero_sec, "kappa", path + " [aero]");
    cfg.aero_constants.beta0 = require_number(aero_sec, "beta0", path + " [aero]");
    cfg.aero_constants.beta1 = require_number(aero_sec, "beta1", path + " [aero]");
    cfg.aero_constants.beta2 = require_number(aero_sec, "beta2", path + " [aero]");
    cfg.aero_constants.rho_kg_m3 = require_number(aero_sec, "rho", path + " [aero]");

    const json& control_sec = require_object(doc, "control", path);
    cfg.damping_ratio_zeta = require_number(control_sec, "zeta", path + " [control]");
    cfg.natural_frequency_wn = require_number(control_sec, "omega_n", path + " [control]");
    cfg.governor_rpm = require_number(control_sec, "governor_rpm", path + " [control]");
    cfg.governor_tau_s = require_number(control_sec, "governor_tau_s", path + " [control]");
    if (!(cfg.governor_rpm > 0.0)) {
        throw ValidationError(path + " [control]: governor_rpm must be positive");
    }

    const json& rotor_sec = require_object(doc, "rotor", path);
    cfg.rotor.radius_m = require_number(rotor_sec, "radius_m", path + " [rotor]");
    cfg.rotor.blade_count = require_int(rotor_sec, "blade_count", path + " [rotor]");
    const json& limits = require(rotor_sec, "pitch_limits_deg", path + " [rotor]");
    if (!limits.is_array() || limits.size() != 2 || !limits[0].is_number() ||
        !limits[1].is_number()) {
        throw ValidationError(path + " [rotor]: pitch_limits_deg must be a [min, max] pair");
    }
    cfg.rotor.pitch_min_rad = deg_to_rad(limits[0].get<double>());
    cfg.rotor.pitch_max_rad = deg_to_rad(limits[1].get<double>());

    const bool has_anchor = rotor_sec.contains("calibration");
    const bool has_solidity = rotor_sec.contains("solidity");
    if (!has_anchor && !has_solidity) {
        throw ValidationError(path +
                              " [rotor]: provide either 'solidity' or a 'calibration' anchor");
    }
    if (has_anchor) {
        const json& anchor = require_object(rotor_sec, "calibration", path + " [rotor]");
        const double theta_ref =
            deg_to_rad(require_number(anchor, "theta_deg", path + " [rotor.calibration]"));
        const double thrust_ref =
            require_number(anchor, "thrust_n", path + " [rotor.calibration]");
        cfg.rotor.solidity = aero::calibrate_solidity(cfg.rotor, cfg.aero_constants,
                                                      cfg.governor_omega_rad_s(), theta_ref,
                                                      thrust_ref);
    } else {
        cfg.rotor.solidity = require_number(rotor_sec, "solidity", path + " [rotor]");
    }
    cfg.rotor.validate();
    cfg.aero_constants.validate();

    const json& vehicle_sec = require_object(doc, "vehicle", path);
    cfg.mass_kg = require_number(vehicle_sec, "mass_kg", path + " [vehicle]");
    cfg.declared_mtow_kg = require_number(vehicle_sec, "mtow_kg", path + " [vehicle]");
    cfg.rotor_count = require_int(vehicle_sec, "rotor_count", path + " [vehicle]");
    cfg.arm_length_m = require_number(vehicle_sec, "arm_length_m", path + " [vehicle]");
    const json& inertia = require_object(vehicle_sec, "inertia", path + " [vehicle]");
    cfg.inertia_diag.x = require_number(inertia, "Ixx", path + " [vehicle.inertia]");
    cfg.inertia_diag.y = require_number(inertia, "Iyy", path + " [vehicle.inertia]");
    cfg.inertia_diag.z = require_number(inertia, "Izz", path + " [vehicle.inertia]");
    cfg.eta_transmission = require_number(vehicle_sec, "eta_transmission", path + " [vehicle]");

    const json& fuel_sec = require_object(doc, "fuel", path);
    cfg.fuel.tank_volume_l = require_number(fuel_sec, "tank_l", path + " [fuel]");
    cfg.fuel.fuel_density_g_per_l = require_number(fuel_sec, "density_g_per_l", path + " [fuel]");
    cfg.fuel.validate();

    if (!(cfg.mass_kg > 0.0)) throw ValidationError(path + ": mass_kg must be positive");
    if (cfg.rotor_count < 3) throw ValidationError(path + ": rotor_count must be at least 3");
    if (!(cfg.arm_length_m > 0.0)) throw ValidationError(path + ": arm_length_m must be positive");
    if (!(cfg.governor_tau_s > 0.0)) {
        throw ValidationError(path + ": governor_tau_s must be positive");
    }
    return cfg;
}

std::vector<sizing::EngineSpec> load_engines(const std::string& path) {
    const json doc = read_json(path);
    if (!doc.is_array()) {
        throw ValidationError(path + ": engine catalog must be an array of records");
    }
    std::vector<sizing::EngineSpec> catalog;
    catalog.reserve(doc.size());
    for (const json& rec : doc) {
        sizing::EngineSpec e;
        e.name = require_string(rec, "name", path);
        e.displacement_cc = require_number(rec, "displacement_cc", path);
        e.max_power_w = require_number(rec, "max_power_w", path);
        e.max_torque_nm = require_number(rec, "max_torque_nm", path);
        e.bsfc_g_per_kwh = require_number(rec, "bsfc_g_per_kwh", path);
        e.rpm_min = require_number(rec, "rpm_min", path);
        e.rpm_max = require_number(rec, "rpm_max", path);
        e.validate();
        catalog.push_back(std::move(e));
    }
    return catalog;
}

std::vector<sizing::StructuralMode> load_modes(const std::string& path) {
    const json doc = read_json(path);
    if (!doc.is_array()) {
        throw ValidationError(path + ": modes file must be an array of records");
    }
    std::vector<sizing::StructuralMode> modes;
    modes.reserve(doc.size());
    for (const json& rec : doc) {
        sizing::StructuralMode m;
        m.mode_name = require_string(rec, "mode_name", path);
        m.frequency_hz = require_number(rec, "frequency_hz", path);
        m.activatable_by_contrarotation = require_bool(rec, "activatable", path);
        if (!(m.frequency_hz > 0.0)) {
            throw ValidationError(
                detail::strfmt("%s: mode %s frequency must be positive", path.c_str(),
                               m.mode_name.c_str()));
        }
        modes.push_back(std::move(m));
    }
    return modes;
}

sim::Scenario load_scenario(const std::string& path, double default_rotor_speed_rad_s) {
    const json doc = read_json(path);
    sim::Scenario sc;
    sc.duration_s = require_number(doc, "duration_s", path);
    sc.dt_s = require_number(doc, "dt_s", path);

    sc.initial_state.rotor_speed_rad_s = default_rotor_speed_rad_s;
    if (doc.contains("initial")) {
        const json& init = require_object(doc, "initial", path);
        const double roll = deg_to_rad(optional_number(init, "roll_deg", 0.0));
        const double pitch = deg_to_rad(optional_number(init, "pitch_deg", 0.0));
        const double yaw = deg_to_rad(optional_number(init, "yaw_deg", 0.0));
        sc.initial_state.attitude = quat_from_euler(roll, pitch, yaw);
        sc.initial_state.altitude_m = optional_number(init, "altitude_m", 0.0);
        sc.initial_state.vertical_velocity_mps = optional_number(init, "vz_mps", 0.0);
        if (init.contains("rotor_rpm")) {
            sc.initial_state.rotor_speed_rad_s =
                rpm_to_rad_s(require_number(init, "rotor_rpm", path + " [initial]"));
        }
    }

    const json& segments = require(doc, "segments", path);
    if (!segments.is_array() || segments.empty()) {
        throw ValidationError(path + ": 'segments' must be a non-empty array");
    }
    for (const json& rec : segments) {
        sim::ReferenceSegment seg;
        seg.start_time_s = require_number(rec, "start_s", path + " [segments]");
        seg.roll_ref_rad = deg_to_rad(require_number(rec, "roll_deg", path + " [segments]"));
        seg.pitch_ref_rad = deg_to_rad(require_number(rec, "pitch_deg", path + " [segments]"));
        seg.yaw_ref_rad = deg_to_rad(require_number(rec, "yaw_deg", path + " [segments]"));
        seg.collective_thrust_n = require_number(rec, "thrust_n", path + " [segments]");
        sc.segments.push_back(seg);
    }

    if (doc.contains("disturbances")) {
        const json& disturbances = require(doc, "disturbances", path);
        if (!disturbances.is_array()) {
            throw ValidationError(path + ": 'disturbances' must be an array");
        }
        for (const json& rec : disturbances) {
            sim::Disturbance d;
            d.time_s = require_number(rec, "time_s", path + " [disturbances]");
            const std::string axis = require_string(rec, "axis", path + " [disturbances]");
            if (axis == "roll") {
                d.axis = 0;
            } else if (axis == "pitch") {
                d.axis = 1;
            } else if (axis == "yaw") {
                d.axis = 2;
            } else {
                throw ValidationError(detail::strfmt(
                    "%s: disturbance axis must be roll, pitch or yaw, got '%s'", path.c_str(),
                    axis.c_str()));
            }
            d.impulse_nms = require_number(rec, "impulse_nms", path + " [disturbances]");
            sc.disturbances.push_back(d);
        }
    }

    sc.validate();
    return sc;
}

sim::VehicleModel build_vehicle_model(const VehicleConfig& config) {
    if (config.rotor_count != 4) {
        throw ValidationError(detail::strfmt(
            "closed-loop simulation supports exactly 4 rotors, got %d", config.rotor_count));
    }

    sim::VehicleModel model;
    model.mass_kg = config.mass_kg;
    model.inertia_diag = config.inertia_diag;
    model.rotor = config.rotor;
    model.aero_constants = config.aero_constants;

    control::AxisSpec axis;
    axis.damping_ratio = config.damping_ratio_zeta;
    axis.natural_frequency = config.natural_frequency_wn;
    axis.moment_of_inertia = config.inertia_diag.x;
    model.gains_roll = control::synthesize_pd(axis);
    axis.moment_of_inertia = config.inertia_diag.y;
    model.gains_pitch = control::synthesize_pd(axis);
    axis.moment_of_inertia = config.inertia_diag.z;
    model.gains_yaw = control::synthesize_pd(axis);

    model.governor.omega_ref_rad_s = config.governor_omega_rad_s();
    model.governor.time_constant_s = config.governor_tau_s;

    model.mixer.arm_length_m = config.arm_length_m;
    const double hover_thrust_per_rotor = config.mass_kg * sizing::kGravity / 4.0;
    model.mixer.hover_pitch_rad =
        aero::pitch_for_thrust(model.rotor, model.aero_constants,
                               model.governor.omega_ref_rad_s, hover_thrust_per_rotor);
    control::build_allocation_jacobian(model.rotor, model.aero_constants,
                                       model.governor.omega_ref_rad_s, model.mixer);
    return model;
}

void write_curves_csv(const std::string& path, const std::vector<aero::SweepPoint>& sweep) {
    std::string body = "theta_deg,thrust_n,power_w,torque_nm,ct,cp,lambda\n";
    for (const aero::SweepPoint& p : sweep) {
        append_field(body, rad_to_deg(p.pitch_rad), false);
        append_field(body, p.solution.thrust_n, false);
        append_field(body, p.solution.power_w, false);
        append_field(body, p.solution.torque_nm, false);
        append_field(body, p.solution.ct, false);
        append_field(body, p.solution.cp_total, false);
        append_field(body, p.solution.inflow, true);
    }
    write_text(path, body);
}

void write_log_csv(const std::string& path, const std::vector<sim::LogRecord>& log) {
    std::string body =
        "time_s,roll_rad,pitch_rad,yaw_rad,p_rads,q_rads,r_rads,theta1_rad,theta2_rad,"
        "theta3_rad,theta4_rad,omega_rads,altitude_m,vz_mps,thrust_total_n,roll_ref_rad,"
        "pitch_ref_rad,yaw_ref_rad\n";
    body.reserve(body.size() + log.size() * 220);
    for (const sim::LogRecord& r : log) {
        append_field(body, r.time_s, false);
        append_field(body, r.roll_rad, false);
        append_field(body, r.pitch_rad, false);
        append_field(body, r.yaw_rad, false);
        append_field(body, r.p_rads, false);
        append_field(body, r.q_rads, false);
        append_field(body, r.r_rads, false);
        append_field(body, r.theta_rad[0], false);
        append_field(body, r.theta_rad[1], false);
        append_field(body, r.theta_rad[2], false);
        append_field(body, r.theta_rad[3], false);
        append_field(body, r.omega_rads, false);
        append_field(body, r.altitude_m, false);
        append_field(body, r.vz_mps, false);
        append_field(body, r.thrust_total_n, false);
        append_field(body, r.roll_ref_rad, false);
        append_field(body, r.pitch_ref_rad, false);
        append_field(body, r.yaw_ref_rad, true);
    }
    write_text(path, body);
}

}  // namespace vpq::io
