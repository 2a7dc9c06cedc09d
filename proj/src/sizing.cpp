#include "vpq/sizing.hpp"

#include <algorithm>
#include <cmath>

#include "vpq/detail/strfmt.hpp"

namespace vpq::sizing {

namespace {

aero::RotorSolution solve_at_pitch(const aero::RotorGeometry& geom,
                                   const aero::AeroConstants& consts, double omega_rad_s,
                                   double pitch_rad, aero::InflowVariant variant) {
    aero::RotorOperatingPoint op;
    op.omega_rad_s = omega_rad_s;
    op.pitch_rad = pitch_rad;
    return aero::solve_rotor(geom, consts, op, variant);
}

void check_rotor_count(int rotor_count_n) {
    if (rotor_count_n < 3) {
        throw ValidationError(
            detail::strfmt("rotor count must be at least 3, got %d", rotor_count_n));
    }
}

void check_eta(double eta) {
    if (!(eta > 0.0) || !(eta <= 1.0)) {
        throw ValidationError(
            detail::strfmt("transmission efficiency must lie in (0, 1], got %.6g", eta));
    }
}

}  // namespace

void EngineSpec::validate() const {
    if (name.empty()) throw ValidationError("engine name must not be empty");
    if (!(displacement_cc > 0.0)) {
        throw ValidationError(detail::strfmt("engine %s: displacement must be positive, got %.6g",
                                             name.c_str(), displacement_cc));
    }
    if (!(max_power_w > 0.0)) {
        throw ValidationError(detail::strfmt("engine %s: max power must be positive, got %.6g",
                                             name.c_str(), max_power_w));
    }
    if (!(max_torque_nm > 0.0)) {
        throw ValidationError(detail::strfmt("engine %s: max torque must be positive, got %.6g",
                                             name.c_str(), max_torque_nm));
    }
    if (!(bsfc_g_per_kwh > 0.0)) {
        throw ValidationError(detail::strfmt("engine %s: bsfc must be positive, got %.6g",
                                             name.c_str(), bsfc_g_per_kwh));
    }
    if (!(rpm_min < rpm_max)) {
        throw ValidationError(detail::strfmt("engine %s: rpm range [%.6g, %.6g] is empty",
                                             name.c_str(), rpm_min, rpm_max));
    }
}

void FuelSpec::validate() const {
    if (!(tank_volume_l > 0.0)) {
        throw ValidationError(
            detail::strfmt("tank volume must be positive, got %.6g L", tank_volume_l));
    }
    if (!(fuel_density_g_per_l > 0.0)) {
        throw ValidationError(
            detail::strfmt("fuel density must be positive, got %.6g g/L", fuel_density_g_per_l));
    }
}

void SizingConfig::validate() const {
    check_rotor_count(rotor_count_n);
    if (!(control_margin >= 0.0) || !(control_margin <= 1.0)) {
        throw ValidationError(
            detail::strfmt("control margin must lie in [0, 1], got %.6g", control_margin));
    }
    check_eta(transmission_efficiency_eta);
}

const char* to_string(ModeStatus status) {
    switch (status) {
        case ModeStatus::Pass: return "PASS";
        case ModeStatus::Warn: return "WARN";
        case ModeStatus::Fail: return "FAIL";
    }
    return "UNKNOWN";
}

double max_total_lift(const aero::RotorGeometry& geom, const aero::AeroConstants& consts,
                      double omega_rad_s, int rotor_count_n, aero::InflowVariant variant) {
    if (rotor_count_n < 1) {
        throw ValidationError(
            detail::strfmt("rotor count must be at least 1, got %d", rotor_count_n));
    }
    const aero::RotorSolution sol =
        solve_at_pitch(geom, consts, omega_rad_s, geom.pitch_max_rad, variant);
    return static_cast<double>(rotor_count_n) * sol.thrust_n;
}

double max_takeoff_weight(double max_total_lift_n, double control_margin) {
    if (!(max_total_lift_n > 0.0)) {
        throw ValidationError(
            detail::strfmt("total lift must be positive, got %.6g N", max_total_lift_n));
    }
    if (!(control_margin >= 0.0) || !(control_margin <= 1.0)) {
        throw ValidationError(
            detail::strfmt("control margin must lie in [0, 1], got %.6g", control_margin));
    }
    return max_total_lift_n / (kGravity * (1.0 + control_margin));
}

PowerTorque required_power_torque(const aero::RotorGeometry& geom,
                                  const aero::AeroConstants& consts, double omega_rad_s,
                                  int rotor_count_n, double eta, aero::InflowVariant variant) {
    if (rotor_count_n < 1) {
        throw ValidationError(
            detail::strfmt("rotor count must be at least 1, got %d", rotor_count_n));
    }
    check_eta(eta);
    const aero::RotorSolution sol =
        solve_at_pitch(geom, consts, omega_rad_s, geom.pitch_max_rad, variant);
    PowerTorque req;
    req.power_w = static_cast<double>(rotor_count_n) * sol.power_w / eta;
    req.torque_nm = req.power_w / omega_rad_s;
    return req;
}

std::optional<EngineSpec> select_engine(const std::vector<EngineSpec>& catalog,
                                        double required_power_w, double required_torque_nm,
                                        double omega_rotor_rad_s) {
    if (!(required_power_w > 0.0) || !(required_torque_nm > 0.0)) {
        throw ValidationError("power and torque requirements must be positive");
    }
    if (!(omega_rotor_rad_s > 0.0)) {
        throw ValidationError("rotor speed must be positive");
    }

    const EngineSpec* best = nullptr;
    for (const EngineSpec& engine : catalog) {
        engine.validate();
        if (engine.max_power_w < required_power_w) continue;
        if (engine.max_torque_nm < required_torque_nm) continue;
        if (best == nullptr) {
            best = &engine;
            continue;
        }
        const auto key = [](const EngineSpec& e) {
            return std::make_tuple(e.max_power_w, e.displacement_cc, std::cref(e.name));
        };
        if (key(engine) < key(*best)) best = &engine;
    }
    if (best == nullptr) return std::nullopt;
    return *best;
}

double endurance(const FuelSpec& fuel, double bsfc_g_per_kwh, double shaft_power_w, double eta) {
    if (!(fuel.tank_volume_l >= 0.0)) {
        throw ValidationError(
            detail::strfmt("tank volume must be nonnegative, got %.6g L", fuel.tank_volume_l));
    }
    if (!(fuel.fuel_density_g_per_l > 0.0)) {
        throw ValidationError(detail::strfmt("fuel density must be positive, got %.6g g/L",
                                             fuel.fuel_density_g_per_l));
    }
    if (!(bsfc_g_per_kwh > 0.0)) {
        throw ValidationError(
            detail::strfmt("bsfc must be positive, got %.6g g/kWh", bsfc_g_per_kwh));
    }
    if (!(shaft_power_w > 0.0)) {
        throw ValidationError(
            detail::strfmt("shaft power must be positive, got %.6g W", shaft_power_w));
    }
    check_eta(eta);
    const double fuel_mass_g = fuel.tank_volume_l * fuel.fuel_density_g_per_l;
    const double engine_power_kw = (shaft_power_w / 1000.0) / eta;
    return fuel_mass_g / (bsfc_g_per_kwh * engine_power_kw);
}

double excitation_frequency(double rotor_rpm, int blades_per_rotor) {
    if (!(rotor_rpm > 0.0)) {
        throw ValidationError(detail::strfmt("rotor rpm must be positive, got %.6g", rotor_rpm));
    }
    if (blades_per_rotor < 1) {
        throw ValidationError(
            detail::strfmt("blade count must be at least 1, got %d", blades_per_rotor));
    }
    return rotor_rpm / 60.0 * static_cast<double>(blades_per_rotor);
}

std::vector<ModeVerdict> resonance_check(double excitation_hz,
                                         const std::vector<StructuralMode>& modes,
                                         double margin_fraction) {
    if (!(excitation_hz > 0.0)) {
        throw ValidationError(
            detail::strfmt("excitation frequency must be positive, got %.6g Hz", excitation_hz));
    }
    if (!(margin_fraction > 0.0) || !(margin_fraction < 1.0)) {
        throw ValidationError(
            detail::strfmt("margin fraction must lie in (0, 1), got %.6g", margin_fraction));
    }

    std::vector<ModeVerdict> verdicts;
    verdicts.reserve(modes.size());
    for (const StructuralMode& mode : modes) {
        if (!(mode.frequency_hz > 0.0)) {
            throw ValidationError(detail::strfmt("mode %s: frequency must be positive, got %.6g",
                                                 mode.mode_name.c_str(), mode.frequency_hz));
        }
        ModeVerdict v;
        v.mode = mode;
        v.separation = std::abs(mode.frequency_hz - excitation_hz) / excitation_hz;
        if (v.separation < margin_fraction) {
            if (mode.activatable_by_contrarotation) {
                v.status = ModeStatus::Fail;
                v.note = detail::strfmt("within %.0f%% of the %.2f Hz excitation",
                                        margin_fraction * 100.0, excitation_hz);
            } else {
                v.status = ModeStatus::Warn;
                v.note = detail::strfmt(
                    "within %.0f%% of the %.2f Hz excitation; contra-rotating pairs cancel",
                    margin_fraction * 100.0, excitation_hz);
            }
        } else {
            v.status = ModeStatus::Pass;
            v.note = "clear of the excitation band";
        }
        // Activatable mode below the operating excitation is swept through
        // while the rotors spool up.
        if (v.status == ModeStatus::Pass && mode.activatable_by_contrarotation &&
            mode.frequency_hz < excitation_hz) {
            v.status = ModeStatus::Warn;
            v.note = "crossed during spool-up to operating speed";
        }
        verdicts.push_back(std::move(v));
    }
    return verdicts;
}

SizingReport build_sizing_report(const aero::RotorGeometry& geom,
                                 const aero::AeroConstants& consts, double omega_rad_s,
                                 const SizingConfig& config, const FuelSpec& fuel,
                                 const std::vector<EngineSpec>& catalog,
                                 const std::vector<StructuralMode>& modes,
                                 double vehicle_mass_kg, aero::InflowVariant variant) {
    config.validate();
    fuel.validate();
    if (!(vehicle_mass_kg > 0.0)) {
        throw ValidationError(
            detail::strfmt("vehicle mass must be positive, got %.6g kg", vehicle_mass_kg));
    }

    SizingReport report;
    report.max_total_lift_n =
        max_total_lift(geom, consts, omega_rad_s, config.rotor_count_n, variant);
    report.mtow_kg = max_takeoff_weight(report.max_total_lift_n, config.control_margin);
    if (vehicle_mass_kg > report.mtow_kg) {
        throw OverweightError(detail::strfmt(
            "vehicle mass %.3f kg exceeds the %.3f kg takeoff limit at %.0f%% control margin",
            vehicle_mass_kg, report.mtow_kg, config.control_margin * 100.0));
    }

    const double per_rotor_thrust =
        vehicle_mass_kg * kGravity / static_cast<double>(config.rotor_count_n);
    report.hover_pitch_rad =
        aero::pitch_for_thrust(geom, consts, omega_rad_s, per_rotor_thrust, variant);

    const aero::RotorSolution hover =
        solve_at_pitch(geom, consts, omega_rad_s, report.hover_pitch_rad, variant);
    const double hover_shaft_power_w =
        static_cast<double>(config.rotor_count_n) * hover.power_w;
    report.hover_power_w = hover_shaft_power_w / config.transmission_efficiency_eta;

    // Engine ratings and the requirement are both referred to the rotor
    // shaft, so qualification runs at eta = 1; eta enters once, below,
    // through the endurance formula.
    const PowerTorque req =
        required_power_torque(geom, consts, omega_rad_s, config.rotor_count_n, 1.0, variant);
    report.required_power_w = req.power_w;
    report.required_torque_nm = req.torque_nm;
    report.selected_engine =
        select_engine(catalog, req.power_w, req.torque_nm, omega_rad_s);

    if (report.selected_engine.has_value()) {
        report.endurance_hours =
            endurance(fuel, report.selected_engine->bsfc_g_per_kwh, hover_shaft_power_w,
                      config.transmission_efficiency_eta);
    }

    report.excitation_hz =
        excitation_frequency(rad_s_to_rpm(omega_rad_s), geom.blade_count);
    report.resonance_verdicts = resonance_check(report.excitation_hz, modes);
    return report;
}

}  // namespace vpq::sizing
