// Command-line front end: parses vehicle/engine/scenario files, runs the
// library, writes CSV tables and key=value reports. Degrees and RPM live
// here and in the files; the library speaks radians.
//
// Exit codes: 0 success, 1 validation (bad input), 2 infeasible
// (envelope/weight/no solution, or no qualifying engine, or a FAIL verdict),
// 3 numerical failure.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vpq/aero.hpp"
#include "vpq/control.hpp"
#include "vpq/errors.hpp"
#include "vpq/io.hpp"
#include "vpq/sim.hpp"
#include "vpq/sizing.hpp"

namespace {

vpq::aero::InflowVariant parse_variant(const std::string& name) {
    if (name == "printed") return vpq::aero::InflowVariant::AsPrinted;
    if (name == "consistent") return vpq::aero::InflowVariant::MomentumConsistent;
    throw vpq::ValidationError("variant must be 'printed' or 'consistent', got '" + name + "'");
}

vpq::sim::Channel parse_channel(const std::string& name) {
    if (name == "roll") return vpq::sim::Channel::Roll;
    if (name == "pitch") return vpq::sim::Channel::Pitch;
    if (name == "yaw") return vpq::sim::Channel::Yaw;
    throw vpq::ValidationError("channel must be roll, pitch or yaw, got '" + name + "'");
}

struct CurvesArgs {
    std::string vehicle;
    std::string out;
    double rpm = 0.0;
    double theta_min_deg = 0.0;
    double theta_max_deg = 0.0;
    double step_deg = 0.0;
    std::string variant = "consistent";
};

int run_curves(const CurvesArgs& args) {
    const vpq::io::VehicleConfig cfg = vpq::io::load_vehicle(args.vehicle);
    const auto sweep = vpq::aero::sweep_curves(
        cfg.rotor, cfg.aero_constants, vpq::rpm_to_rad_s(args.rpm),
        vpq::deg_to_rad(args.theta_min_deg), vpq::deg_to_rad(args.theta_max_deg),
        vpq::deg_to_rad(args.step_deg), parse_variant(args.variant));
    vpq::io::write_curves_csv(args.out, sweep);
    std::printf("rows=%zu\n", sweep.size());
    return 0;
}

struct SizeArgs {
    std::string vehicle;
    std::string engines;
    std::string modes;
    double margin = 0.5;
};

int run_size(const SizeArgs& args) {
    const vpq::io::VehicleConfig cfg = vpq::io::load_vehicle(args.vehicle);
    const auto catalog = vpq::io::load_engines(args.engines);
    const auto modes = vpq::io::load_modes(args.modes);

    vpq::sizing::SizingConfig sc;
    sc.rotor_count_n = cfg.rotor_count;
    sc.control_margin = args.margin;
    sc.transmission_efficiency_eta = cfg.eta_transmission;

    const vpq::sizing::SizingReport report = vpq::sizing::build_sizing_report(
        cfg.rotor, cfg.aero_constants, cfg.governor_omega_rad_s(), sc, cfg.fuel, catalog, modes,
        cfg.mass_kg);

    std::printf("max_total_lift_n=%.6g\n", report.max_total_lift_n);
    std::printf("mtow_kg=%.6g\n", report.mtow_kg);
    std::printf("hover_pitch_deg=%.6g\n", vpq::rad_to_deg(report.hover_pitch_rad));
    std::printf("hover_power_w=%.6g\n", report.hover_power_w);
    std::printf("required_power_w=%.6g\n", report.required_power_w);
    std::printf("required_torque_nm=%.6g\n", report.required_torque_nm);
    std::printf("engine=%s\n",
                report.selected_engine ? report.selected_engine->name.c_str() : "none");
    std::printf("endurance_hours=%.2f\n", report.endurance_hours);
    std::printf("excitation_hz=%.2f\n", report.excitation_hz);
    for (const auto& v : report.resonance_verdicts) {
        std::printf("mode_%s=%s\n", v.mode.mode_name.c_str(), vpq::sizing::to_string(v.status));
    }
    return report.selected_engine ? 0 : 2;
}

struct GainsArgs {
    double inertia = 0.0;
    double zeta = 0.0;
    double omega_n = 0.0;
};

int run_gains(const GainsArgs& args) {
    vpq::control::AxisSpec spec;
    spec.moment_of_inertia = args.inertia;
    spec.damping_ratio = args.zeta;
    spec.natural_frequency = args.omega_n;
    const vpq::control::PdGains gains = vpq::control::synthesize_pd(spec);
    std::printf("kp=%.3f\n", gains.kp);
    std::printf("kd=%.3f\n", gains.kd);
    return 0;
}

struct VibrationArgs {
    std::string modes;
    double rpm = 0.0;
    int blades = 0;
    double band = 0.2;
};

int run_vibration(const VibrationArgs& args) {
    const auto modes = vpq::io::load_modes(args.modes);
    const double excitation = vpq::sizing::excitation_frequency(args.rpm, args.blades);
    const auto verdicts = vpq::sizing::resonance_check(excitation, modes, args.band);
    std::printf("excitation_hz=%.2f\n", excitation);
    bool any_fail = false;
    for (const auto& v : verdicts) {
        std::printf("mode_%s=%s\n", v.mode.mode_name.c_str(), vpq::sizing::to_string(v.status));
        any_fail = any_fail || v.status == vpq::sizing::ModeStatus::Fail;
    }
    return any_fail ? 2 : 0;
}

struct EnduranceArgs {
    double fuel_l = 0.0;
    double density = 0.0;
    double bsfc = 0.0;
    double power_w = 0.0;
    double eta = 0.8;
};

int run_endurance(const EnduranceArgs& args) {
    vpq::sizing::FuelSpec fuel;
    fuel.tank_volume_l = args.fuel_l;
    fuel.fuel_density_g_per_l = args.density;
    fuel.validate();
    const double hours = vpq::sizing::endurance(fuel, args.bsfc, args.power_w, args.eta);
    std::printf("endurance_hours=%.2f\n", hours);
    return 0;
}

struct SimulateArgs {
    std::string vehicle;
    std::string scenario;
    std::string out;
    std::string metrics;
};

int run_simulate(const SimulateArgs& args) {
    const vpq::io::VehicleConfig cfg = vpq::io::load_vehicle(args.vehicle);
    const vpq::sim::VehicleModel model = vpq::io::build_vehicle_model(cfg);
    for (const std::string& note : model.validate()) {
        std::fprintf(stderr, "warning: %s\n", note.c_str());
    }
    const vpq::sim::Scenario scenario =
        vpq::io::load_scenario(args.scenario, model.governor.omega_ref_rad_s);
    const auto log = vpq::sim::run_scenario(model, scenario);
    vpq::io::write_log_csv(args.out, log);
    std::printf("rows=%zu\n", log.size());

    if (!args.metrics.empty()) {
        const vpq::sim::Channel channel = parse_channel(args.metrics);
        const auto ref_of = [&](const vpq::sim::ReferenceSegment& s) {
            switch (channel) {
                case vpq::sim::Channel::Roll: return s.roll_ref_rad;
                case vpq::sim::Channel::Pitch: return s.pitch_ref_rad;
                case vpq::sim::Channel::Yaw: return s.yaw_ref_rad;
            }
            return s.roll_ref_rad;
        };
        double step_time = -1.0;
        double delta = 0.0;
        for (size_t i = 1; i < scenario.segments.size(); ++i) {
            delta = ref_of(scenario.segments[i]) - ref_of(scenario.segments[i - 1]);
            if (delta != 0.0) {
                step_time = scenario.segments[i].start_time_s;
                break;
            }
        }
        if (step_time < 0.0) {
            throw vpq::StepNotFoundError("scenario has no " + args.metrics + " reference step");
        }
        const vpq::sim::StepMetrics metrics =
            vpq::sim::step_metrics(log, channel, step_time, delta);
        std::printf("overshoot_fraction=%.6g\n", metrics.overshoot_fraction);
        std::printf("settling_time_2pct_s=%.6g\n", metrics.settling_time_2pct_s);
        std::printf("steady_state_error=%.6g\n", metrics.steady_state_error);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variable-pitch quadrotor design and simulation toolkit"};
    app.require_subcommand(1);
    int exit_code = 0;

    CurvesArgs curves_args;
    CLI::App* curves = app.add_subcommand("curves", "Rotor performance sweep over pitch");
    curves->add_option("--vehicle", curves_args.vehicle, "Vehicle config file")->required();
    curves->add_option("--rpm", curves_args.rpm, "Rotor speed in RPM")->required();
    curves->add_option("--theta-min", curves_args.theta_min_deg, "Sweep start, degrees")
        ->required();
    curves->add_option("--theta-max", curves_args.theta_max_deg, "Sweep end, degrees")->required();
    curves->add_option("--step", curves_args.step_deg, "Sweep step, degrees")->required();
    curves->add_option("--variant", curves_args.variant, "Inflow form: printed|consistent");
    curves->add_option("--out", curves_args.out, "Output CSV path")->required();
    curves->callback([&]() { exit_code = run_curves(curves_args); });

    SizeArgs size_args;
    CLI::App* size = app.add_subcommand("size", "Lift, weight, engine and endurance report");
    size->add_option("--vehicle", size_args.vehicle, "Vehicle config file")->required();
    size->add_option("--engines", size_args.engines, "Engine catalog file")->required();
    size->add_option("--modes", size_args.modes, "Structural modes file")->required();
    size->add_option("--margin", size_args.margin, "Control margin fraction (default 0.5)");
    size->callback([&]() { exit_code = run_size(size_args); });

    GainsArgs gains_args;
    CLI::App* gains = app.add_subcommand("gains", "PD gains from second-order response specs");
    gains->add_option("--inertia", gains_args.inertia, "Axis moment of inertia, kg m^2")
        ->required();
    gains->add_option("--zeta", gains_args.zeta, "Damping ratio")->required();
    gains->add_option("--omega-n", gains_args.omega_n, "Natural frequency, rad/s")->required();
    gains->callback([&]() { exit_code = run_gains(gains_args); });

    VibrationArgs vibration_args;
    CLI::App* vibration = app.add_subcommand("vibration", "Rotor excitation vs structural modes");
    vibration->add_option("--rpm", vibration_args.rpm, "Rotor speed in RPM")->required();
    vibration->add_option("--blades", vibration_args.blades, "Blades per rotor")->required();
    vibration->add_option("--modes", vibration_args.modes, "Structural modes file")->required();
    vibration->add_option("--band", vibration_args.band, "Margin fraction (default 0.2)");
    vibration->callback([&]() { exit_code = run_vibration(vibration_args); });

    EnduranceArgs endurance_args;
    CLI::App* endurance = app.add_subcommand("endurance", "Flight hours from a full tank");
    endurance->add_option("--fuel-l", endurance_args.fuel_l, "Tank volume, liters")->required();
    endurance->add_option("--density", endurance_args.density, "Fuel density, g/L")->required();
    endurance->add_option("--bsfc", endurance_args.bsfc, "Specific fuel consumption, g/kWh")
        ->required();
    endurance->add_option("--power-w", endurance_args.power_w, "Rotor shaft power, W")->required();
    endurance->add_option("--eta", endurance_args.eta, "Transmission efficiency (default 0.8)");
    endurance->callback([&]() { exit_code = run_endurance(endurance_args); });

    SimulateArgs simulate_args;
    CLI::App* simulate = app.add_subcommand("simulate", "Closed-loop scenario run to CSV");
    simulate->add_option("--vehicle", simulate_args.vehicle, "Vehicle config file")->required();
    simulate->add_option("--scenario", simulate_args.scenario, "Scenario file")->required();
    simulate->add_option("--out", simulate_args.out, "Output CSV path")->required();
    simulate->add_option("--metrics", simulate_args.metrics,
                         "Print step metrics for channel: roll|pitch|yaw");
    simulate->callback([&]() { exit_code = run_simulate(simulate_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const vpq::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const vpq::InfeasibleError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const vpq::NumericalError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return exit_code;
}
