// Python extension exposing the library's main operations: rotor hover
// performance and its inverse solvers, the sizing pipeline, PD gain
// synthesis and allocation, the closed-loop simulator, and the JSON/CSV
// file boundary. Pure value types map to attribute-style Python classes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vpq/aero.hpp"
#include "vpq/control.hpp"
#include "vpq/errors.hpp"
#include "vpq/io.hpp"
#include "vpq/mathx.hpp"
#include "vpq/sim.hpp"
#include "vpq/sizing.hpp"

namespace py = pybind11;
using namespace vpq;

PYBIND11_MODULE(_vpq, m) {
    m.doc() = "Variable-pitch quadrotor design and simulation toolkit";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    m.def("deg_to_rad", &deg_to_rad, py::arg("deg"));
    m.def("rad_to_deg", &rad_to_deg, py::arg("rad"));
    m.def("rpm_to_rad_s", &rpm_to_rad_s, py::arg("rpm"));
    m.def("rad_s_to_rpm", &rad_s_to_rpm, py::arg("omega"));
    m.def("wrap_pi", &wrap_pi, py::arg("angle"));

    py::class_<Vec3>(m, "Vec3")
        .def(py::init<>())
        .def(py::init([](double x, double y, double z) { return Vec3{x, y, z}; }),
             py::arg("x"), py::arg("y"), py::arg("z"))
        .def_readwrite("x", &Vec3::x)
        .def_readwrite("y", &Vec3::y)
        .def_readwrite("z", &Vec3::z)
        .def("norm", &Vec3::norm);

    py::class_<Quat>(m, "Quat")
        .def(py::init<>())
        .def_readwrite("w", &Quat::w)
        .def_readwrite("x", &Quat::x)
        .def_readwrite("y", &Quat::y)
        .def_readwrite("z", &Quat::z)
        .def("norm", &Quat::norm);

    m.def("quat_from_euler", &quat_from_euler, py::arg("roll"), py::arg("pitch"),
          py::arg("yaw"));

    // Rotor hover aerodynamics.
    py::enum_<aero::InflowVariant>(m, "InflowVariant")
        .value("AS_PRINTED", aero::InflowVariant::AsPrinted)
        .value("MOMENTUM_CONSISTENT", aero::InflowVariant::MomentumConsistent);

    py::class_<aero::AeroConstants>(m, "AeroConstants")
        .def(py::init<>())
        .def_readwrite("lift_slope", &aero::AeroConstants::lift_slope)
        .def_readwrite("kappa", &aero::AeroConstants::kappa)
        .def_readwrite("beta0", &aero::AeroConstants::beta0)
        .def_readwrite("beta1", &aero::AeroConstants::beta1)
        .def_readwrite("beta2", &aero::AeroConstants::beta2)
        .def_readwrite("rho_kg_m3", &aero::AeroConstants::rho_kg_m3)
        .def("drag_polar", &aero::AeroConstants::drag_polar, py::arg("alpha_rad"))
        .def("validate", &aero::AeroConstants::validate);

    py::class_<aero::RotorGeometry>(m, "RotorGeometry")
        .def(py::init<>())
        .def_readwrite("radius_m", &aero::RotorGeometry::radius_m)
        .def_readwrite("blade_count", &aero::RotorGeometry::blade_count)
        .def_readwrite("solidity", &aero::RotorGeometry::solidity)
        .def_readwrite("pitch_min_rad", &aero::RotorGeometry::pitch_min_rad)
        .def_readwrite("pitch_max_rad", &aero::RotorGeometry::pitch_max_rad)
        .def("disk_area_m2", &aero::RotorGeometry::disk_area_m2)
        .def("validate", &aero::RotorGeometry::validate);

    py::class_<aero::RotorOperatingPoint>(m, "RotorOperatingPoint")
        .def(py::init<>())
        .def(py::init([](double omega, double pitch) {
                 return aero::RotorOperatingPoint{omega, pitch};
             }),
             py::arg("omega_rad_s"), py::arg("pitch_rad"))
        .def_readwrite("omega_rad_s", &aero::RotorOperatingPoint::omega_rad_s)
        .def_readwrite("pitch_rad", &aero::RotorOperatingPoint::pitch_rad);

    py::class_<aero::RotorSolution>(m, "RotorSolution")
        .def_readonly("ct", &aero::RotorSolution::ct)
        .def_readonly("cp_total", &aero::RotorSolution::cp_total)
        .def_readonly("cp_induced", &aero::RotorSolution::cp_induced)
        .def_readonly("cp_profile", &aero::RotorSolution::cp_profile)
        .def_readonly("inflow", &aero::RotorSolution::inflow)
        .def_readonly("alpha_rad", &aero::RotorSolution::alpha_rad)
        .def_readonly("thrust_n", &aero::RotorSolution::thrust_n)
        .def_readonly("power_w", &aero::RotorSolution::power_w)
        .def_readonly("torque_nm", &aero::RotorSolution::torque_nm);

    py::class_<aero::SweepPoint>(m, "SweepPoint")
        .def_readonly("pitch_rad", &aero::SweepPoint::pitch_rad)
        .def_readonly("solution", &aero::SweepPoint::solution);

    m.def("inflow_ratio", &aero::inflow_ratio, py::arg("geometry"), py::arg("constants"),
          py::arg("pitch_rad"),
          py::arg("variant") = aero::InflowVariant::MomentumConsistent);
    m.def("solve_rotor", &aero::solve_rotor, py::arg("geometry"), py::arg("constants"),
          py::arg("operating_point"),
          py::arg("variant") = aero::InflowVariant::MomentumConsistent);
    m.def("pitch_for_thrust", &aero::pitch_for_thrust, py::arg("geometry"),
          py::arg("constants"), py::arg("omega_rad_s"), py::arg("thrust_target_n"),
          py::arg("variant") = aero::InflowVariant::MomentumConsistent);
    m.def("sweep_curves", &aero::sweep_curves, py::arg("geometry"), py::arg("constants"),
          py::arg("omega_rad_s"), py::arg("pitch_start_rad"), py::arg("pitch_end_rad"),
          py::arg("pitch_step_rad"),
          py::arg("variant") = aero::InflowVariant::MomentumConsistent);
    m.def("ideal_hover_power", &aero::ideal_hover_power, py::arg("total_lift_n"),
          py::arg("rotor_count"), py::arg("disk_area_each_m2"), py::arg("rho_kg_m3"));
    m.def("calibrate_solidity", &aero::calibrate_solidity, py::arg("geometry"),
          py::arg("constants"), py::arg("omega_rad_s"), py::arg("pitch_ref_rad"),
          py::arg("thrust_ref_n"),
          py::arg("variant") = aero::InflowVariant::MomentumConsistent);

    // Sizing pipeline.
    py::class_<sizing::EngineSpec>(m, "EngineSpec")
        .def(py::init<>())
        .def_readwrite("name", &sizing::EngineSpec::name)
        .def_readwrite("displacement_cc", &sizing::EngineSpec::displacement_cc)
        .def_readwrite("max_power_w", &sizing::EngineSpec::max_power_w)
        .def_readwrite("max_torque_nm", &sizing::EngineSpec::max_torque_nm)
        .def_readwrite("bsfc_g_per_kwh", &sizing::EngineSpec::bsfc_g_per_kwh)
        .def_readwrite("rpm_min", &sizing::EngineSpec::rpm_min)
        .def_readwrite("rpm_max", &sizing::EngineSpec::rpm_max)
        .def("validate", &sizing::EngineSpec::validate);

    py::class_<sizing::FuelSpec>(m, "FuelSpec")
        .def(py::init<>())
        .def_readwrite("tank_volume_l", &sizing::FuelSpec::tank_volume_l)
        .def_readwrite("fuel_density_g_per_l", &sizing::FuelSpec::fuel_density_g_per_l)
        .def("validate", &sizing::FuelSpec::validate);

    py::class_<sizing::SizingConfig>(m, "SizingConfig")
        .def(py::init<>())
        .def_readwrite("rotor_count_n", &sizing::SizingConfig::rotor_count_n)
        .def_readwrite("control_margin", &sizing::SizingConfig::control_margin)
        .def_readwrite("transmission_efficiency_eta",
                       &sizing::SizingConfig::transmission_efficiency_eta)
        .def("validate", &sizing::SizingConfig::validate);

    py::class_<sizing::StructuralMode>(m, "StructuralMode")
        .def(py::init<>())
        .def(py::init([](std::string name, double hz, bool activatable) {
                 return sizing::StructuralMode{std::move(name), hz, activatable};
             }),
             py::arg("mode_name"), py::arg("frequency_hz"),
             py::arg("activatable_by_contrarotation"))
        .def_readwrite("mode_name", &sizing::StructuralMode::mode_name)
        .def_readwrite("frequency_hz", &sizing::StructuralMode::frequency_hz)
        .def_readwrite("activatable_by_contrarotation",
                       &sizing::StructuralMode::activatable_by_contrarotation);

    py::enum_<sizing::ModeStatus>(m, "ModeStatus")
        .value("PASS", sizing::ModeStatus::Pass)
        .value("WARN", sizing::ModeStatus::Warn)
        .value("FAIL", sizing::ModeStatus::Fail);

    py::class_<sizing::ModeVerdict>(m, "ModeVerdict")
        .def_readonly("mode", &sizing::ModeVerdict::mode)
        .def_readonly("status", &sizing::ModeVerdict::status)
        .def_readonly("separation", &sizing::ModeVerdict::separation)
        .def_readonly("note", &sizing::ModeVerdict::note);

    py::class_<sizing::PowerTorque>(m, "PowerTorque")
        .def_readonly("power_w", &sizing::PowerTorque::power_w)
        .def_readonly("torque_nm", &sizing::PowerTorque::torque_nm);

    py::class_<sizing::SizingReport>(m, "SizingReport")
        .def_readonly("max_total_lift_n", &sizing::SizingReport::max_total_lift_n)
        .def_readonly("mtow_kg", &sizing::SizingReport::mtow_kg)
        .def_readonly("hover_pitch_rad", &sizing::SizingReport::hover_pitch_rad)
        .def_readonly("hover_power_w", &sizing::SizingReport::hover_power_w)
        .def_readonly("required_power_w", &sizing::SizingReport::required_power_w)
        .def_readonly("required_torque_nm", &sizing::SizingReport::required_torque_nm)
        .def_readonly("selected_engine", &sizing::SizingReport::selected_engine)
        .def_readonly("endurance_hours", &sizing::SizingReport::endurance_hours)
        .def_readonly("excitation_hz", &sizing::SizingReport::excitation_hz)
        .def_readonly("resonance_verdicts", &sizing::SizingReport::resonance_verdicts);

    m.def("max_total_lift", &sizing::max_total_lift, py::arg("geometry"),
          py::arg("constants"), py::arg("omega_rad_s"), py::arg("rotor_count_n"),
          py::arg("variant") = aero::InflowVariant::MomentumConsistent);
    m.def("max_takeoff_weight", &sizing::max_takeoff_weight, py::arg("max_total_lift_n"),
          py::arg("control_margin"));
    m.def("required_power_torque", &sizing::required_power_torque, py::arg("geometry"),
          py::arg("constants"), py::arg("omega_rad_s"), py::arg("rotor_count_n"),
          py::arg("eta"), py::arg("variant") = aero::InflowVariant::MomentumConsistent);
    m.def("select_engine", &sizing::select_engine, py::arg("catalog"),
          py::arg("required_power_w"), py::arg("required_torque_nm"),
          py::arg("omega_rotor_rad_s"));
    m.def("endurance", &sizing::endurance, py::arg("fuel"), py::arg("bsfc_g_per_kwh"),
          py::arg("shaft_power_w"), py::arg("eta"));
    m.def("excitation_frequency", &sizing::excitation_frequency, py::arg("rotor_rpm"),
          py::arg("blades_per_rotor"));
    m.def("resonance_check", &sizing::resonance_check, py::arg("excitation_hz"),
          py::arg("modes"), py::arg("margin_fraction") = 0.2);
    m.def("build_sizing_report", &sizing::build_sizing_report, py::arg("geometry"),
          py::arg("constants"), py::arg("omega_rad_s"), py::arg("config"), py::arg("fuel"),
          py::arg("catalog"), py::arg("modes"), py::arg("vehicle_mass_kg"),
          py::arg("variant") = aero::InflowVariant::MomentumConsistent);

    // Attitude control.
    py::class_<control::AxisSpec>(m, "AxisSpec")
        .def(py::init<>())
        .def(py::init([](double inertia, double zeta, double wn) {
                 return control::AxisSpec{inertia, zeta, wn};
             }),
             py::arg("moment_of_inertia"), py::arg("damping_ratio"),
             py::arg("natural_frequency"))
        .def_readwrite("moment_of_inertia", &control::AxisSpec::moment_of_inertia)
        .def_readwrite("damping_ratio", &control::AxisSpec::damping_ratio)
        .def_readwrite("natural_frequency", &control::AxisSpec::natural_frequency);

    py::class_<control::PdGains>(m, "PdGains")
        .def(py::init<>())
        .def_readwrite("kp", &control::PdGains::kp)
        .def_readwrite("kd", &control::PdGains::kd);

    py::class_<control::GovernorSpec>(m, "GovernorSpec")
        .def(py::init<>())
        .def_readwrite("omega_ref_rad_s", &control::GovernorSpec::omega_ref_rad_s)
        .def_readwrite("time_constant_s", &control::GovernorSpec::time_constant_s);

    py::class_<control::MixerConfig>(m, "MixerConfig")
        .def(py::init<>())
        .def_readwrite("arm_length_m", &control::MixerConfig::arm_length_m)
        .def_readwrite("spin_directions", &control::MixerConfig::spin_directions)
        .def_readwrite("hover_pitch_rad", &control::MixerConfig::hover_pitch_rad)
        .def_readonly("hover_thrust_total_n", &control::MixerConfig::hover_thrust_total_n)
        .def_readonly("pitch_min_rad", &control::MixerConfig::pitch_min_rad)
        .def_readonly("pitch_max_rad", &control::MixerConfig::pitch_max_rad)
        .def_readonly("built", &control::MixerConfig::built);

    m.def("rotor_positions", &control::rotor_positions, py::arg("arm_length_m"));
    m.def("synthesize_pd", &control::synthesize_pd, py::arg("spec"));
    m.def("pd_torque", &control::pd_torque, py::arg("gains"), py::arg("angle_error_rad"),
          py::arg("body_rate_rad_s"));
    m.def(
        "build_allocation_jacobian",
        [](const aero::RotorGeometry& geom, const aero::AeroConstants& consts,
           double omega_rad_s, control::MixerConfig& mixer, aero::InflowVariant variant) {
            control::build_allocation_jacobian(geom, consts, omega_rad_s, mixer, variant);
            return mixer;
        },
        py::arg("geometry"), py::arg("constants"), py::arg("omega_rad_s"), py::arg("mixer"),
        py::arg("variant") = aero::InflowVariant::MomentumConsistent,
        "Completes the mixer in place and returns it.");
    m.def("allocate", &control::allocate, py::arg("mixer"), py::arg("thrust_cmd_n"),
          py::arg("torque_cmd_nm"));
    m.def("governor_step", &control::governor_step, py::arg("spec"), py::arg("omega_rad_s"),
          py::arg("dt_s"));

    // Closed-loop simulation.
    py::class_<sim::VehicleModel>(m, "VehicleModel")
        .def(py::init<>())
        .def_readwrite("mass_kg", &sim::VehicleModel::mass_kg)
        .def_readwrite("inertia_diag", &sim::VehicleModel::inertia_diag)
        .def_readwrite("rotor", &sim::VehicleModel::rotor)
        .def_readwrite("aero_constants", &sim::VehicleModel::aero_constants)
        .def_readwrite("mixer", &sim::VehicleModel::mixer)
        .def_readwrite("governor", &sim::VehicleModel::governor)
        .def_readwrite("gains_roll", &sim::VehicleModel::gains_roll)
        .def_readwrite("gains_pitch", &sim::VehicleModel::gains_pitch)
        .def_readwrite("gains_yaw", &sim::VehicleModel::gains_yaw)
        .def_readwrite("gravity", &sim::VehicleModel::gravity)
        .def("validate", &sim::VehicleModel::validate);

    py::class_<sim::SimState>(m, "SimState")
        .def(py::init<>())
        .def_readwrite("attitude", &sim::SimState::attitude)
        .def_readwrite("body_rates", &sim::SimState::body_rates)
        .def_readwrite("altitude_m", &sim::SimState::altitude_m)
        .def_readwrite("vertical_velocity_mps", &sim::SimState::vertical_velocity_mps)
        .def_readwrite("rotor_speed_rad_s", &sim::SimState::rotor_speed_rad_s)
        .def_readwrite("time_s", &sim::SimState::time_s);

    py::class_<sim::ReferenceSegment>(m, "ReferenceSegment")
        .def(py::init<>())
        .def_readwrite("start_time_s", &sim::ReferenceSegment::start_time_s)
        .def_readwrite("roll_ref_rad", &sim::ReferenceSegment::roll_ref_rad)
        .def_readwrite("pitch_ref_rad", &sim::ReferenceSegment::pitch_ref_rad)
        .def_readwrite("yaw_ref_rad", &sim::ReferenceSegment::yaw_ref_rad)
        .def_readwrite("collective_thrust_n", &sim::ReferenceSegment::collective_thrust_n);

    py::class_<sim::Disturbance>(m, "Disturbance")
        .def(py::init<>())
        .def_readwrite("time_s", &sim::Disturbance::time_s)
        .def_readwrite("axis", &sim::Disturbance::axis)
        .def_readwrite("impulse_nms", &sim::Disturbance::impulse_nms);

    py::class_<sim::Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("duration_s", &sim::Scenario::duration_s)
        .def_readwrite("dt_s", &sim::Scenario::dt_s)
        .def_readwrite("initial_state", &sim::Scenario::initial_state)
        .def_readwrite("segments", &sim::Scenario::segments)
        .def_readwrite("disturbances", &sim::Scenario::disturbances)
        .def("validate", &sim::Scenario::validate);

    py::class_<sim::LogRecord>(m, "LogRecord")
        .def_readonly("time_s", &sim::LogRecord::time_s)
        .def_readonly("roll_rad", &sim::LogRecord::roll_rad)
        .def_readonly("pitch_rad", &sim::LogRecord::pitch_rad)
        .def_readonly("yaw_rad", &sim::LogRecord::yaw_rad)
        .def_readonly("p_rads", &sim::LogRecord::p_rads)
        .def_readonly("q_rads", &sim::LogRecord::q_rads)
        .def_readonly("r_rads", &sim::LogRecord::r_rads)
        .def_readonly("theta_rad", &sim::LogRecord::theta_rad)
        .def_readonly("omega_rads", &sim::LogRecord::omega_rads)
        .def_readonly("altitude_m", &sim::LogRecord::altitude_m)
        .def_readonly("vz_mps", &sim::LogRecord::vz_mps)
        .def_readonly("thrust_total_n", &sim::LogRecord::thrust_total_n)
        .def_readonly("roll_ref_rad", &sim::LogRecord::roll_ref_rad)
        .def_readonly("pitch_ref_rad", &sim::LogRecord::pitch_ref_rad)
        .def_readonly("yaw_ref_rad", &sim::LogRecord::yaw_ref_rad);

    py::enum_<sim::Channel>(m, "Channel")
        .value("ROLL", sim::Channel::Roll)
        .value("PITCH", sim::Channel::Pitch)
        .value("YAW", sim::Channel::Yaw);

    py::class_<sim::StepMetrics>(m, "StepMetrics")
        .def_readonly("overshoot_fraction", &sim::StepMetrics::overshoot_fraction)
        .def_readonly("settling_time_2pct_s", &sim::StepMetrics::settling_time_2pct_s)
        .def_readonly("steady_state_error", &sim::StepMetrics::steady_state_error);

    m.def("step_rk4", &sim::step_rk4, py::arg("model"), py::arg("state"),
          py::arg("pitches_rad"), py::arg("dt_s"));
    m.def("run_scenario", &sim::run_scenario, py::arg("model"), py::arg("scenario"));
    m.def("step_metrics", &sim::step_metrics, py::arg("log"), py::arg("channel"),
          py::arg("step_time_s"), py::arg("reference_delta"));

    // File boundary.
    py::class_<io::VehicleConfig>(m, "VehicleConfig")
        .def_readonly("rotor", &io::VehicleConfig::rotor)
        .def_readonly("aero_constants", &io::VehicleConfig::aero_constants)
        .def_readonly("mass_kg", &io::VehicleConfig::mass_kg)
        .def_readonly("declared_mtow_kg", &io::VehicleConfig::declared_mtow_kg)
        .def_readonly("rotor_count", &io::VehicleConfig::rotor_count)
        .def_readonly("arm_length_m", &io::VehicleConfig::arm_length_m)
        .def_readonly("inertia_diag", &io::VehicleConfig::inertia_diag)
        .def_readonly("eta_transmission", &io::VehicleConfig::eta_transmission)
        .def_readonly("damping_ratio_zeta", &io::VehicleConfig::damping_ratio_zeta)
        .def_readonly("natural_frequency_wn", &io::VehicleConfig::natural_frequency_wn)
        .def_readonly("governor_rpm", &io::VehicleConfig::governor_rpm)
        .def_readonly("governor_tau_s", &io::VehicleConfig::governor_tau_s)
        .def_readonly("fuel", &io::VehicleConfig::fuel)
        .def("governor_omega_rad_s", &io::VehicleConfig::governor_omega_rad_s);

    m.def("load_vehicle", &io::load_vehicle, py::arg("path"));
    m.def("load_engines", &io::load_engines, py::arg("path"));
    m.def("load_modes", &io::load_modes, py::arg("path"));
    m.def("load_scenario", &io::load_scenario, py::arg("path"),
          py::arg("default_rotor_speed_rad_s"));
    m.def("build_vehicle_model", &io::build_vehicle_model, py::arg("config"));
    m.def("write_curves_csv", &io::write_curves_csv, py::arg("path"), py::arg("sweep"));
    m.def("write_log_csv", &io::write_log_csv, py::arg("path"), py::arg("log"));
}
