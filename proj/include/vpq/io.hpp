#pragma once

// File boundary: JSON vehicle/engine/modes/scenario readers and CSV writers.
// Angles are degrees and speeds RPM inside the files; everything is
// converted to radians and rad/s here and never anywhere else.

#include <string>
#include <vector>

#include "vpq/aero.hpp"
#include "vpq/sim.hpp"
#include "vpq/sizing.hpp"

namespace vpq::io {

// Parsed vehicle document. The rotor solidity is already resolved: if the
// file gives a calibration anchor {theta_deg, thrust_n} instead of an
// explicit solidity, calibrate_solidity runs against it at the governor
// speed. An explicit anchor wins over an explicit solidity when both appear.
struct VehicleConfig {
    aero::RotorGeometry rotor;
    aero::AeroConstants aero_constants;
    double mass_kg = 0.0;
    double declared_mtow_kg = 0.0;   // placarded limit from the file, carried as data
    int rotor_count = 4;
    double arm_length_m = 0.0;
    Vec3 inertia_diag;
    double eta_transmission = 0.8;
    double damping_ratio_zeta = 0.0;
    double natural_frequency_wn = 0.0;
    double governor_rpm = 0.0;
    double governor_tau_s = 0.0;
    sizing::FuelSpec fuel;

    double governor_omega_rad_s() const { return rpm_to_rad_s(governor_rpm); }
};

VehicleConfig load_vehicle(const std::string& path);

std::vector<sizing::EngineSpec> load_engines(const std::string& path);

std::vector<sizing::StructuralMode> load_modes(const std::string& path);

// The scenario file may omit the initial block or its rotor_rpm; the rotor
// then starts at default_rotor_speed_rad_s (normally the governor reference).
sim::Scenario load_scenario(const std::string& path, double default_rotor_speed_rad_s);

// Closed-loop model assembled from a vehicle document: per-axis PD gains from
// (inertia, zeta, wn), governor at the configured speed, mixer linearized at
// the hover pitch that carries mass_kg. Requires exactly four rotors.
sim::VehicleModel build_vehicle_model(const VehicleConfig& config);

// Pitch sweep table: theta_deg, thrust_n, power_w, torque_nm, ct, cp, lambda.
void write_curves_csv(const std::string& path, const std::vector<aero::SweepPoint>& sweep);

// Simulation log in the fixed 18-column layout.
void write_log_csv(const std::string& path, const std::vector<sim::LogRecord>& log);

}  // namespace vpq::io
