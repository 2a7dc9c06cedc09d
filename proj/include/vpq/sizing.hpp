#pragma once

// Vehicle-level sizing built on the rotor model: lift budget and takeoff
// weight under a control margin, engine power/torque requirements and
// selection, fuel endurance, and a rotor-excitation check against the
// airframe's structural modes.

#include <optional>
#include <string>
#include <vector>

#include "vpq/aero.hpp"
#include "vpq/errors.hpp"

namespace vpq::sizing {

constexpr double kGravity = 9.81;  // m/s^2

struct EngineSpec {
    std::string name;
    double displacement_cc = 0.0;
    double max_power_w = 0.0;
    double max_torque_nm = 0.0;    // at the output shaft, geared to rotor speed
    double bsfc_g_per_kwh = 0.0;   // brake specific fuel consumption
    double rpm_min = 0.0;
    double rpm_max = 0.0;

    void validate() const;
};

struct FuelSpec {
    double tank_volume_l = 0.0;
    double fuel_density_g_per_l = 0.0;

    void validate() const;
};

// Vehicle-level knobs that are not rotor geometry.
struct SizingConfig {
    int rotor_count_n = 4;
    double control_margin = 0.5;             // thrust headroom fraction for attitude authority
    double transmission_efficiency_eta = 0.8;

    void validate() const;
};

struct StructuralMode {
    std::string mode_name;
    double frequency_hz = 0.0;
    bool activatable_by_contrarotation = false;  // in-phase rotor loading can excite it
};

enum class ModeStatus { Pass, Warn, Fail };

const char* to_string(ModeStatus status);

struct ModeVerdict {
    StructuralMode mode;
    ModeStatus status = ModeStatus::Pass;
    double separation = 0.0;   // |f_mode - f_exc| / f_exc
    std::string note;
};

// Sizing summary at the governed rotor speed.
struct SizingReport {
    double max_total_lift_n = 0.0;            // all rotors at max pitch
    double mtow_kg = 0.0;                     // heaviest mass honoring the control margin
    double hover_pitch_rad = 0.0;             // collective that carries the given mass
    double hover_power_w = 0.0;               // engine-side power at that pitch, n*P/eta
    double required_power_w = 0.0;            // rotor-shaft power at max pitch, all rotors
    double required_torque_nm = 0.0;          // required_power_w / Omega
    std::optional<EngineSpec> selected_engine;
    double endurance_hours = 0.0;             // full tank at the hover operating point
    double excitation_hz = 0.0;
    std::vector<ModeVerdict> resonance_verdicts;
};

// Total lift with every rotor at max pitch.
double max_total_lift(const aero::RotorGeometry& geom, const aero::AeroConstants& consts,
                      double omega_rad_s, int rotor_count_n,
                      aero::InflowVariant variant = aero::InflowVariant::MomentumConsistent);

// Heaviest mass the lift budget supports while retaining the margin:
// lift / (9.81 * (1 + margin)).
double max_takeoff_weight(double max_total_lift_n, double control_margin);

struct PowerTorque {
    double power_w = 0.0;
    double torque_nm = 0.0;
};

// Engine power and torque demanded with all rotors at max pitch:
// P = n * P_rotor / eta, Q = P / Omega (torque referred to rotor speed).
PowerTorque required_power_torque(const aero::RotorGeometry& geom,
                                  const aero::AeroConstants& consts, double omega_rad_s,
                                  int rotor_count_n, double eta,
                                  aero::InflowVariant variant = aero::InflowVariant::MomentumConsistent);

// Smallest-max-power engine covering both requirements; ties broken by lower
// displacement, then name. nullopt when nothing in the catalog qualifies.
// The rotor speed is accepted for symmetry with the requirement computation
// but does not filter the catalog: gearing is abstracted into max_torque_nm.
std::optional<EngineSpec> select_engine(const std::vector<EngineSpec>& catalog,
                                        double required_power_w, double required_torque_nm,
                                        double omega_rotor_rad_s);

// Flight hours from a full tank:
// (volume * density) / (bsfc * (shaft_power/1000) / eta).
// Zero tank volume gives zero hours; zero or negative power is rejected.
double endurance(const FuelSpec& fuel, double bsfc_g_per_kwh, double shaft_power_w, double eta);

// Blade-passage excitation frequency: rpm/60 * blades.
double excitation_frequency(double rotor_rpm, int blades_per_rotor);

// Classifies each structural mode against the excitation frequency.
// Within margin_fraction relative separation: Fail if the mode is
// activatable, Warn otherwise (contra-rotating pairs excite out of phase and
// cancel). Outside the band: Pass, except activatable modes below the
// excitation frequency Warn because the spool-up sweep crosses them.
std::vector<ModeVerdict> resonance_check(double excitation_hz,
                                         const std::vector<StructuralMode>& modes,
                                         double margin_fraction = 0.2);

// Composes the pipeline end to end at vehicle_mass_kg. Engine qualification
// uses rotor-shaft power and torque (eta = 1): engine ratings and the
// published requirement are both quoted at the rotor shaft. Endurance applies
// eta once, via the endurance formula, at the hover operating point, using
// the selected engine's bsfc (zero hours when nothing qualifies).
SizingReport build_sizing_report(const aero::RotorGeometry& geom,
                                 const aero::AeroConstants& consts, double omega_rad_s,
                                 const SizingConfig& config, const FuelSpec& fuel,
                                 const std::vector<EngineSpec>& catalog,
                                 const std::vector<StructuralMode>& modes,
                                 double vehicle_mass_kg,
                                 aero::InflowVariant variant = aero::InflowVariant::MomentumConsistent);

}  // namespace vpq::sizing
