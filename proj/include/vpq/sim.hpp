#pragma once

// Deterministic closed-loop simulator: rigid-body rotational dynamics plus
// vertical translation, driven by the PD controller, the allocator, the
// governor, and the rotor model. Scenarios script reference timelines and
// torque disturbances; logs carry one record per step.

#include <array>
#include <string>
#include <vector>

#include "vpq/aero.hpp"
#include "vpq/control.hpp"
#include "vpq/errors.hpp"
#include "vpq/mathx.hpp"

namespace vpq::sim {

struct VehicleModel {
    double mass_kg = 0.0;
    Vec3 inertia_diag;             // Ixx, Iyy, Izz about body axes
    aero::RotorGeometry rotor;
    aero::AeroConstants aero_constants;
    control::MixerConfig mixer;    // built before closed-loop use
    control::GovernorSpec governor;
    control::PdGains gains_roll;
    control::PdGains gains_pitch;
    control::PdGains gains_yaw;
    double gravity = 9.81;
    aero::InflowVariant variant = aero::InflowVariant::MomentumConsistent;

    // Throws ValidationError on hard violations; returns advisory notes
    // (an asymmetric Ixx != Iyy frame is legal but worth flagging).
    std::vector<std::string> validate() const;
};

struct SimState {
    Quat attitude;                      // body to world, renormalized every step
    Vec3 body_rates;                    // p, q, r in body axes, rad/s
    double altitude_m = 0.0;
    double vertical_velocity_mps = 0.0;
    double rotor_speed_rad_s = 0.0;
    double time_s = 0.0;
};

struct StateDerivative {
    Quat attitude_dot;
    Vec3 body_rates_dot;
    double altitude_dot = 0.0;
    double vertical_velocity_dot = 0.0;
};

// Reference held from start_time_s until the next segment begins.
struct ReferenceSegment {
    double start_time_s = 0.0;
    double roll_ref_rad = 0.0;
    double pitch_ref_rad = 0.0;
    double yaw_ref_rad = 0.0;
    double collective_thrust_n = 0.0;
};

// Torque impulse applied as an instantaneous body-rate change
// delta_rate = impulse / inertia on one axis, between steps.
struct Disturbance {
    double time_s = 0.0;
    int axis = 0;                  // 0 roll, 1 pitch, 2 yaw
    double impulse_nms = 0.0;
};

struct Scenario {
    double duration_s = 0.0;
    double dt_s = 1e-3;
    SimState initial_state;
    std::vector<ReferenceSegment> segments;
    std::vector<Disturbance> disturbances;

    void validate() const;
};

// One row per simulation step, sampled before the step executes.
struct LogRecord {
    double time_s = 0.0;
    double roll_rad = 0.0;
    double pitch_rad = 0.0;
    double yaw_rad = 0.0;
    double p_rads = 0.0;
    double q_rads = 0.0;
    double r_rads = 0.0;
    std::array<double, 4> theta_rad{};  // allocated rotor pitches
    double omega_rads = 0.0;
    double altitude_m = 0.0;
    double vz_mps = 0.0;
    double thrust_total_n = 0.0;        // realized, from the rotor model
    double roll_ref_rad = 0.0;
    double pitch_ref_rad = 0.0;
    double yaw_ref_rad = 0.0;
};

enum class Channel { Roll, Pitch, Yaw };

struct StepMetrics {
    double overshoot_fraction = 0.0;
    double settling_time_2pct_s = 0.0;  // from step onset; +inf if never settled in-log
    double steady_state_error = 0.0;
};

// Continuous-time derivative at one instant: per-rotor thrust/torque from the
// rotor model at (omega, theta_i), body torques from the X-frame arm geometry
// and spin signs, Euler rigid-body rotation, quaternion kinematics, and
// vertical translation under the tilted total thrust.
StateDerivative dynamics_derivative(const VehicleModel& model, const SimState& state,
                                    const std::array<double, 4>& pitches_rad,
                                    double omega_rad_s);

// Classical RK4 advance over dt with the pitches held. Rotor speed follows
// the governor's exact lag solution, evaluated at the stage times so the
// integrator keeps its fourth order; the quaternion is renormalized after
// the step. Throws NumericalBlowupError past |state| = 1e6.
SimState step_rk4(const VehicleModel& model, const SimState& state,
                  const std::array<double, 4>& pitches_rad, double dt_s);

// Closed loop: per step reads the active reference, forms axis errors (yaw
// wrapped to (-pi, pi]), runs the PD law, allocates pitches, applies any due
// disturbances, and integrates. Pure function of its inputs; identical calls
// produce identical logs.
std::vector<LogRecord> run_scenario(const VehicleModel& model, const Scenario& scenario);

// Step-response metrics for one attitude channel around a reference step of
// size reference_delta at step_time. The settled value is the mean of the
// final tenth of the log. Throws StepNotFoundError when the log does not
// cover step_time.
StepMetrics step_metrics(const std::vector<LogRecord>& log, Channel channel, double step_time_s,
                         double reference_delta);

}  // namespace vpq::sim
