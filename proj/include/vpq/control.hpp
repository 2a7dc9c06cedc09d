#pragma once

// Attitude control pieces: PD gain synthesis from second-order response
// specs, the PD law itself, a Jacobian-inversion control allocator mapping
// (total thrust, body torques) to four rotor pitch angles, and the engine
// governor holding rotor speed.

#include <array>

#include "vpq/aero.hpp"
#include "vpq/errors.hpp"
#include "vpq/mathx.hpp"

namespace vpq::control {

// Desired closed-loop second-order behavior of one attitude axis.
struct AxisSpec {
    double moment_of_inertia = 0.0;   // kg*m^2
    double damping_ratio = 0.0;
    double natural_frequency = 0.0;   // rad/s

    void validate() const;
};

struct PdGains {
    double kp = 0.0;   // N*m per rad
    double kd = 0.0;   // N*m per rad/s

    void validate() const;
};

// First-order rotor speed regulator.
struct GovernorSpec {
    double omega_ref_rad_s = 0.0;
    double time_constant_s = 0.5;

    void validate() const;
};

// Rotor layout and the hover linearization used for allocation. The frame is
// body x forward, y left, z up; rotors sit on the diagonals of an
// X-configuration, numbered front-left, front-right, rear-right, rear-left,
// at lateral offset arm_length/sqrt(2) per axis. spin_directions holds the
// sign each rotor's aerodynamic torque contributes about body z (+1 for the
// counter-clockwise pair); adjacent rotors must alternate.
struct MixerConfig {
    double arm_length_m = 0.6;
    std::array<int, 4> spin_directions{+1, -1, +1, -1};
    double hover_pitch_rad = 0.0;

    // Filled by build_allocation_jacobian.
    Mat4 jacobian{};                   // pitch deviations -> (T_total, tau_x, tau_y, tau_z)
    Mat4 jacobian_inverse{};
    double hover_thrust_total_n = 0.0;
    double pitch_min_rad = 0.0;
    double pitch_max_rad = 0.0;
    bool built = false;

    void validate() const;             // layout fields only, not the built state
};

// Rotor hub positions (x forward, y left) for the X layout above.
std::array<Vec3, 4> rotor_positions(double arm_length_m);

// kp = I*wn^2, kd = 2*zeta*wn*I: places the closed-loop poles of
// I*angle'' = tau at damping zeta and frequency wn.
PdGains synthesize_pd(const AxisSpec& spec);

// tau = kp*error - kd*rate. The derivative acts on the measured rate, not
// the error derivative, so reference steps produce no derivative kick.
double pd_torque(const PdGains& gains, double angle_error_rad, double body_rate_rad_s);

// Completes the mixer about its hover pitch: numerically differentiates
// per-rotor thrust and torque (central difference, 1e-4 rad), assembles the
// 4x4 wrench map from the arm geometry and spin signs, and caches its
// inverse and the hover thrust. Returns the jacobian. Throws
// SingularJacobianError if the matrix conditioning exceeds 1e8.
Mat4 build_allocation_jacobian(const aero::RotorGeometry& geom, const aero::AeroConstants& consts,
                               double omega_rad_s, MixerConfig& mixer,
                               aero::InflowVariant variant = aero::InflowVariant::MomentumConsistent);

// Maps a commanded wrench to four pitch angles about the hover point:
// theta = theta_hover + J^-1 * (thrust_cmd - T_hover, torque_cmd). Results
// are kept inside the pitch envelope by shedding commands in priority order
// thrust > roll/pitch > yaw: yaw torque is scaled down first, then
// roll/pitch torque, and only a thrust command no envelope can serve gets
// clamped outright. Saturation is handled, never raised.
std::array<double, 4> allocate(const MixerConfig& mixer, double thrust_cmd_n,
                               const Vec3& torque_cmd_nm);

// Exact one-step discretization of the first-order lag toward omega_ref:
// omega' = omega + (omega_ref - omega) * (1 - exp(-dt/tau)).
double governor_step(const GovernorSpec& spec, double omega_rad_s, double dt_s);

}  // namespace vpq::control
