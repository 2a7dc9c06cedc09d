#pragma once

// Hover performance of a constant-speed, variable-pitch rotor from momentum
// theory and blade element theory. Thrust and power coefficients are
// nondimensionalized by rho*A*(Omega*R)^2 and rho*A*(Omega*R)^3, so they
// depend only on (solidity, lift slope, pitch, kappa, drag polar); rotor
// size and speed enter only through dimensionalization.
//
// All angles are radians, all speeds rad/s. Degrees and RPM exist only at
// the CLI boundary.

#include <vector>

#include "vpq/errors.hpp"
#include "vpq/mathx.hpp"

namespace vpq::aero {

// Empirical aerodynamic description of the blade section.
struct AeroConstants {
    double lift_slope = 5.7;       // dCl/dalpha, per radian
    double kappa = 1.60;           // induced power correction factor, >= 1
    double beta0 = 0.0130;         // drag polar Cd(a) = beta0 + beta1*a + beta2*a^2
    double beta1 = -0.0216;
    double beta2 = 0.400;
    double rho_kg_m3 = 1.18;       // air density

    void validate() const;
    double drag_polar(double alpha_rad) const {
        return beta0 + beta1 * alpha_rad + beta2 * alpha_rad * alpha_rad;
    }
};

struct RotorGeometry {
    double radius_m = 0.0;
    int blade_count = 2;
    double solidity = 0.0;         // blade planform area / disk area, in (0, 0.3)
    double pitch_min_rad = 0.0;    // collective pitch envelope, pitch_min < 0 < pitch_max
    double pitch_max_rad = 0.0;

    double disk_area_m2() const { return kPi * radius_m * radius_m; }
    void validate() const;
};

struct RotorOperatingPoint {
    double omega_rad_s = 0.0;      // rotor angular speed, > 0
    double pitch_rad = 0.0;        // collective pitch
};

// Hover solution at one operating point, nondimensional and dimensional.
struct RotorSolution {
    double ct = 0.0;
    double cp_total = 0.0;         // cp_induced + cp_profile, exact
    double cp_induced = 0.0;
    double cp_profile = 0.0;
    double inflow = 0.0;           // induced velocity / tip speed
    double alpha_rad = 0.0;        // effective blade angle of attack, pitch - inflow
    double thrust_n = 0.0;
    double power_w = 0.0;
    double torque_nm = 0.0;        // power / omega, exact
};

// The closed-form inflow ratio admits two readings: the literal printed form
// with 64*theta/(sigma*a) under the radical, and the momentum-consistent form
// with 64*theta/(3*sigma*a), which is the unique root of lambda = sqrt(ct/2)
// combined with the thrust coefficient formula. Only the momentum-consistent
// form reproduces the measured thrust anchor with a plausible solidity, so it
// is the default everywhere.
enum class InflowVariant {
    AsPrinted,
    MomentumConsistent,
};

// Inflow ratio lambda(theta). Odd in theta: negative pitch returns
// -lambda(|theta|).
double inflow_ratio(const RotorGeometry& geom, const AeroConstants& consts, double pitch_rad,
                    InflowVariant variant = InflowVariant::MomentumConsistent);

struct ThrustCoefficientResult {
    double ct = 0.0;
    double inflow = 0.0;
};

// ct = (sigma*a/2) * (theta/3 - lambda/2), odd-extended to negative pitch.
ThrustCoefficientResult thrust_coefficient(const RotorGeometry& geom, const AeroConstants& consts,
                                           double pitch_rad,
                                           InflowVariant variant = InflowVariant::MomentumConsistent);

struct PowerCoefficientResult {
    double cp_total = 0.0;
    double cp_induced = 0.0;       // kappa * |ct|^(3/2) / sqrt(2), always >= 0
    double cp_profile = 0.0;       // (sigma/8) * Cd(alpha), always > 0
    double alpha_rad = 0.0;        // theta - lambda
};

PowerCoefficientResult power_coefficient(const RotorGeometry& geom, const AeroConstants& consts,
                                         double pitch_rad,
                                         InflowVariant variant = InflowVariant::MomentumConsistent);

// Full nondimensional + dimensional solution at one operating point.
// Throws OutOfEnvelopeError if the pitch is outside the geometry envelope.
RotorSolution solve_rotor(const RotorGeometry& geom, const AeroConstants& consts,
                          const RotorOperatingPoint& op,
                          InflowVariant variant = InflowVariant::MomentumConsistent);

// Inverts the monotone thrust-vs-pitch map by bisection: returns pitch such
// that |thrust(pitch) - thrust_target| <= 1e-6 N. Positive targets search
// [0, pitch_max], negative targets [pitch_min, 0]. Throws OutOfEnvelopeError
// when the target exceeds the thrust available at the envelope edge.
double pitch_for_thrust(const RotorGeometry& geom, const AeroConstants& consts, double omega_rad_s,
                        double thrust_target_n,
                        InflowVariant variant = InflowVariant::MomentumConsistent);

struct SweepPoint {
    double pitch_rad = 0.0;
    RotorSolution solution;
};

// Performance table over [pitch_start, pitch_end] sampled every pitch_step.
// Rows are strictly increasing in pitch; a degenerate range yields one row.
std::vector<SweepPoint> sweep_curves(const RotorGeometry& geom, const AeroConstants& consts,
                                     double omega_rad_s, double pitch_start_rad,
                                     double pitch_end_rad, double pitch_step_rad,
                                     InflowVariant variant = InflowVariant::MomentumConsistent);

// Actuator-disk minimum power to lift total_lift_n with rotor_count disks of
// disk_area_each_m2: lift^(3/2) / sqrt(2 * rho * total_area). Depends on the
// disk areas only through their sum.
double ideal_hover_power(double total_lift_n, int rotor_count, double disk_area_each_m2,
                         double rho_kg_m3);

// Finds the solidity in (0, 0.3) that reproduces a measured thrust anchor
// (thrust_ref_n at pitch_ref_rad, omega_rad_s) within 1e-6 N, by bisection on
// the monotone thrust-vs-solidity map. The solidity stored in geom is
// ignored. Throws NoSolutionError when no admissible solidity reaches the
// anchor.
double calibrate_solidity(const RotorGeometry& geom, const AeroConstants& consts,
                          double omega_rad_s, double pitch_ref_rad, double thrust_ref_n,
                          InflowVariant variant = InflowVariant::MomentumConsistent);

}  // namespace vpq::aero
