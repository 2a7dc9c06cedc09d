#include "vpq/control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vpq/detail/strfmt.hpp"

namespace vpq::control {

namespace {

constexpr double kDiffStep = 1e-4;     // rad, central-difference step
constexpr double kMaxCondition = 1e8;
constexpr double kBoxSlack = 1e-12;    // envelope membership slack inside the allocator

struct PitchBox {
    double lo;
    double hi;
};

bool inside(const std::array<double, 4>& pitches, const PitchBox& box) {
    for (double p : pitches) {
        if (p < box.lo - kBoxSlack || p > box.hi + kBoxSlack) return false;
    }
    return true;
}

// Largest k in [0, 1] with base + k*dir inside the box, or -1 when even
// k = 0 violates it.
double largest_feasible_scale(const std::array<double, 4>& base, const std::array<double, 4>& dir,
                              const PitchBox& box) {
    if (!inside(base, box)) return -1.0;
    double k = 1.0;
    for (int i = 0; i < 4; ++i) {
        if (dir[i] > kBoxSlack) {
            k = std::min(k, (box.hi - base[i]) / dir[i]);
        } else if (dir[i] < -kBoxSlack) {
            k = std::min(k, (box.lo - base[i]) / dir[i]);
        }
    }
    return std::max(k, 0.0);
}

std::array<double, 4> apply_inverse(const Mat4& inv, const std::array<double, 4>& w) {
    std::array<double, 4> out{};
    for (int r = 0; r < 4; ++r) {
        double acc = 0.0;
        for (int c = 0; c < 4; ++c) acc += inv.m[r][c] * w[c];
        out[r] = acc;
    }
    return out;
}

}  // namespace

void AxisSpec::validate() const {
    if (!(moment_of_inertia > 0.0)) {
        throw ValidationError(
            detail::strfmt("moment of inertia must be positive, got %.6g", moment_of_inertia));
    }
    if (!(damping_ratio > 0.0) || !(damping_ratio <= 2.0)) {
        throw ValidationError(
            detail::strfmt("damping ratio must lie in (0, 2], got %.6g", damping_ratio));
    }
    if (!(natural_frequency > 0.0)) {
        throw ValidationError(
            detail::strfmt("natural frequency must be positive, got %.6g", natural_frequency));
    }
}

void PdGains::validate() const {
    if (!(kp > 0.0) || !(kd > 0.0)) {
        throw ValidationError(detail::strfmt("gains must be positive, got kp=%.6g kd=%.6g", kp, kd));
    }
}

void GovernorSpec::validate() const {
    if (!(omega_ref_rad_s > 0.0)) {
        throw ValidationError(detail::strfmt("governor reference speed must be positive, got %.6g",
                                             omega_ref_rad_s));
    }
    if (!(time_constant_s > 0.0)) {
        throw ValidationError(
            detail::strfmt("governor time constant must be positive, got %.6g", time_constant_s));
    }
}

void MixerConfig::validate() const {
    if (!(arm_length_m > 0.0)) {
        throw ValidationError(
            detail::strfmt("arm length must be positive, got %.6g m", arm_length_m));
    }
    for (int s : spin_directions) {
        if (s != 1 && s != -1) {
            throw ValidationError("spin directions must be +1 or -1");
        }
    }
    for (int i = 0; i < 4; ++i) {
        if (spin_directions[static_cast<size_t>(i)] ==
            spin_directions[static_cast<size_t>((i + 1) % 4)]) {
            throw ValidationError("adjacent rotors must spin in opposite directions");
        }
    }
    if (!std::isfinite(hover_pitch_rad)) {
        throw ValidationError("hover pitch must be finite");
    }
}

std::array<Vec3, 4> rotor_positions(double arm_length_m) {
    const double d = arm_length_m / std::sqrt(2.0);
    return {Vec3{+d, +d, 0.0}, Vec3{+d, -d, 0.0}, Vec3{-d, -d, 0.0}, Vec3{-d, +d, 0.0}};
}

PdGains synthesize_pd(const AxisSpec& spec) {
    spec.validate();
    PdGains gains;
    gains.kp = spec.moment_of_inertia * spec.natural_frequency * spec.natural_frequency;
    gains.kd = 2.0 * spec.damping_ratio * spec.natural_frequency * spec.moment_of_inertia;
    return gains;
}

double pd_torque(const PdGains& gains, double angle_error_rad, double body_rate_rad_s) {
    gains.validate();
    if (!std::isfinite(angle_error_rad) || !std::isfinite(body_rate_rad_s)) {
        throw ValidationError("controller inputs must be finite");
    }
    return gains.kp * angle_error_rad - gains.kd * body_rate_rad_s;
}

Mat4 build_allocation_jacobian(const aero::RotorGeometry& geom, const aero::AeroConstants& consts,
                               double omega_rad_s, MixerConfig& mixer,
                               aero::InflowVariant variant) {
    geom.validate();
    consts.validate();
    mixer.validate();
    const double h = kDiffStep;
    if (mixer.hover_pitch_rad < geom.pitch_min_rad + h ||
        mixer.hover_pitch_rad > geom.pitch_max_rad - h) {
        throw OutOfEnvelopeError(detail::strfmt(
            "hover pitch %.6f rad too close to the envelope [%.6f, %.6f] to linearize",
            mixer.hover_pitch_rad, geom.pitch_min_rad, geom.pitch_max_rad));
    }

    const auto solve_at = [&](double pitch) {
        aero::RotorOperatingPoint op;
        op.omega_rad_s = omega_rad_s;
        op.pitch_rad = pitch;
        return aero::solve_rotor(geom, consts, op, variant);
    };
    const aero::RotorSolution hover = solve_at(mixer.hover_pitch_rad);
    const aero::RotorSolution plus = solve_at(mixer.hover_pitch_rad + h);
    const aero::RotorSolution minus = solve_at(mixer.hover_pitch_rad - h);
    const double dT = (plus.thrust_n - minus.thrust_n) / (2.0 * h);
    const double dQ = (plus.torque_nm - minus.torque_nm) / (2.0 * h);

    const std::array<Vec3, 4> pos = rotor_positions(mixer.arm_length_m);
    Mat4 jac{};
    for (int i = 0; i < 4; ++i) {
        const auto col = static_cast<size_t>(i);
        jac.m[0][col] = dT;
        jac.m[1][col] = pos[col].y * dT;
        jac.m[2][col] = -pos[col].x * dT;
        jac.m[3][col] = static_cast<double>(mixer.spin_directions[col]) * dQ;
    }

    const Mat4 inv = inverse(jac);  // throws SingularJacobianError on a zero pivot
    const double cond = condition_1(jac, inv);
    if (!(cond < kMaxCondition)) {
        throw SingularJacobianError(
            detail::strfmt("allocation jacobian condition number %.3g exceeds %.1g", cond,
                           kMaxCondition));
    }

    mixer.jacobian = jac;
    mixer.jacobian_inverse = inv;
    mixer.hover_thrust_total_n = 4.0 * hover.thrust_n;
    mixer.pitch_min_rad = geom.pitch_min_rad;
    mixer.pitch_max_rad = geom.pitch_max_rad;
    mixer.built = true;
    return jac;
}

std::array<double, 4> allocate(const MixerConfig& mixer, double thrust_cmd_n,
                               const Vec3& torque_cmd_nm) {
    if (!mixer.built) {
        throw ValidationError("mixer jacobian has not been built");
    }
    if (!std::isfinite(thrust_cmd_n) || !std::isfinite(torque_cmd_nm.x) ||
        !std::isfinite(torque_cmd_nm.y) || !std::isfinite(torque_cmd_nm.z)) {
        throw ValidationError("allocation commands must be finite");
    }

    const PitchBox box{mixer.pitch_min_rad, mixer.pitch_max_rad};
    const double dthrust = thrust_cmd_n - mixer.hover_thrust_total_n;
    const auto d_thrust =
        apply_inverse(mixer.jacobian_inverse, {dthrust, 0.0, 0.0, 0.0});
    const auto d_rollpitch =
        apply_inverse(mixer.jacobian_inverse, {0.0, torque_cmd_nm.x, torque_cmd_nm.y, 0.0});
    const auto d_yaw =
        apply_inverse(mixer.jacobian_inverse, {0.0, 0.0, 0.0, torque_cmd_nm.z});

    std::array<double, 4> pitches{};
    const auto compose = [&](double k_rp, double k_yaw) {
        for (int i = 0; i < 4; ++i) {
            const auto s = static_cast<size_t>(i);
            pitches[s] = mixer.hover_pitch_rad + d_thrust[s] + k_rp * d_rollpitch[s] +
                         k_yaw * d_yaw[s];
        }
    };

    compose(1.0, 1.0);
    if (!inside(pitches, box)) {
        // Shed yaw first, then roll/pitch; the thrust component is never
        // scaled, only clamped when it alone exceeds the envelope.
        std::array<double, 4> base{};
        for (int i = 0; i < 4; ++i) {
            const auto s = static_cast<size_t>(i);
            base[s] = mixer.hover_pitch_rad + d_thrust[s] + d_rollpitch[s];
        }
        const double k_yaw = largest_feasible_scale(base, d_yaw, box);
        if (k_yaw >= 0.0) {
            compose(1.0, k_yaw);
        } else {
            for (int i = 0; i < 4; ++i) {
                const auto s = static_cast<size_t>(i);
                base[s] = mixer.hover_pitch_rad + d_thrust[s];
            }
            const double k_rp = largest_feasible_scale(base, d_rollpitch, box);
            compose(std::max(k_rp, 0.0), 0.0);
        }
    }

    for (double& p : pitches) p = std::clamp(p, box.lo, box.hi);
    return pitches;
}

double governor_step(const GovernorSpec& spec, double omega_rad_s, double dt_s) {
    spec.validate();
    if (!(dt_s > 0.0)) {
        throw ValidationError(detail::strfmt("time step must be positive, got %.6g s", dt_s));
    }
    if (!std::isfinite(omega_rad_s)) {
        throw ValidationError("rotor speed must be finite");
    }
    return omega_rad_s +
           (spec.omega_ref_rad_s - omega_rad_s) * (1.0 - std::exp(-dt_s / spec.time_constant_s));
}

}  // namespace vpq::control
