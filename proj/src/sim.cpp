#include "vpq/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vpq/detail/strfmt.hpp"

namespace vpq::sim {

namespace {

constexpr double kBlowupLimit = 1e6;

// Governor lag solution at an offset into the step, used for RK4 stage
// evaluations.
double governor_at(const control::GovernorSpec& gov, double omega0, double dt) {
    if (dt == 0.0) return omega0;
    return gov.omega_ref_rad_s + (omega0 - gov.omega_ref_rad_s) * std::exp(-dt / gov.time_constant_s);
}

SimState advance(const SimState& s, const StateDerivative& d, double h) {
    SimState out = s;
    out.attitude.w = s.attitude.w + h * d.attitude_dot.w;
    out.attitude.x = s.attitude.x + h * d.attitude_dot.x;
    out.attitude.y = s.attitude.y + h * d.attitude_dot.y;
    out.attitude.z = s.attitude.z + h * d.attitude_dot.z;
    out.body_rates = s.body_rates + d.body_rates_dot * h;
    out.altitude_m = s.altitude_m + h * d.altitude_dot;
    out.vertical_velocity_mps = s.vertical_velocity_mps + h * d.vertical_velocity_dot;
    return out;
}

// !(|x| <= limit) also trips on NaN.
void check_magnitude(double value, const char* what) {
    if (!(std::abs(value) <= kBlowupLimit)) {
        throw NumericalBlowupError(
            detail::strfmt("%s diverged to %.6g, integration aborted", what, value));
    }
}

void check_state(const SimState& s) {
    check_magnitude(s.body_rates.x, "roll rate");
    check_magnitude(s.body_rates.y, "pitch rate");
    check_magnitude(s.body_rates.z, "yaw rate");
    check_magnitude(s.altitude_m, "altitude");
    check_magnitude(s.vertical_velocity_mps, "vertical velocity");
    check_magnitude(s.attitude.norm(), "attitude quaternion norm");
}

}  // namespace

std::vector<std::string> VehicleModel::validate() const {
    if (!(mass_kg > 0.0)) {
        throw ValidationError(detail::strfmt("mass must be positive, got %.6g kg", mass_kg));
    }
    if (!(inertia_diag.x > 0.0) || !(inertia_diag.y > 0.0) || !(inertia_diag.z > 0.0)) {
        throw ValidationError("inertia entries must be positive");
    }
    if (!(gravity > 0.0)) {
        throw ValidationError(detail::strfmt("gravity must be positive, got %.6g", gravity));
    }
    rotor.validate();
    aero_constants.validate();
    mixer.validate();
    governor.validate();
    gains_roll.validate();
    gains_pitch.validate();
    gains_yaw.validate();

    std::vector<std::string> warnings;
    const double rel = std::abs(inertia_diag.x - inertia_diag.y) /
                       std::max(inertia_diag.x, inertia_diag.y);
    if (rel > 1e-9) {
        warnings.push_back(detail::strfmt(
            "Ixx %.6g and Iyy %.6g differ; the symmetric X-frame assumption does not hold",
            inertia_diag.x, inertia_diag.y));
    }
    return warnings;
}

void Scenario::validate() const {
    if (!(duration_s > 0.0)) {
        throw ValidationError(
            detail::strfmt("scenario duration must be positive, got %.6g s", duration_s));
    }
    if (!(dt_s > 0.0) || dt_s > duration_s) {
        throw ValidationError(detail::strfmt("time step %.6g s must be positive and no longer "
                                             "than the %.6g s duration",
                                             dt_s, duration_s));
    }
    if (segments.empty()) {
        throw ValidationError("scenario needs at least one reference segment");
    }
    if (std::abs(segments.front().start_time_s) > 1e-12) {
        throw ValidationError("the first reference segment must start at time zero");
    }
    for (size_t i = 0; i < segments.size(); ++i) {
        const ReferenceSegment& seg = segments[i];
        if (i > 0 && !(seg.start_time_s > segments[i - 1].start_time_s)) {
            throw ValidationError("reference segments must start at strictly increasing times");
        }
        if (seg.start_time_s >= duration_s && i > 0) {
            throw ValidationError(detail::strfmt(
                "segment start %.6g s lies beyond the %.6g s duration", seg.start_time_s,
                duration_s));
        }
        if (!(seg.collective_thrust_n > 0.0)) {
            throw ValidationError("collective thrust reference must be positive");
        }
    }
    for (const Disturbance& d : disturbances) {
        if (d.time_s < 0.0 || d.time_s >= duration_s) {
            throw ValidationError(detail::strfmt(
                "disturbance at %.6g s lies outside the scenario duration", d.time_s));
        }
        if (d.axis < 0 || d.axis > 2) {
            throw ValidationError(detail::strfmt("disturbance axis must be 0, 1 or 2, got %d",
                                                 d.axis));
        }
    }
    if (!(initial_state.rotor_speed_rad_s > 0.0)) {
        throw ValidationError("initial rotor speed must be positive");
    }
}

StateDerivative dynamics_derivative(const VehicleModel& model, const SimState& state,
                                    const std::array<double, 4>& pitches_rad,
                                    double omega_rad_s) {
    const std::array<Vec3, 4> pos = control::rotor_positions(model.mixer.arm_length_m);

    double thrust_total = 0.0;
    Vec3 torque{0.0, 0.0, 0.0};
    for (size_t i = 0; i < 4; ++i) {
        aero::RotorOperatingPoint op;
        op.omega_rad_s = omega_rad_s;
        op.pitch_rad = pitches_rad[i];
        const aero::RotorSolution sol =
            aero::solve_rotor(model.rotor, model.aero_constants, op, model.variant);
        thrust_total += sol.thrust_n;
        torque.x += pos[i].y * sol.thrust_n;
        torque.y += -pos[i].x * sol.thrust_n;
        torque.z += static_cast<double>(model.mixer.spin_directions[i]) * sol.torque_nm;
    }

    const Vec3 w = state.body_rates;
    const Vec3 iw{model.inertia_diag.x * w.x, model.inertia_diag.y * w.y,
                  model.inertia_diag.z * w.z};
    const Vec3 gyro = cross(w, iw);

    StateDerivative d;
    d.body_rates_dot = Vec3{(torque.x - gyro.x) / model.inertia_diag.x,
                            (torque.y - gyro.y) / model.inertia_diag.y,
                            (torque.z - gyro.z) / model.inertia_diag.z};
    d.attitude_dot = quat_derivative(state.attitude, w);
    d.altitude_dot = state.vertical_velocity_mps;
    const double tilt_cos = state.attitude.body_z_world_z();
    d.vertical_velocity_dot =
        (thrust_total * tilt_cos - model.mass_kg * model.gravity) / model.mass_kg;
    return d;
}

SimState step_rk4(const VehicleModel& model, const SimState& state,
                  const std::array<double, 4>& pitches_rad, double dt_s) {
    if (!(dt_s > 0.0)) {
        throw ValidationError(detail::strfmt("time step must be positive, got %.6g s", dt_s));
    }

    const double omega0 = state.rotor_speed_rad_s;
    const double omega_half = governor_at(model.governor, omega0, 0.5 * dt_s);
    const double omega_full = governor_at(model.governor, omega0, dt_s);

    const StateDerivative k1 = dynamics_derivative(model, state, pitches_rad, omega0);
    const StateDerivative k2 =
        dynamics_derivative(model, advance(state, k1, 0.5 * dt_s), pitches_rad, omega_half);
    const StateDerivative k3 =
        dynamics_derivative(model, advance(state, k2, 0.5 * dt_s), pitches_rad, omega_half);
    const StateDerivative k4 =
        dynamics_derivative(model, advance(state, k3, dt_s), pitches_rad, omega_full);

    SimState next = state;
    const double w6 = dt_s / 6.0;
    next.attitude.w += w6 * (k1.attitude_dot.w + 2.0 * k2.attitude_dot.w +
                             2.0 * k3.attitude_dot.w + k4.attitude_dot.w);
    next.attitude.x += w6 * (k1.attitude_dot.x + 2.0 * k2.attitude_dot.x +
                             2.0 * k3.attitude_dot.x + k4.attitude_dot.x);
    next.attitude.y += w6 * (k1.attitude_dot.y + 2.0 * k2.attitude_dot.y +
                             2.0 * k3.attitude_dot.y + k4.attitude_dot.y);
    next.attitude.z += w6 * (k1.attitude_dot.z + 2.0 * k2.attitude_dot.z +
                             2.0 * k3.attitude_dot.z + k4.attitude_dot.z);
    next.body_rates =
        state.body_rates + (k1.body_rates_dot + k2.body_rates_dot * 2.0 +
                            k3.body_rates_dot * 2.0 + k4.body_rates_dot) *
                               w6;
    next.altitude_m += w6 * (k1.altitude_dot + 2.0 * k2.altitude_dot + 2.0 * k3.altitude_dot +
                             k4.altitude_dot);
    next.vertical_velocity_mps +=
        w6 * (k1.vertical_velocity_dot + 2.0 * k2.vertical_velocity_dot +
              2.0 * k3.vertical_velocity_dot + k4.vertical_velocity_dot);

    next.attitude = next.attitude.normalized();
    next.rotor_speed_rad_s = omega_full;
    next.time_s = state.time_s + dt_s;
    check_state(next);
    return next;
}

std::vector<LogRecord> run_scenario(const VehicleModel& model, const Scenario& scenario) {
    model.validate();
    scenario.validate();
    if (!model.mixer.built) {
        throw ValidationError("mixer jacobian has not been built");
    }

    std::vector<Disturbance> pending = scenario.disturbances;
    std::stable_sort(pending.begin(), pending.end(),
                     [](const Disturbance& a, const Disturbance& b) { return a.time_s < b.time_s; });
    size_t next_disturbance = 0;

    const auto steps = static_cast<long long>(std::llround(scenario.duration_s / scenario.dt_s));
    std::vector<LogRecord> log;
    log.reserve(static_cast<size_t>(steps));

    SimState state = scenario.initial_state;
    size_t active = 0;

    for (long long k = 0; k < steps; ++k) {
        const double t = state.time_s;
        while (active + 1 < scenario.segments.size() &&
               scenario.segments[active + 1].start_time_s <= t + 1e-12) {
            ++active;
        }
        const ReferenceSegment& ref = scenario.segments[active];

        // Impulses due in [t, t+dt) land before this step integrates.
        while (next_disturbance < pending.size() &&
               pending[next_disturbance].time_s < t + scenario.dt_s - 1e-12) {
            const Disturbance& d = pending[next_disturbance];
            const double inertia = d.axis == 0   ? model.inertia_diag.x
                                   : d.axis == 1 ? model.inertia_diag.y
                                                 : model.inertia_diag.z;
            if (d.axis == 0) state.body_rates.x += d.impulse_nms / inertia;
            if (d.axis == 1) state.body_rates.y += d.impulse_nms / inertia;
            if (d.axis == 2) state.body_rates.z += d.impulse_nms / inertia;
            ++next_disturbance;
        }

        const EulerAngles euler = quat_to_euler(state.attitude);
        const double roll_err = ref.roll_ref_rad - euler.roll;
        const double pitch_err = ref.pitch_ref_rad - euler.pitch;
        const double yaw_err = wrap_pi(ref.yaw_ref_rad - euler.yaw);

        const Vec3 torque_cmd{
            control::pd_torque(model.gains_roll, roll_err, state.body_rates.x),
            control::pd_torque(model.gains_pitch, pitch_err, state.body_rates.y),
            control::pd_torque(model.gains_yaw, yaw_err, state.body_rates.z)};
        const std::array<double, 4> pitches =
            control::allocate(model.mixer, ref.collective_thrust_n, torque_cmd);

        double thrust_total = 0.0;
        for (double pitch : pitches) {
            aero::RotorOperatingPoint op;
            op.omega_rad_s = state.rotor_speed_rad_s;
            op.pitch_rad = pitch;
            thrust_total +=
                aero::solve_rotor(model.rotor, model.aero_constants, op, model.variant).thrust_n;
        }

        LogRecord rec;
        rec.time_s = t;
        rec.roll_rad = euler.roll;
        rec.pitch_rad = euler.pitch;
        rec.yaw_rad = euler.yaw;
        rec.p_rads = state.body_rates.x;
        rec.q_rads = state.body_rates.y;
        rec.r_rads = state.body_rates.z;
        rec.theta_rad = pitches;
        rec.omega_rads = state.rotor_speed_rad_s;
        rec.altitude_m = state.altitude_m;
        rec.vz_mps = state.vertical_velocity_mps;
        rec.thrust_total_n = thrust_total;
        rec.roll_ref_rad = ref.roll_ref_rad;
        rec.pitch_ref_rad = ref.pitch_ref_rad;
        rec.yaw_ref_rad = ref.yaw_ref_rad;
        log.push_back(rec);

        state = step_rk4(model, state, pitches, scenario.dt_s);
    }
    return log;
}

StepMetrics step_metrics(const std::vector<LogRecord>& log, Channel channel, double step_time_s,
                         double reference_delta) {
    if (log.empty()) {
        throw StepNotFoundError("log is empty");
    }
    if (reference_delta == 0.0 || !std::isfinite(reference_delta)) {
        throw ValidationError("reference delta must be finite and nonzero");
    }
    const auto value = [&](const LogRecord& r) {
        switch (channel) {
            case Channel::Roll: return r.roll_rad;
            case Channel::Pitch: return r.pitch_rad;
            case Channel::Yaw: return r.yaw_rad;
        }
        return r.roll_rad;
    };
    const auto ref_value = [&](const LogRecord& r) {
        switch (channel) {
            case Channel::Roll: return r.roll_ref_rad;
            case Channel::Pitch: return r.pitch_ref_rad;
            case Channel::Yaw: return r.yaw_ref_rad;
        }
        return r.roll_ref_rad;
    };

    size_t first = log.size();
    for (size_t i = 0; i < log.size(); ++i) {
        if (log[i].time_s >= step_time_s - 1e-12) {
            first = i;
            break;
        }
    }
    if (first == log.size()) {
        throw StepNotFoundError(
            detail::strfmt("log ends before the %.6g s step time", step_time_s));
    }

    const size_t tail = std::max<size_t>(1, log.size() / 10);
    double final_sum = 0.0;
    double ref_sum = 0.0;
    for (size_t i = log.size() - tail; i < log.size(); ++i) {
        final_sum += value(log[i]);
        ref_sum += ref_value(log[i]);
    }
    const double y_final = final_sum / static_cast<double>(tail);
    const double ref_final = ref_sum / static_cast<double>(tail);

    StepMetrics metrics;
    double peak = 0.0;
    for (size_t i = first; i < log.size(); ++i) {
        peak = std::max(peak, (value(log[i]) - y_final) / reference_delta);
    }
    metrics.overshoot_fraction = peak;

    const double band = 0.02 * std::abs(reference_delta);
    size_t settle = log.size();  // first index after the last out-of-band sample
    for (size_t i = log.size(); i-- > first;) {
        if (std::abs(value(log[i]) - y_final) > band) {
            settle = i + 1;
            break;
        }
        settle = i;
    }
    metrics.settling_time_2pct_s =
        settle == log.size() ? std::numeric_limits<double>::infinity()
                             : std::max(0.0, log[settle].time_s - step_time_s);

    metrics.steady_state_error = std::abs(y_final - ref_final);
    return metrics;
}

}  // namespace vpq::sim
