#include "vpq/aero.hpp"

#include <algorithm>
#include <cmath>

#include "vpq/detail/strfmt.hpp"

namespace vpq::aero {

namespace {

// Tolerance for pitch envelope membership, absorbs roundoff from sweeps and
// bisection landing exactly on a boundary.
constexpr double kEnvelopeSlack = 1e-9;

// Absolute tolerance, in the target quantity, for the bisection inversions.
constexpr double kInvertTol = 1e-6;
constexpr int kInvertMaxIter = 200;

void check_envelope(const RotorGeometry& geom, double pitch_rad) {
    if (pitch_rad < geom.pitch_min_rad - kEnvelopeSlack ||
        pitch_rad > geom.pitch_max_rad + kEnvelopeSlack) {
        throw OutOfEnvelopeError(detail::strfmt(
            "pitch %.6f rad outside envelope [%.6f, %.6f] rad", pitch_rad, geom.pitch_min_rad,
            geom.pitch_max_rad));
    }
}

struct NdSolution {
    double ct;
    double cp_total;
    double cp_induced;
    double cp_profile;
    double inflow;
    double alpha_rad;
};

// Nondimensional solution chain, no validation. The closed forms hold for
// positive pitch; negative pitch maps through the odd extension of ct and
// lambda (the rotor pushed to negative collective mirrors the positive case).
NdSolution solve_nd(const RotorGeometry& geom, const AeroConstants& consts, double pitch_rad,
                    InflowVariant variant) {
    const double mag = std::abs(pitch_rad);
    const double sa = geom.solidity * consts.lift_slope;
    const double f = (variant == InflowVariant::AsPrinted) ? 1.0 : 3.0;
    const double lambda_mag = sa / 16.0 * (std::sqrt(1.0 + 64.0 * mag / (f * sa)) - 1.0);
    const double ct_mag = sa / 2.0 * (mag / 3.0 - lambda_mag / 2.0);
    const double sign = (pitch_rad < 0.0) ? -1.0 : 1.0;

    NdSolution nd;
    nd.inflow = sign * lambda_mag;
    nd.ct = sign * ct_mag;
    nd.alpha_rad = pitch_rad - nd.inflow;
    nd.cp_induced = consts.kappa * std::pow(std::abs(nd.ct), 1.5) / std::sqrt(2.0);
    nd.cp_profile = geom.solidity / 8.0 * consts.drag_polar(nd.alpha_rad);
    nd.cp_total = nd.cp_induced + nd.cp_profile;
    return nd;
}

// rho * A * (Omega*R)^2, the force scale; multiply once more by Omega*R for
// the power scale.
double force_scale(const RotorGeometry& geom, const AeroConstants& consts, double omega_rad_s) {
    const double tip_speed = omega_rad_s * geom.radius_m;
    return consts.rho_kg_m3 * geom.disk_area_m2() * tip_speed * tip_speed;
}

void check_omega(double omega_rad_s) {
    if (!(omega_rad_s > 0.0) || !std::isfinite(omega_rad_s)) {
        throw ValidationError(
            detail::strfmt("rotor speed must be positive, got %.6g rad/s", omega_rad_s));
    }
}

void check_finite_pitch(double pitch_rad) {
    if (!std::isfinite(pitch_rad)) {
        throw ValidationError("pitch must be finite");
    }
}

}  // namespace

void AeroConstants::validate() const {
    if (!(lift_slope > 0.0)) {
        throw ValidationError(detail::strfmt("lift slope must be positive, got %.6g", lift_slope));
    }
    if (!(kappa >= 1.0)) {
        throw ValidationError(
            detail::strfmt("induced power factor must be at least 1, got %.6g", kappa));
    }
    if (!(rho_kg_m3 > 0.0)) {
        throw ValidationError(
            detail::strfmt("air density must be positive, got %.6g kg/m^3", rho_kg_m3));
    }
    // The profile drag coefficient must stay positive over the angles blade
    // element theory sees. Quadratic, so endpoints plus interior vertex cover
    // the interval.
    constexpr double lo = -0.35;
    constexpr double hi = 0.35;
    double worst = std::min(drag_polar(lo), drag_polar(hi));
    if (beta2 > 0.0) {
        const double vertex = -beta1 / (2.0 * beta2);
        if (vertex > lo && vertex < hi) worst = std::min(worst, drag_polar(vertex));
    }
    if (!(worst > 0.0)) {
        throw ValidationError("drag polar must be positive for angles within +/-0.35 rad");
    }
}

void RotorGeometry::validate() const {
    if (!(radius_m > 0.0)) {
        throw ValidationError(detail::strfmt("rotor radius must be positive, got %.6g m", radius_m));
    }
    if (blade_count < 2) {
        throw ValidationError(detail::strfmt("blade count must be at least 2, got %d", blade_count));
    }
    if (!(solidity > 0.0) || !(solidity < 0.3)) {
        throw ValidationError(detail::strfmt("solidity must lie in (0, 0.3), got %.6g", solidity));
    }
    if (!(pitch_min_rad < 0.0) || !(pitch_max_rad > 0.0)) {
        throw ValidationError(detail::strfmt(
            "pitch envelope must straddle zero, got [%.6g, %.6g] rad", pitch_min_rad,
            pitch_max_rad));
    }
    if (!(pitch_max_rad <= 0.35) || !(pitch_min_rad >= -0.35)) {
        throw ValidationError("pitch envelope exceeds +/-0.35 rad, outside small-angle validity");
    }
}

double inflow_ratio(const RotorGeometry& geom, const AeroConstants& consts, double pitch_rad,
                    InflowVariant variant) {
    geom.validate();
    consts.validate();
    check_finite_pitch(pitch_rad);
    return solve_nd(geom, consts, pitch_rad, variant).inflow;
}

ThrustCoefficientResult thrust_coefficient(const RotorGeometry& geom, const AeroConstants& consts,
                                           double pitch_rad, InflowVariant variant) {
    geom.validate();
    consts.validate();
    check_finite_pitch(pitch_rad);
    const NdSolution nd = solve_nd(geom, consts, pitch_rad, variant);
    return {nd.ct, nd.inflow};
}

PowerCoefficientResult power_coefficient(const RotorGeometry& geom, const AeroConstants& consts,
                                         double pitch_rad, InflowVariant variant) {
    geom.validate();
    consts.validate();
    check_finite_pitch(pitch_rad);
    const NdSolution nd = solve_nd(geom, consts, pitch_rad, variant);
    return {nd.cp_total, nd.cp_induced, nd.cp_profile, nd.alpha_rad};
}

RotorSolution solve_rotor(const RotorGeometry& geom, const AeroConstants& consts,
                          const RotorOperatingPoint& op, InflowVariant variant) {
    geom.validate();
    consts.validate();
    check_omega(op.omega_rad_s);
    check_finite_pitch(op.pitch_rad);
    check_envelope(geom, op.pitch_rad);

    const NdSolution nd = solve_nd(geom, consts, op.pitch_rad, variant);
    const double fs = force_scale(geom, consts, op.omega_rad_s);
    const double ps = fs * op.omega_rad_s * geom.radius_m;

    RotorSolution sol;
    sol.ct = nd.ct;
    sol.cp_total = nd.cp_total;
    sol.cp_induced = nd.cp_induced;
    sol.cp_profile = nd.cp_profile;
    sol.inflow = nd.inflow;
    sol.alpha_rad = nd.alpha_rad;
    sol.thrust_n = nd.ct * fs;
    sol.power_w = nd.cp_total * ps;
    sol.torque_nm = sol.power_w / op.omega_rad_s;
    return sol;
}

double pitch_for_thrust(const RotorGeometry& geom, const AeroConstants& consts, double omega_rad_s,
                        double thrust_target_n, InflowVariant variant) {
    geom.validate();
    consts.validate();
    check_omega(omega_rad_s);
    if (!std::isfinite(thrust_target_n)) {
        throw ValidationError("thrust target must be finite");
    }

    const double fs = force_scale(geom, consts, omega_rad_s);
    const auto thrust_at = [&](double pitch) {
        return solve_nd(geom, consts, pitch, variant).ct * fs;
    };

    if (thrust_target_n == 0.0) return 0.0;

    double lo;
    double hi;
    if (thrust_target_n > 0.0) {
        const double avail = thrust_at(geom.pitch_max_rad);
        if (thrust_target_n > avail + kInvertTol) {
            throw OutOfEnvelopeError(detail::strfmt(
                "thrust target %.6g N exceeds %.6g N available at max pitch", thrust_target_n,
                avail));
        }
        lo = 0.0;
        hi = geom.pitch_max_rad;
    } else {
        const double avail = thrust_at(geom.pitch_min_rad);
        if (thrust_target_n < avail - kInvertTol) {
            throw OutOfEnvelopeError(detail::strfmt(
                "thrust target %.6g N below %.6g N available at min pitch", thrust_target_n,
                avail));
        }
        lo = geom.pitch_min_rad;
        hi = 0.0;
    }

    for (int i = 0; i < kInvertMaxIter; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double t = thrust_at(mid);
        if (std::abs(t - thrust_target_n) <= kInvertTol) return mid;
        if (t < thrust_target_n) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    throw ConvergenceError(detail::strfmt(
        "pitch inversion for thrust %.6g N did not converge in %d bisection steps",
        thrust_target_n, kInvertMaxIter));
}

std::vector<SweepPoint> sweep_curves(const RotorGeometry& geom, const AeroConstants& consts,
                                     double omega_rad_s, double pitch_start_rad,
                                     double pitch_end_rad, double pitch_step_rad,
                                     InflowVariant variant) {
    geom.validate();
    consts.validate();
    check_omega(omega_rad_s);
    if (pitch_end_rad < pitch_start_rad) {
        throw EmptyRangeError(detail::strfmt(
            "pitch range is empty: start %.6g rad exceeds end %.6g rad", pitch_start_rad,
            pitch_end_rad));
    }
    if (!(pitch_step_rad > 0.0)) {
        throw ValidationError(
            detail::strfmt("pitch step must be positive, got %.6g rad", pitch_step_rad));
    }

    // floor with a relative nudge so an integral span includes its endpoint.
    const int count =
        static_cast<int>(std::floor((pitch_end_rad - pitch_start_rad) / pitch_step_rad + 1e-9)) + 1;

    std::vector<SweepPoint> points;
    points.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double pitch = pitch_start_rad + static_cast<double>(i) * pitch_step_rad;
        RotorOperatingPoint op;
        op.omega_rad_s = omega_rad_s;
        op.pitch_rad = pitch;
        points.push_back({pitch, solve_rotor(geom, consts, op, variant)});
    }
    return points;
}

double ideal_hover_power(double total_lift_n, int rotor_count, double disk_area_each_m2,
                         double rho_kg_m3) {
    if (!(total_lift_n > 0.0)) {
        throw ValidationError(detail::strfmt("lift must be positive, got %.6g N", total_lift_n));
    }
    if (rotor_count < 1) {
        throw ValidationError(detail::strfmt("rotor count must be at least 1, got %d", rotor_count));
    }
    if (!(disk_area_each_m2 > 0.0)) {
        throw ValidationError(
            detail::strfmt("disk area must be positive, got %.6g m^2", disk_area_each_m2));
    }
    if (!(rho_kg_m3 > 0.0)) {
        throw ValidationError(
            detail::strfmt("air density must be positive, got %.6g kg/m^3", rho_kg_m3));
    }
    // Grouped as (2*rho)*(n*A) so n disks of area A and one disk of area n*A
    // evaluate bit-identically.
    const double denom = (2.0 * rho_kg_m3) * (static_cast<double>(rotor_count) * disk_area_each_m2);
    return total_lift_n * std::sqrt(total_lift_n / denom);
}

double calibrate_solidity(const RotorGeometry& geom, const AeroConstants& consts,
                          double omega_rad_s, double pitch_ref_rad, double thrust_ref_n,
                          InflowVariant variant) {
    consts.validate();
    RotorGeometry g = geom;
    g.solidity = 0.15;  // placeholder; the stored solidity is what we solve for
    g.validate();
    check_omega(omega_rad_s);
    check_finite_pitch(pitch_ref_rad);
    if (!(pitch_ref_rad > 0.0)) {
        throw ValidationError(
            detail::strfmt("anchor pitch must be positive, got %.6g rad", pitch_ref_rad));
    }
    check_envelope(g, pitch_ref_rad);
    if (!(thrust_ref_n > 0.0)) {
        throw ValidationError(
            detail::strfmt("anchor thrust must be positive, got %.6g N", thrust_ref_n));
    }

    const double fs = force_scale(g, consts, omega_rad_s);
    const auto thrust_at = [&](double sigma) {
        g.solidity = sigma;
        return solve_nd(g, consts, pitch_ref_rad, variant).ct * fs;
    };

    double lo = 1e-12;
    double hi = 0.3;
    if (thrust_at(hi) < thrust_ref_n - kInvertTol) {
        throw NoSolutionError(detail::strfmt(
            "no solidity below 0.3 reaches %.6g N at the anchor point", thrust_ref_n));
    }

    for (int i = 0; i < kInvertMaxIter; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double t = thrust_at(mid);
        if (std::abs(t - thrust_ref_n) <= kInvertTol) return mid;
        if (t < thrust_ref_n) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    throw ConvergenceError(detail::strfmt(
        "solidity calibration against %.6g N did not converge in %d bisection steps", thrust_ref_n,
        kInvertMaxIter));
}

}  // namespace vpq::aero
