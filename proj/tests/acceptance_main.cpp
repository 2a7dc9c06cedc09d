// Acceptance gate: one check per release criterion, one PASS/FAIL line each.
// Exit status is the number of failed criteria, so `vpq_acceptance && ...`
// composes in scripts. Each check is independent; a thrown exception fails
// only its own criterion.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "vpq/aero.hpp"
#include "vpq/control.hpp"
#include "vpq/io.hpp"
#include "vpq/sim.hpp"
#include "vpq/sizing.hpp"

using namespace vpq;

namespace {

int g_failures = 0;

void report(int index, const char* label, bool ok, const std::string& detail) {
    if (ok) {
        std::printf("PASS %d %s (%s)\n", index, label, detail.c_str());
    } else {
        std::printf("FAIL %d %s: %s\n", index, label, detail.c_str());
        ++g_failures;
    }
}

void run(int index, const char* label, const std::function<std::pair<bool, std::string>()>& fn) {
    try {
        const auto [ok, detail] = fn();
        report(index, label, ok, detail);
    } catch (const std::exception& e) {
        report(index, label, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(const char* spec, ...) {
    char buf[512];
    va_list args;
    va_start(args, spec);
    std::vsnprintf(buf, sizeof(buf), spec, args);
    va_end(args);
    return buf;
}

aero::RotorGeometry bench_rotor(double solidity) {
    aero::RotorGeometry rotor;
    rotor.radius_m = 0.4;
    rotor.blade_count = 2;
    rotor.solidity = solidity;
    rotor.pitch_min_rad = deg_to_rad(-14.0);
    rotor.pitch_max_rad = deg_to_rad(14.0);
    return rotor;
}

const aero::AeroConstants kConstants{};  // bench defaults
const double kOmega = rpm_to_rad_s(2500.0);

double calibrated_solidity() {
    return aero::calibrate_solidity(bench_rotor(0.1), kConstants, kOmega, deg_to_rad(14.0),
                                    39.0);
}

}  // namespace

int main() {
    run(1, "pd gain synthesis", [] {
        control::AxisSpec rp{0.43, 0.8, 7.0};
        control::AxisSpec yaw{0.67, 0.8, 7.0};
        const auto g1 = control::synthesize_pd(rp);
        const auto g2 = control::synthesize_pd(yaw);
        const bool ok = std::abs(g1.kp - 21.1) <= 0.05 && std::abs(g1.kd - 4.8) <= 0.05 &&
                        std::abs(g2.kp - 32.8) <= 0.05 && std::abs(g2.kd - 7.5) <= 0.05;
        return std::make_pair(ok, fmt("kp/kd = %.3f/%.3f and %.3f/%.3f vs 21.1/4.8 and 32.8/7.5",
                                      g1.kp, g1.kd, g2.kp, g2.kd));
    });

    run(2, "fuel endurance estimate", [] {
        sizing::FuelSpec fuel;
        fuel.tank_volume_l = 2.5;
        fuel.fuel_density_g_per_l = 770.0;
        const double hours = sizing::endurance(fuel, 554.0, 1000.0, 0.8);
        return std::make_pair(std::abs(hours - 2.78) <= 0.02,
                              fmt("%.4f h vs 2.78 +/- 0.02", hours));
    });

    run(3, "rotor excitation frequency", [] {
        const double hz = sizing::excitation_frequency(2500.0, 2);
        const double rounded = std::round(hz * 100.0) / 100.0;
        return std::make_pair(rounded == 83.33, fmt("%.6f Hz rounds to %.2f vs 83.33", hz,
                                                    rounded));
    });

    run(4, "calibrated lift and drive requirement", [] {
        const auto rotor = bench_rotor(calibrated_solidity());
        const double lift = sizing::max_total_lift(rotor, kConstants, kOmega, 4);
        const auto drive = sizing::required_power_torque(rotor, kConstants, kOmega, 4, 1.0);
        const bool ok = lift >= 141.0 && lift <= 173.0 && drive.power_w >= 0.6 * 1300.0 &&
                        drive.power_w <= 1.4 * 1300.0 && drive.torque_nm >= 0.6 * 5.2 &&
                        drive.torque_nm <= 1.4 * 5.2;
        return std::make_pair(
            ok, fmt("lift %.1f N in [141, 173]; %.0f W vs 1300 +/- 40%%; %.2f Nm vs 5.2 +/- 40%%",
                    lift, drive.power_w, drive.torque_nm));
    });

    run(5, "hover pitch bands", [] {
        const auto rotor = bench_rotor(calibrated_solidity());
        const double p10 = rad_to_deg(
            aero::pitch_for_thrust(rotor, kConstants, kOmega, 10.0 * sizing::kGravity / 4.0));
        const double p63 = rad_to_deg(
            aero::pitch_for_thrust(rotor, kConstants, kOmega, 6.3 * sizing::kGravity / 4.0));
        const bool ok = p10 >= 7.5 && p10 <= 10.0 && p63 >= 6.0 && p63 <= 7.5;
        return std::make_pair(ok, fmt("10 kg hover at %.3f deg in [7.5, 10]; "
                                      "6.3 kg at %.3f deg in [6, 7.5]",
                                      p10, p63));
    });

    run(6, "takeoff weight limit", [] {
        const double mtow = sizing::max_takeoff_weight(156.96, 0.5);
        return std::make_pair(std::abs(mtow - 10.67) <= 0.005,
                              fmt("%.4f kg vs 10.67 +/- 0.005", mtow));
    });

    run(7, "analytic identity suite", [] {
        // Momentum balance on a 100-point grid.
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const auto rotor = bench_rotor(0.02 + 0.01 * i);
            for (int j = 0; j < 10; ++j) {
                aero::RotorOperatingPoint op;
                op.omega_rad_s = kOmega;
                op.pitch_rad = 0.024 + 0.024 * j;
                const auto sol = aero::solve_rotor(rotor, kConstants, op,
                                                   aero::InflowVariant::MomentumConsistent);
                worst = std::max(worst, std::abs(sol.inflow - std::sqrt(sol.ct / 2.0)));
            }
        }
        if (worst > 1e-9) {
            return std::make_pair(false, fmt("momentum residual %.3g > 1e-9", worst));
        }

        // Splitting a rotor disk across n rotors leaves the ideal power bitwise
        // unchanged, and torque is power over speed by construction.
        const double area = bench_rotor(0.039).disk_area_m2();
        if (aero::ideal_hover_power(98.1, 4, area, kConstants.rho_kg_m3) !=
            aero::ideal_hover_power(98.1, 1, 4.0 * area, kConstants.rho_kg_m3)) {
            return std::make_pair(false, std::string("multirotor ideal power split differs"));
        }
        const auto rotor = bench_rotor(0.039);
        for (double theta : {0.05, 0.12, 0.2, 0.24}) {
            aero::RotorOperatingPoint op;
            op.omega_rad_s = kOmega;
            op.pitch_rad = theta;
            const auto sol = aero::solve_rotor(rotor, kConstants, op);
            if (sol.torque_nm != sol.power_w / op.omega_rad_s) {
                return std::make_pair(false, fmt("torque != power/omega at theta %.2f", theta));
            }
        }

        // Gains land exactly on the target characteristic polynomial
        // s^2 + 2 zeta wn s + wn^2 scaled by the inertia.
        std::mt19937 rng(17);
        std::uniform_real_distribution<double> inertia(0.05, 2.0);
        std::uniform_real_distribution<double> zeta(0.3, 1.2);
        std::uniform_real_distribution<double> wn(1.0, 20.0);
        for (int i = 0; i < 20; ++i) {
            control::AxisSpec spec{inertia(rng), zeta(rng), wn(rng)};
            const auto g = control::synthesize_pd(spec);
            const double kp_target =
                spec.moment_of_inertia * spec.natural_frequency * spec.natural_frequency;
            const double kd_target =
                2.0 * spec.damping_ratio * spec.natural_frequency * spec.moment_of_inertia;
            if (g.kp != kp_target || g.kd != kd_target) {
                return std::make_pair(false, std::string("pd coefficients off polynomial"));
            }
        }
        return std::make_pair(true, fmt("momentum residual %.2g; split, torque and "
                                        "polynomial identities exact",
                                        worst));
    });

    run(8, "inverse solver round trips", [] {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> sigma(0.02, 0.12);
        std::uniform_real_distribution<double> speed(150.0, 350.0);
        std::uniform_real_distribution<double> pitch(0.01, 0.24);
        double worst = 0.0;
        for (int i = 0; i < 25; ++i) {
            const auto rotor = bench_rotor(sigma(rng));
            const double omega = speed(rng);
            const double theta_true = pitch(rng);
            aero::RotorOperatingPoint op;
            op.omega_rad_s = omega;
            op.pitch_rad = theta_true;
            const double target = aero::solve_rotor(rotor, kConstants, op).thrust_n;
            const double theta = aero::pitch_for_thrust(rotor, kConstants, omega, target);
            op.pitch_rad = theta;
            worst = std::max(worst,
                             std::abs(aero::solve_rotor(rotor, kConstants, op).thrust_n -
                                      target));
        }

        std::mt19937 rng2(11);
        std::uniform_real_distribution<double> sigma2(0.02, 0.25);
        std::uniform_real_distribution<double> pitch2(0.05, 0.24);
        for (int i = 0; i < 25; ++i) {
            const double sigma_true = sigma2(rng2);
            const double theta_ref = pitch2(rng2);
            const auto truth = bench_rotor(sigma_true);
            aero::RotorOperatingPoint op;
            op.omega_rad_s = kOmega;
            op.pitch_rad = theta_ref;
            const double anchor = aero::solve_rotor(truth, kConstants, op).thrust_n;
            const double sigma_hat = aero::calibrate_solidity(bench_rotor(0.1), kConstants,
                                                              kOmega, theta_ref, anchor);
            const auto fitted = bench_rotor(sigma_hat);
            worst = std::max(worst,
                             std::abs(aero::solve_rotor(fitted, kConstants, op).thrust_n -
                                      anchor));
        }
        return std::make_pair(worst <= 1e-6,
                              fmt("worst forward residual %.3g over 50 cases vs 1e-6", worst));
    });

    run(9, "closed-loop simulator properties", [] {
        const auto t0 = std::chrono::steady_clock::now();
        const auto model =
            io::build_vehicle_model(io::load_vehicle(std::string(VPQ_DATA_DIR) +
                                                     "/vehicle.json"));
        std::string detail;

        // Hover drift over 10 s.
        sim::Scenario hover;
        hover.duration_s = 10.0;
        hover.dt_s = 1e-3;
        hover.initial_state.rotor_speed_rad_s = model.governor.omega_ref_rad_s;
        sim::ReferenceSegment seg;
        seg.collective_thrust_n = 98.1;
        hover.segments.push_back(seg);
        double drift = 0.0;
        for (const auto& r : sim::run_scenario(model, hover)) {
            drift = std::max({drift, std::abs(r.roll_rad), std::abs(r.pitch_rad),
                              std::abs(r.yaw_rad)});
        }
        if (drift >= 1e-6) return std::make_pair(false, fmt("hover drift %.3g rad", drift));

        // Richardson order study on the open-loop integrator.
        const double h0 = model.mixer.hover_pitch_rad;
        const std::array<double, 4> pitches{h0 + 0.03, h0 - 0.05, h0 + 0.01, h0 - 0.02};
        sim::SimState start;
        start.attitude = quat_from_euler(0.05, -0.03, 0.02);
        start.body_rates = {1.5, -1.2, 2.0};
        start.rotor_speed_rad_s = 0.8 * model.governor.omega_ref_rad_s;
        const double horizon = 0.256;
        const auto integrate = [&](double dt) {
            sim::SimState s = start;
            const int steps = static_cast<int>(std::llround(horizon / dt));
            for (int i = 0; i < steps; ++i) s = sim::step_rk4(model, s, pitches, dt);
            return s;
        };
        const auto dist = [](const sim::SimState& a, const sim::SimState& b) {
            const double dq = std::sqrt(
                (a.attitude.w - b.attitude.w) * (a.attitude.w - b.attitude.w) +
                (a.attitude.x - b.attitude.x) * (a.attitude.x - b.attitude.x) +
                (a.attitude.y - b.attitude.y) * (a.attitude.y - b.attitude.y) +
                (a.attitude.z - b.attitude.z) * (a.attitude.z - b.attitude.z));
            return dq + (a.body_rates - b.body_rates).norm() +
                   std::abs(a.vertical_velocity_mps - b.vertical_velocity_mps);
        };
        const sim::SimState ref = integrate(horizon / 2048.0);
        const double e8 = dist(integrate(8e-3), ref);
        const double e4 = dist(integrate(4e-3), ref);
        const double e2 = dist(integrate(2e-3), ref);
        const double order_a = std::log2(e8 / e4);
        const double order_b = std::log2(e4 / e2);
        if (order_a < 3.7 || order_a > 4.3 || order_b < 3.7 || order_b > 4.3) {
            return std::make_pair(false, fmt("convergence orders %.2f / %.2f outside [3.7, 4.3]",
                                             order_a, order_b));
        }

        // Torque-free spin conserves kinetic energy.
        sim::SimState s;
        s.body_rates = {0.3, -0.2, 0.4};
        s.rotor_speed_rad_s = model.governor.omega_ref_rad_s;
        const std::array<double, 4> zero_pitch{0.0, 0.0, 0.0, 0.0};
        const auto energy = [&](const sim::SimState& st) {
            return 0.5 * (model.inertia_diag.x * st.body_rates.x * st.body_rates.x +
                          model.inertia_diag.y * st.body_rates.y * st.body_rates.y +
                          model.inertia_diag.z * st.body_rates.z * st.body_rates.z);
        };
        const double e0 = energy(s);
        double energy_drift = 0.0;
        for (int i = 0; i < 5000; ++i) {
            s = sim::step_rk4(model, s, zero_pitch, 1e-3);
            energy_drift = std::max(energy_drift, std::abs(energy(s) - e0) / e0);
        }
        if (energy_drift >= 1e-6) {
            return std::make_pair(false, fmt("energy drift %.3g relative", energy_drift));
        }

        // 5 degree roll step against the analytic 1.52% / 0.71 s design point.
        const auto step_sc = io::load_scenario(std::string(VPQ_DATA_DIR) +
                                                   "/scenario_roll_step.json",
                                               model.governor.omega_ref_rad_s);
        const auto log = sim::run_scenario(model, step_sc);
        const auto metrics = sim::step_metrics(log, sim::Channel::Roll, 1.0, deg_to_rad(5.0));
        if (metrics.overshoot_fraction > 0.05) {
            return std::make_pair(false,
                                  fmt("overshoot %.4f > 0.05", metrics.overshoot_fraction));
        }
        if (metrics.settling_time_2pct_s < 0.5 || metrics.settling_time_2pct_s > 0.95) {
            return std::make_pair(
                false, fmt("settling %.3f s outside [0.5, 0.95]", metrics.settling_time_2pct_s));
        }

        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (elapsed >= 30.0) {
            return std::make_pair(false, fmt("suite took %.1f s, budget 30 s", elapsed));
        }
        return std::make_pair(true, fmt("drift %.2g rad; orders %.2f/%.2f; energy %.2g; "
                                        "overshoot %.4f; settling %.3f s; %.1f s wall",
                                        drift, order_a, order_b, energy_drift,
                                        metrics.overshoot_fraction,
                                        metrics.settling_time_2pct_s, elapsed));
    });

    if (g_failures == 0) {
        std::printf("all acceptance checks passed\n");
    } else {
        std::printf("%d acceptance check(s) failed\n", g_failures);
    }
    return g_failures;
}
