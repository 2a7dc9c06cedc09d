#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "vpq/control.hpp"
#include "vpq/io.hpp"

using namespace vpq;
using nlohmann::json;

namespace {

constexpr double kSigmaCal = 0.0389080145858;

bool near_abs(double a, double b, double tol) { return std::abs(a - b) <= tol; }
bool near_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

std::filesystem::path write_temp(const std::string& contents, const char* tag) {
    static int counter = 0;
    const auto path = std::filesystem::temp_directory_path() /
                      (std::string("vpq_io_test_") + tag + "_" + std::to_string(counter++) +
                       ".json");
    std::ofstream out(path);
    out << contents;
    out.close();
    return path;
}

json stock_vehicle_doc() {
    std::ifstream in(VPQ_DATA_DIR "/vehicle.json");
    json doc;
    in >> doc;
    return doc;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

std::string what_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("stock vehicle file loads and resolves the calibration anchor") {
    const auto cfg = io::load_vehicle(VPQ_DATA_DIR "/vehicle.json");

    CHECK(near_abs(cfg.rotor.solidity, kSigmaCal, 1e-7));
    CHECK(cfg.rotor.radius_m == 0.4);
    CHECK(cfg.rotor.blade_count == 2);
    CHECK(near_rel(cfg.rotor.pitch_max_rad, deg_to_rad(14.0), 1e-15));
    CHECK(near_rel(cfg.rotor.pitch_min_rad, deg_to_rad(-14.0), 1e-15));

    CHECK(cfg.aero_constants.lift_slope == 5.7);
    CHECK(cfg.aero_constants.kappa == 1.6);
    CHECK(cfg.aero_constants.rho_kg_m3 == 1.18);

    CHECK(cfg.mass_kg == 10.0);
    CHECK(cfg.declared_mtow_kg == 10.67);
    CHECK(cfg.rotor_count == 4);
    CHECK(cfg.arm_length_m == 0.6);
    CHECK(cfg.inertia_diag.x == 0.43);
    CHECK(cfg.inertia_diag.y == 0.43);
    CHECK(cfg.inertia_diag.z == 0.67);
    CHECK(cfg.eta_transmission == 0.8);

    CHECK(cfg.damping_ratio_zeta == 0.8);
    CHECK(cfg.natural_frequency_wn == 7.0);
    CHECK(cfg.governor_rpm == 2500.0);
    CHECK(cfg.governor_tau_s == 0.5);
    CHECK(cfg.governor_omega_rad_s() == rpm_to_rad_s(2500.0));

    CHECK(cfg.fuel.tank_volume_l == 2.5);
    CHECK(cfg.fuel.fuel_density_g_per_l == 770.0);
}

TEST_CASE("explicit solidity is honored and an anchor wins over it") {
    json doc = stock_vehicle_doc();
    doc["rotor"].erase("calibration");
    doc["rotor"]["solidity"] = 0.039;
    const auto p1 = write_temp(doc.dump(), "solidity");
    const auto cfg1 = io::load_vehicle(p1.string());
    CHECK(cfg1.rotor.solidity == 0.039);

    // Both present: the measured anchor overrides the nominal number.
    doc["rotor"]["solidity"] = 0.25;
    doc["rotor"]["calibration"] = {{"theta_deg", 14.0}, {"thrust_n", 39.0}};
    const auto p2 = write_temp(doc.dump(), "both");
    const auto cfg2 = io::load_vehicle(p2.string());
    CHECK(near_abs(cfg2.rotor.solidity, kSigmaCal, 1e-7));

    std::filesystem::remove(p1);
    std::filesystem::remove(p2);
}

TEST_CASE("missing or mistyped vehicle keys are reported by name") {
    struct Case {
        const char* label;
        std::function<void(json&)> mutate;
        const char* expect;
    };
    const std::vector<Case> cases = {
        {"kappa", [](json& d) { d["aero"].erase("kappa"); }, "kappa"},
        {"radius", [](json& d) { d["rotor"].erase("radius_m"); }, "radius_m"},
        {"limits", [](json& d) { d["rotor"].erase("pitch_limits_deg"); }, "pitch_limits_deg"},
        {"governor", [](json& d) { d["control"].erase("governor_rpm"); }, "governor_rpm"},
        {"izz", [](json& d) { d["vehicle"]["inertia"].erase("Izz"); }, "Izz"},
        {"tank", [](json& d) { d["fuel"].erase("tank_l"); }, "tank_l"},
        {"sigma", [](json& d) { d["rotor"].erase("calibration"); }, "solidity"},
        {"rho_type", [](json& d) { d["aero"]["rho"] = "thick"; }, "must be a number"},
        {"limits_shape", [](json& d) { d["rotor"]["pitch_limits_deg"] = {-14.0}; },
         "pitch_limits_deg"},
    };
    for (const auto& c : cases) {
        CAPTURE(c.label);
        json doc = stock_vehicle_doc();
        c.mutate(doc);
        const auto path = write_temp(doc.dump(), c.label);
        CHECK_THROWS_AS(io::load_vehicle(path.string()), ValidationError);
        const std::string msg = what_of([&] { io::load_vehicle(path.string()); });
        CHECK(msg.find(c.expect) != std::string::npos);
        std::filesystem::remove(path);
    }
}

TEST_CASE("malformed and absent files fail as validation errors") {
    const auto truncated = write_temp("{ \"aero\": ", "truncated");
    CHECK_THROWS_AS(io::load_vehicle(truncated.string()), ValidationError);
    std::filesystem::remove(truncated);

    const std::string ghost = "/nonexistent/vpq_no_such_file.json";
    CHECK_THROWS_AS(io::load_vehicle(ghost), ValidationError);
    const std::string msg = what_of([&] { io::load_vehicle(ghost); });
    CHECK(msg.find("cannot open") != std::string::npos);
}

TEST_CASE("engine catalog loads and rejects bad records") {
    const auto catalog = io::load_engines(VPQ_DATA_DIR "/engines.json");
    REQUIRE(catalog.size() == 3);
    CHECK(catalog[0].name == "Zenoah 231RC");
    CHECK(catalog[1].name == "Zenoah 270RC");
    CHECK(catalog[2].name == "Zenoah 320RC");
    CHECK(catalog[1].max_power_w == 1800.0);
    CHECK(catalog[1].max_torque_nm == 6.9);
    CHECK(catalog[1].bsfc_g_per_kwh == 554.0);
    CHECK(catalog[1].displacement_cc == 25.4);

    const auto not_array = write_temp("{\"name\": \"solo\"}", "engines_obj");
    CHECK_THROWS_AS(io::load_engines(not_array.string()), ValidationError);
    std::filesystem::remove(not_array);

    const auto missing = write_temp(
        R"([{"name":"x","displacement_cc":20,"max_power_w":1000,
             "bsfc_g_per_kwh":500,"rpm_min":1000,"rpm_max":8000}])",
        "engines_missing");
    const std::string msg = what_of([&] { io::load_engines(missing.string()); });
    CHECK(msg.find("max_torque_nm") != std::string::npos);
    std::filesystem::remove(missing);
}

TEST_CASE("modes file loads and rejects bad records") {
    const auto modes = io::load_modes(VPQ_DATA_DIR "/modes.json");
    REQUIRE(modes.size() == 2);
    CHECK(modes[0].mode_name == "boom_vertical_bending");
    CHECK(modes[0].frequency_hz == 45.3);
    CHECK(modes[0].activatable_by_contrarotation);
    CHECK(modes[1].mode_name == "boom_lateral_bending");
    CHECK(modes[1].frequency_hz == 42.3);
    CHECK_FALSE(modes[1].activatable_by_contrarotation);

    const auto bad_flag = write_temp(
        R"([{"mode_name":"m","frequency_hz":30.0,"activatable":1}])", "modes_flag");
    const std::string msg1 = what_of([&] { io::load_modes(bad_flag.string()); });
    CHECK(msg1.find("must be a boolean") != std::string::npos);
    std::filesystem::remove(bad_flag);

    const auto bad_freq = write_temp(
        R"([{"mode_name":"m","frequency_hz":-3.0,"activatable":true}])", "modes_freq");
    const std::string msg2 = what_of([&] { io::load_modes(bad_freq.string()); });
    CHECK(msg2.find("frequency must be positive") != std::string::npos);
    std::filesystem::remove(bad_freq);
}

TEST_CASE("scenario loader populates segments, overrides and disturbances") {
    const double omega_ref = rpm_to_rad_s(2500.0);

    const auto hover = io::load_scenario(VPQ_DATA_DIR "/scenario_hover.json", omega_ref);
    CHECK(hover.duration_s == 10.0);
    CHECK(hover.dt_s == 0.001);
    REQUIRE(hover.segments.size() == 1);
    CHECK(hover.segments[0].collective_thrust_n == 98.1);
    CHECK(hover.initial_state.rotor_speed_rad_s == omega_ref);

    const auto roll = io::load_scenario(VPQ_DATA_DIR "/scenario_roll_step.json", omega_ref);
    REQUIRE(roll.segments.size() == 2);
    CHECK(roll.segments[1].start_time_s == 1.0);
    CHECK(near_rel(roll.segments[1].roll_ref_rad, deg_to_rad(5.0), 1e-15));

    // An initial block with rotor_rpm beats the caller's default.
    const auto spun = write_temp(R"({
        "duration_s": 1.0, "dt_s": 0.001,
        "initial": {"rotor_rpm": 2000, "altitude_m": 5.0},
        "segments": [{"start_s": 0, "roll_deg": 0, "pitch_deg": 0, "yaw_deg": 0,
                      "thrust_n": 98.1}],
        "disturbances": [{"time_s": 0.5, "axis": "pitch", "impulse_nms": 0.1}]
    })",
                                 "scenario_rpm");
    const auto sc = io::load_scenario(spun.string(), omega_ref);
    CHECK(sc.initial_state.rotor_speed_rad_s == rpm_to_rad_s(2000.0));
    CHECK(sc.initial_state.altitude_m == 5.0);
    REQUIRE(sc.disturbances.size() == 1);
    CHECK(sc.disturbances[0].axis == 1);
    CHECK(sc.disturbances[0].impulse_nms == 0.1);
    std::filesystem::remove(spun);

    const auto bad_axis = write_temp(R"({
        "duration_s": 1.0, "dt_s": 0.001,
        "segments": [{"start_s": 0, "roll_deg": 0, "pitch_deg": 0, "yaw_deg": 0,
                      "thrust_n": 98.1}],
        "disturbances": [{"time_s": 0.5, "axis": "twist", "impulse_nms": 0.1}]
    })",
                                     "scenario_axis");
    const std::string msg = what_of([&] { io::load_scenario(bad_axis.string(), omega_ref); });
    CHECK(msg.find("roll, pitch or yaw") != std::string::npos);
    std::filesystem::remove(bad_axis);

    const auto no_segments =
        write_temp(R"({"duration_s": 1.0, "dt_s": 0.001, "segments": []})", "scenario_empty");
    CHECK_THROWS_AS(io::load_scenario(no_segments.string(), omega_ref), ValidationError);
    std::filesystem::remove(no_segments);

    // Structural checks run before the loader returns.
    const auto bad_dt = write_temp(R"({
        "duration_s": 1.0, "dt_s": 0.0,
        "segments": [{"start_s": 0, "roll_deg": 0, "pitch_deg": 0, "yaw_deg": 0,
                      "thrust_n": 98.1}]
    })",
                                   "scenario_dt");
    CHECK_THROWS_AS(io::load_scenario(bad_dt.string(), omega_ref), ValidationError);
    std::filesystem::remove(bad_dt);
}

TEST_CASE("curves CSV round trip") {
    const auto cfg = io::load_vehicle(VPQ_DATA_DIR "/vehicle.json");
    const auto sweep =
        aero::sweep_curves(cfg.rotor, cfg.aero_constants, cfg.governor_omega_rad_s(),
                           deg_to_rad(-14.0), deg_to_rad(14.0), deg_to_rad(1.0));
    REQUIRE(sweep.size() == 29);

    const auto path = write_temp("", "curves_csv");
    io::write_curves_csv(path.string(), sweep);

    std::ifstream in(path);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "theta_deg,thrust_n,power_w,torque_nm,ct,cp,lambda");

    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (!line.empty()) rows.push_back(split_csv(line));
    }
    REQUIRE(rows.size() == 29);
    for (const auto& row : rows) CHECK(row.size() == 7);

    // Text fields reproduce the in-memory sweep to printed precision.
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(near_rel(std::stod(rows[i][0]) + 1e-30, rad_to_deg(sweep[i].pitch_rad) + 1e-30,
                       1e-8));
        CHECK(near_rel(std::stod(rows[i][1]) + 1e-30, sweep[i].solution.thrust_n + 1e-30, 1e-7));
        CHECK(near_rel(std::stod(rows[i][2]) + 1e-30, sweep[i].solution.power_w + 1e-30, 1e-7));
        CHECK(near_rel(std::stod(rows[i][3]) + 1e-30, sweep[i].solution.torque_nm + 1e-30,
                       1e-7));
    }

    // The calibration anchor is reproduced by the last row (theta = 14 deg).
    CHECK(near_abs(std::stod(rows.back()[1]), 39.0, 1e-4));
    std::filesystem::remove(path);

    CHECK_THROWS_AS(io::write_curves_csv("/nonexistent/vpq_curves.csv", sweep), ValidationError);
    const std::string msg =
        what_of([&] { io::write_curves_csv("/nonexistent/vpq_curves.csv", sweep); });
    CHECK(msg.find("cannot write") != std::string::npos);
}

TEST_CASE("log CSV round trip") {
    const auto model = io::build_vehicle_model(io::load_vehicle(VPQ_DATA_DIR "/vehicle.json"));
    sim::Scenario sc;
    sc.duration_s = 0.2;
    sc.dt_s = 1e-3;
    sc.initial_state.rotor_speed_rad_s = model.governor.omega_ref_rad_s;
    sim::ReferenceSegment seg;
    seg.collective_thrust_n = 98.1;
    sc.segments.push_back(seg);
    const auto log = sim::run_scenario(model, sc);
    REQUIRE(log.size() == 200);

    const auto path = write_temp("", "log_csv");
    io::write_log_csv(path.string(), log);

    std::ifstream in(path);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line ==
          "time_s,roll_rad,pitch_rad,yaw_rad,p_rads,q_rads,r_rads,"
          "theta1_rad,theta2_rad,theta3_rad,theta4_rad,omega_rads,"
          "altitude_m,vz_mps,thrust_total_n,roll_ref_rad,pitch_ref_rad,yaw_ref_rad");

    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (!line.empty()) rows.push_back(split_csv(line));
    }
    REQUIRE(rows.size() == 200);
    for (const auto& row : rows) CHECK(row.size() == 18);

    CHECK(std::stod(rows[0][0]) == 0.0);
    CHECK(near_rel(std::stod(rows[0][11]), model.governor.omega_ref_rad_s, 1e-8));
    CHECK(near_abs(std::stod(rows[100][0]), 0.1, 1e-9));
    CHECK(near_abs(std::stod(rows[150][14]), 98.1, 1e-3));
    std::filesystem::remove(path);
}

TEST_CASE("model assembly wires gains, governor and mixer together") {
    const auto cfg = io::load_vehicle(VPQ_DATA_DIR "/vehicle.json");
    const auto model = io::build_vehicle_model(cfg);

    control::AxisSpec roll;
    roll.moment_of_inertia = cfg.inertia_diag.x;
    roll.damping_ratio = cfg.damping_ratio_zeta;
    roll.natural_frequency = cfg.natural_frequency_wn;
    const auto expect_roll = control::synthesize_pd(roll);
    CHECK(model.gains_roll.kp == expect_roll.kp);
    CHECK(model.gains_roll.kd == expect_roll.kd);

    control::AxisSpec yaw = roll;
    yaw.moment_of_inertia = cfg.inertia_diag.z;
    const auto expect_yaw = control::synthesize_pd(yaw);
    CHECK(model.gains_yaw.kp == expect_yaw.kp);
    CHECK(model.gains_yaw.kd == expect_yaw.kd);

    CHECK(model.governor.omega_ref_rad_s == cfg.governor_omega_rad_s());
    CHECK(model.governor.time_constant_s == cfg.governor_tau_s);

    CHECK(model.mixer.built);
    CHECK(model.mixer.arm_length_m == cfg.arm_length_m);
    CHECK(near_abs(model.mixer.hover_thrust_total_n, 98.1, 1e-4));
    CHECK(model.mixer.pitch_max_rad == cfg.rotor.pitch_max_rad);
    CHECK(model.mass_kg == 10.0);
    CHECK(model.validate().empty());

    auto hexa = cfg;
    hexa.rotor_count = 6;
    CHECK_THROWS_AS(io::build_vehicle_model(hexa), ValidationError);
    const std::string msg = what_of([&] { io::build_vehicle_model(hexa); });
    CHECK(msg.find("4 rotors") != std::string::npos);
}
