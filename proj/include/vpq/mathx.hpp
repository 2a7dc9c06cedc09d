#pragma once

// Small fixed-size linear algebra used by the controller and simulator:
// 3-vectors, unit quaternions (body-to-world, w-first), and a 4x4 solver
// for the control-allocation jacobian.

#include <array>
#include <cmath>

#include "vpq/errors.hpp"

namespace vpq {

inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }
inline double rpm_to_rad_s(double rpm) { return rpm * 2.0 * kPi / 60.0; }
inline double rad_s_to_rpm(double w) { return w * 60.0 / (2.0 * kPi); }

// Wraps an angle to (-pi, pi].
inline double wrap_pi(double angle) {
    double a = std::fmod(angle + kPi, 2.0 * kPi);
    if (a <= 0.0) a += 2.0 * kPi;
    return a - kPi;
}

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// Unit quaternion, scalar-first, rotating body-frame vectors into the world frame.
struct Quat {
    double w = 1.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

    Quat normalized() const {
        const double n = norm();
        return {w / n, x / n, y / n, z / n};
    }

    Quat operator*(const Quat& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }

    // World-frame z component of the body z axis (cosine of the tilt angle).
    double body_z_world_z() const { return 1.0 - 2.0 * (x * x + y * y); }
};

// Quaternion kinematics: qdot = 1/2 q * (0, body_rates).
inline Quat quat_derivative(const Quat& q, const Vec3& body_rates) {
    const Quat omega{0.0, body_rates.x, body_rates.y, body_rates.z};
    Quat d = q * omega;
    return {0.5 * d.w, 0.5 * d.x, 0.5 * d.y, 0.5 * d.z};
}

// Yaw-pitch-roll (ZYX) composition and extraction.
inline Quat quat_from_euler(double roll, double pitch, double yaw) {
    const double cr = std::cos(roll * 0.5), sr = std::sin(roll * 0.5);
    const double cp = std::cos(pitch * 0.5), sp = std::sin(pitch * 0.5);
    const double cy = std::cos(yaw * 0.5), sy = std::sin(yaw * 0.5);
    return {cr * cp * cy + sr * sp * sy,
            sr * cp * cy - cr * sp * sy,
            cr * sp * cy + sr * cp * sy,
            cr * cp * sy - sr * sp * cy};
}

struct EulerAngles {
    double roll = 0.0;
    double pitch = 0.0;
    double yaw = 0.0;
};

inline EulerAngles quat_to_euler(const Quat& q) {
    EulerAngles e;
    e.roll = std::atan2(2.0 * (q.w * q.x + q.y * q.z), 1.0 - 2.0 * (q.x * q.x + q.y * q.y));
    double s = 2.0 * (q.w * q.y - q.z * q.x);
    s = std::fmax(-1.0, std::fmin(1.0, s));
    e.pitch = std::asin(s);
    e.yaw = std::atan2(2.0 * (q.w * q.z + q.x * q.y), 1.0 - 2.0 * (q.y * q.y + q.z * q.z));
    return e;
}

struct Mat4 {
    // Row-major.
    std::array<std::array<double, 4>, 4> m{};

    std::array<double, 4>& operator[](int r) { return m[r]; }
    const std::array<double, 4>& operator[](int r) const { return m[r]; }

    std::array<double, 4> mul(const std::array<double, 4>& v) const {
        std::array<double, 4> r{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r[i] += m[i][j] * v[j];
        return r;
    }

    double norm_1() const {
        double best = 0.0;
        for (int j = 0; j < 4; ++j) {
            double col = 0.0;
            for (int i = 0; i < 4; ++i) col += std::fabs(m[i][j]);
            best = std::fmax(best, col);
        }
        return best;
    }
};

// Gauss-Jordan inverse with partial pivoting. Throws SingularJacobianError on
// a vanishing pivot.
inline Mat4 inverse(const Mat4& in) {
    std::array<std::array<double, 8>, 4> aug{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) aug[i][j] = in[i][j];
        aug[i][4 + i] = 1.0;
    }
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::fabs(aug[r][col]) > std::fabs(aug[pivot][col])) pivot = r;
        if (std::fabs(aug[pivot][col]) < 1e-300)
            throw SingularJacobianError("4x4 matrix is singular");
        std::swap(aug[col], aug[pivot]);
        const double inv_p = 1.0 / aug[col][col];
        for (int j = 0; j < 8; ++j) aug[col][j] *= inv_p;
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = aug[r][col];
            if (f == 0.0) continue;
            for (int j = 0; j < 8; ++j) aug[r][j] -= f * aug[col][j];
        }
    }
    Mat4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = aug[i][4 + j];
    return out;
}

inline double condition_1(const Mat4& a, const Mat4& a_inv) {
    return a.norm_1() * a_inv.norm_1();
}

}  // namespace vpq
