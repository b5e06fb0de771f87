#pragma once

#include <optional>

#include "so3mes/qmath.hpp"

namespace so3mes {

struct Vec3 {
    double x{0.0}, y{0.0}, z{0.0};

    double norm() const;
    friend Vec3 operator-(const Vec3& v) { return {-v.x, -v.y, -v.z}; }
    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
};

inline constexpr Vec3 kDefaultAxis{0.0, 0.0, 1.0};

/// Maximally entangled state (alpha|00> + beta|01> - beta*|10> + alpha*|11>)/sqrt(2),
/// equivalently the SU(2) element [[alpha, beta], [-beta*, alpha*]].
struct MesState {
    cplx alpha{1.0};
    cplx beta{0.0};

    bool is_valid(double tol = kAlgebraTol) const;
    C2Matrix matrix() const;
    friend MesState operator-(const MesState& m) { return {-m.alpha, -m.beta}; }
};

/// Reads (alpha, beta) off the first row of an SU(2) matrix. The matrix must
/// have the [[a, b], [-b*, a*]] form within tol (InvalidOperator otherwise).
MesState mes_from_matrix(const C2Matrix& m, double tol = 1e-9);

double max_entry_diff(const MesState& a, const MesState& b);

/// Point a*k of the radius-pi ball together with the sign that tells the two
/// SU(2) preimages of the rotation apart.
struct BallPoint {
    Vec3 axis{kDefaultAxis};
    double angle{0.0};
    int sheet{1};

    Vec3 position() const { return angle * axis; }
};

TwoQubitState to_two_qubit(const MesState& m);

/// Inverse of to_two_qubit. Fails with NotMaximallyEntangled unless
/// c11 = c00* and c10 = -c01* (and the norm is one) within 1e-9.
MesState from_two_qubit(const TwoQubitState& s);

/// alpha = cos(a/2) - i kz sin(a/2), beta = -(ky + i kx) sin(a/2).
MesState su2_from_axis_angle(const Vec3& axis, double angle);

/// Projects an SU(2) element into the ball. Raw angles above pi are folded
/// through D(k, pi + a) = -D(-k, pi - a) and reported on sheet -1. At the
/// identity (sin(a/2) < 1e-9) the axis is undefined; `fallback_axis` is used
/// when given, else (0, 0, 1).
BallPoint axis_angle_from_su2(const MesState& m, std::optional<Vec3> fallback_axis = std::nullopt);

/// True iff D(k, pi + a) = -D(-k, pi - a) entrywise within 1e-12.
bool double_value_check(const Vec3& axis, double angle);

}  // namespace so3mes
