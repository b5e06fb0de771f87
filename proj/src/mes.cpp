#include "so3mes/mes.hpp"

#include <algorithm>
#include <cmath>

#include "so3mes/error.hpp"

namespace so3mes {

namespace {

constexpr double kFormTol = 1e-9;
constexpr double kDegenerateSinHalf = 1e-9;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

bool MesState::is_valid(double tol) const {
    return std::abs(std::norm(alpha) + std::norm(beta) - 1.0) <= tol;
}

C2Matrix MesState::matrix() const { return {alpha, beta, -std::conj(beta), std::conj(alpha)}; }

MesState mes_from_matrix(const C2Matrix& m, double tol) {
    const bool form = std::abs(m.m11 - std::conj(m.m00)) <= tol &&
                      std::abs(m.m10 + std::conj(m.m01)) <= tol;
    MesState out{m.m00, m.m01};
    if (!form || !out.is_valid(tol)) {
        throw Error(ErrorCode::InvalidOperator, "matrix is not an SU(2) element");
    }
    return out;
}

double max_entry_diff(const MesState& a, const MesState& b) {
    return std::max(std::abs(a.alpha - b.alpha), std::abs(a.beta - b.beta));
}

TwoQubitState to_two_qubit(const MesState& m) {
    return TwoQubitState{{kInvSqrt2 * m.alpha, kInvSqrt2 * m.beta, -kInvSqrt2 * std::conj(m.beta),
                          kInvSqrt2 * std::conj(m.alpha)}};
}

MesState from_two_qubit(const TwoQubitState& s) {
    const bool form = std::abs(s[3] - std::conj(s[0])) <= kFormTol &&
                      std::abs(s[2] + std::conj(s[1])) <= kFormTol;
    if (!form || !s.is_normalized(kFormTol)) {
        throw Error(ErrorCode::NotMaximallyEntangled,
                    "state does not have the (a, b, -b*, a*)/sqrt(2) form");
    }
    const double r2 = std::sqrt(2.0);
    return {r2 * s[0], r2 * s[1]};
}

MesState su2_from_axis_angle(const Vec3& axis, double angle) {
    if (std::abs(axis.norm() - 1.0) > kAlgebraTol) {
        throw Error(ErrorCode::InvalidAxis, "rotation axis must be a unit vector");
    }
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    return {cplx(c, -axis.z * s), cplx(-axis.y * s, -axis.x * s)};
}

BallPoint axis_angle_from_su2(const MesState& m, std::optional<Vec3> fallback_axis) {
    const double cos_half = m.alpha.real();
    const double sin_half = std::sqrt(m.alpha.imag() * m.alpha.imag() + std::norm(m.beta));
    const double raw_angle = 2.0 * std::atan2(sin_half, cos_half);  // [0, 2pi]

    BallPoint p;
    const bool degenerate = sin_half < kDegenerateSinHalf;
    Vec3 raw_axis = fallback_axis.value_or(kDefaultAxis);
    if (!degenerate) {
        raw_axis = {-m.beta.imag() / sin_half, -m.beta.real() / sin_half, -m.alpha.imag() / sin_half};
    }
    if (raw_angle <= kPi) {
        p.axis = raw_axis;
        p.angle = raw_angle;
        p.sheet = 1;
    } else {
        // Degenerate axes are reported as-is; only a defined axis is mirrored.
        p.axis = degenerate ? raw_axis : -raw_axis;
        p.angle = 2.0 * kPi - raw_angle;
        p.sheet = -1;
    }
    return p;
}

bool double_value_check(const Vec3& axis, double angle) {
    const MesState lhs = su2_from_axis_angle(axis, kPi + angle);
    const MesState rhs = -su2_from_axis_angle(-axis, kPi - angle);
    return max_entry_diff(lhs, rhs) <= kAlgebraTol;
}

}  // namespace so3mes
