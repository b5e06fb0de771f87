#include "so3mes/qmath.hpp"

#include <algorithm>
#include <cmath>

#include "so3mes/error.hpp"

namespace so3mes {

C2Matrix C2Matrix::adjoint() const {
    return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
}

C2Matrix C2Matrix::transpose() const { return {m00, m10, m01, m11}; }

cplx C2Matrix::det() const { return m00 * m11 - m01 * m10; }

cplx C2Matrix::trace() const { return m00 + m11; }

C2Matrix operator*(const C2Matrix& a, const C2Matrix& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

C2Matrix operator*(cplx s, const C2Matrix& a) {
    return {s * a.m00, s * a.m01, s * a.m10, s * a.m11};
}

C2Matrix operator+(const C2Matrix& a, const C2Matrix& b) {
    return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}

C2Matrix operator-(const C2Matrix& a, const C2Matrix& b) {
    return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
}

double max_entry_diff(const C2Matrix& a, const C2Matrix& b) {
    return std::max({std::abs(a.m00 - b.m00), std::abs(a.m01 - b.m01),
                     std::abs(a.m10 - b.m10), std::abs(a.m11 - b.m11)});
}

bool is_special_unitary(const C2Matrix& m, double tol) {
    return max_entry_diff(m * m.adjoint(), C2Matrix::identity()) <= tol &&
           std::abs(m.det() - 1.0) <= tol;
}

C2Matrix sigma_x() { return {0.0, 1.0, 1.0, 0.0}; }
C2Matrix sigma_y() { return {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0}; }
C2Matrix sigma_z() { return C2Matrix::diag(1.0, -1.0); }

double TwoQubitState::norm_squared() const {
    double n = 0.0;
    for (const auto& a : c) n += std::norm(a);
    return n;
}

bool TwoQubitState::is_normalized(double tol) const {
    return std::abs(norm_squared() - 1.0) <= tol;
}

TwoQubitState operator*(cplx s, const TwoQubitState& v) {
    TwoQubitState out;
    for (std::size_t i = 0; i < 4; ++i) out.c[i] = s * v.c[i];
    return out;
}

double max_entry_diff(const TwoQubitState& a, const TwoQubitState& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::abs(a.c[i] - b.c[i]));
    return d;
}

TwoQubitState phi_plus() {
    const double h = 1.0 / std::sqrt(2.0);
    return TwoQubitState{{h, 0.0, 0.0, h}};
}

TwoQubitState apply_local(const C2Matrix& u_first, const C2Matrix& u_second,
                          const TwoQubitState& s) {
    if (!is_special_unitary(u_first)) {
        throw Error(ErrorCode::InvalidOperator, "first-particle operator is not special-unitary");
    }
    if (!is_special_unitary(u_second)) {
        throw Error(ErrorCode::InvalidOperator, "second-particle operator is not special-unitary");
    }
    const std::array<cplx, 4> u{u_first.m00, u_first.m01, u_first.m10, u_first.m11};
    const std::array<cplx, 4> v{u_second.m00, u_second.m01, u_second.m10, u_second.m11};
    TwoQubitState out;
    // out[i j] = sum_{k l} u[i k] v[j l] s[k l]
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            cplx acc{0.0};
            for (std::size_t k = 0; k < 2; ++k) {
                for (std::size_t l = 0; l < 2; ++l) {
                    acc += u[2 * i + k] * v[2 * j + l] * s.c[2 * k + l];
                }
            }
            out.c[2 * i + j] = acc;
        }
    }
    return out;
}

cplx overlap(const TwoQubitState& s1, const TwoQubitState& s2) {
    cplx acc{0.0};
    for (std::size_t i = 0; i < 4; ++i) acc += std::conj(s1.c[i]) * s2.c[i];
    return acc;
}

double concurrence(const TwoQubitState& s) {
    return 2.0 * std::abs(s.c[0] * s.c[3] - s.c[1] * s.c[2]);
}

}  // namespace so3mes
