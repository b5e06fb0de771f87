#pragma once

#include <array>
#include <complex>

namespace so3mes {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kAlgebraTol = 1e-12;

/// 2x2 complex matrix, row-major.
struct C2Matrix {
    cplx m00{1.0}, m01{0.0}, m10{0.0}, m11{1.0};

    static C2Matrix identity() { return {}; }
    static C2Matrix diag(cplx d0, cplx d1) { return {d0, 0.0, 0.0, d1}; }

    C2Matrix adjoint() const;
    C2Matrix transpose() const;
    cplx det() const;
    cplx trace() const;

    friend C2Matrix operator*(const C2Matrix& a, const C2Matrix& b);
    friend C2Matrix operator*(cplx s, const C2Matrix& a);
    friend C2Matrix operator+(const C2Matrix& a, const C2Matrix& b);
    friend C2Matrix operator-(const C2Matrix& a, const C2Matrix& b);
};

/// Largest entry modulus of a - b.
double max_entry_diff(const C2Matrix& a, const C2Matrix& b);

/// M M^dagger = I and det M = 1, both within tol.
bool is_special_unitary(const C2Matrix& m, double tol = kAlgebraTol);

/// Pauli matrices.
C2Matrix sigma_x();
C2Matrix sigma_y();
C2Matrix sigma_z();

/// Pure two-qubit state; amplitudes in the order |00>, |01>, |10>, |11>.
struct TwoQubitState {
    std::array<cplx, 4> c{};

    cplx& operator[](std::size_t i) { return c[i]; }
    const cplx& operator[](std::size_t i) const { return c[i]; }

    double norm_squared() const;
    bool is_normalized(double tol = kAlgebraTol) const;

    friend TwoQubitState operator*(cplx s, const TwoQubitState& v);
};

double max_entry_diff(const TwoQubitState& a, const TwoQubitState& b);

/// The Bell state (|00> + |11>)/sqrt(2).
TwoQubitState phi_plus();

/// Returns (u_first (x) u_second) s. Both operators must be special-unitary
/// (ErrorCode::InvalidOperator otherwise).
TwoQubitState apply_local(const C2Matrix& u_first, const C2Matrix& u_second,
                          const TwoQubitState& s);

/// <s1|s2>
cplx overlap(const TwoQubitState& s1, const TwoQubitState& s2);

/// 2|c00 c11 - c01 c10|, which equals |<s*| sy (x) sy |s>|.
double concurrence(const TwoQubitState& s);

}  // namespace so3mes
