#pragma once

#include <array>
#include <cstddef>

#include "so3mes/mes.hpp"
#include "so3mes/qmath.hpp"

namespace so3mes {

/// Field B(t) = b (sin(theta) cos(omega t), sin(theta) sin(omega t), cos(theta))
/// coupled as H = sigma . B. Energies carry the coupling constant, so b is in
/// energy units.
struct FieldConfig {
    double b{1.0};
    double theta{0.0};
    double omega{1.0};
    double hbar{1.0};

    /// Throws InvalidConfig unless b >= 0, omega > 0, hbar > 0, 0 <= theta <= pi.
    void validate() const;
    /// True when the rotating-frame eigensolutions are undefined (sin(theta) = 0 or b = 0).
    bool is_static() const;
};

using Spinor = std::array<cplx, 2>;

/// The two exact solutions psi_+-(t) = (a e^{-i omega t/2}, b e^{i omega t/2}) e^{-+i omega0 t}.
struct ExactSolutionPair {
    double omega0{0.0};
    double omega{1.0};
    cplx a_plus, b_plus, a_minus, b_minus;

    Spinor psi_plus(double t) const;
    Spinor psi_minus(double t) const;

    /// Same solutions with a+-, b+- multiplied by e^{i phase_plus}, e^{i phase_minus}.
    ExactSolutionPair rephased(double phase_plus, double phase_minus) const;
};

C2Matrix hamiltonian(const FieldConfig& cfg, double t);

/// (1/2hbar) sqrt((hbar omega)^2 - 4 b hbar omega cos(theta) + 4 b^2)
double omega_zero(const FieldConfig& cfg);

/// a+- real and positive. Throws DegenerateGeometry when cfg.is_static().
ExactSolutionPair exact_solutions(const FieldConfig& cfg);

/// Time-evolution operator in the lab (sigma_z) basis.
C2Matrix propagator_matrix(const FieldConfig& cfg, double t);
C2Matrix propagator_matrix(const ExactSolutionPair& sols, double t);

/// Columns psi_+(0), psi_-(0); the identity for static fields.
C2Matrix eigenbasis(const FieldConfig& cfg);

/// Evolution operator written in the basis {|0> = psi_+(0), |1> = psi_-(0)}:
/// alpha = <psi_+(0)|U(t)|psi_+(0)>, beta = <psi_+(0)|U(t)|psi_-(0)>.
/// Static fields use the analytic z-field propagator in the lab basis.
MesState propagator(const FieldConfig& cfg, double t);
MesState propagator(const ExactSolutionPair& sols, double t);

/// Closed form
///   alpha = [cos(wt/2) + i sin(wt/2) (hbar w - 2b cos)/(2 hbar w0)] e^{-i w0 t}
///   beta  = i sin(wt/2) (a-/a+) (hbar (w - 2 w0) - 2b cos)/(2 hbar w0) e^{i w0 t}
/// for the eigenbasis propagator (a+- positive).
MesState closed_form_propagator(const FieldConfig& cfg, double t);

/// Classical RK4 on i hbar dU/dt = H(t) U, U(0) = I. Throws Accuracy when the
/// result drifts from unitarity by more than 1e-6.
C2Matrix rk4_oracle(const FieldConfig& cfg, double t, std::size_t steps);

/// 10^4 steps per rotation period 2 pi / omega, never fewer than 1000.
std::size_t rk4_default_steps(const FieldConfig& cfg, double t);

/// Positive root b of omega_zero(b) = ratio * omega:
///   b = (hbar omega / 2)(cos(theta) + sqrt(cos^2(theta) - 1 + 4 ratio^2)).
/// Throws NoSolution when no non-negative root exists.
double solve_field_for_ratio(double theta, double omega, double hbar, double ratio);

/// D1(t) D2(t)|(1,0)>: both particles evolve in the same rotating field.
TwoQubitState dual_evolution(const FieldConfig& cfg, double t);

}  // namespace so3mes
