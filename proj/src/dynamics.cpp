#include "so3mes/dynamics.hpp"

#include <cmath>
#include <string>

#include "so3mes/error.hpp"

namespace so3mes {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kStaticSin = 1e-12;
constexpr double kRk4UnitarityTol = 1e-6;

C2Matrix columns(const Spinor& c0, const Spinor& c1) { return {c0[0], c1[0], c0[1], c1[1]}; }

C2Matrix outer(const Spinor& ket, const Spinor& bra) {
    return {ket[0] * std::conj(bra[0]), ket[0] * std::conj(bra[1]), ket[1] * std::conj(bra[0]),
            ket[1] * std::conj(bra[1])};
}

// Static field along +-z: U = diag(e^{-i b cos(theta) t/hbar}, c.c.).
C2Matrix static_propagator(const FieldConfig& cfg, double t) {
    const cplx ph = std::exp(-kI * cfg.b * std::cos(cfg.theta) * t / cfg.hbar);
    return C2Matrix::diag(ph, std::conj(ph));
}

}  // namespace

void FieldConfig::validate() const {
    if (!(b >= 0.0) || !(omega > 0.0) || !(hbar > 0.0) || !(theta >= 0.0 && theta <= kPi)) {
        throw Error(ErrorCode::InvalidConfig, "field config requires b >= 0, omega > 0, hbar > 0, "
                                              "0 <= theta <= pi");
    }
}

bool FieldConfig::is_static() const { return std::abs(std::sin(theta)) <= kStaticSin || b == 0.0; }

Spinor ExactSolutionPair::psi_plus(double t) const {
    const cplx ph = std::exp(-kI * omega0 * t);
    return {a_plus * std::exp(-kI * (0.5 * omega * t)) * ph,
            b_plus * std::exp(kI * (0.5 * omega * t)) * ph};
}

Spinor ExactSolutionPair::psi_minus(double t) const {
    const cplx ph = std::exp(kI * omega0 * t);
    return {a_minus * std::exp(-kI * (0.5 * omega * t)) * ph,
            b_minus * std::exp(kI * (0.5 * omega * t)) * ph};
}

ExactSolutionPair ExactSolutionPair::rephased(double phase_plus, double phase_minus) const {
    ExactSolutionPair out = *this;
    const cplx pp = std::polar(1.0, phase_plus);
    const cplx pm = std::polar(1.0, phase_minus);
    out.a_plus *= pp;
    out.b_plus *= pp;
    out.a_minus *= pm;
    out.b_minus *= pm;
    return out;
}

C2Matrix hamiltonian(const FieldConfig& cfg, double t) {
    const double c = std::cos(cfg.theta);
    const double s = std::sin(cfg.theta);
    const cplx rot = std::exp(kI * cfg.omega * t);
    return cfg.b * C2Matrix{c, s * std::conj(rot), s * rot, -c};
}

double omega_zero(const FieldConfig& cfg) {
    // Written as a sum of squares so the radicand never goes negative.
    const double x = cfg.hbar * cfg.omega - 2.0 * cfg.b * std::cos(cfg.theta);
    const double y = 2.0 * cfg.b * std::sin(cfg.theta);
    return std::hypot(x, y) / (2.0 * cfg.hbar);
}

ExactSolutionPair exact_solutions(const FieldConfig& cfg) {
    cfg.validate();
    if (cfg.is_static()) {
        throw Error(ErrorCode::DegenerateGeometry,
                    "b sin(theta) = 0; use the static z-field propagator");
    }
    ExactSolutionPair out;
    out.omega = cfg.omega;
    out.omega0 = omega_zero(cfg);
    const double denom = 2.0 * cfg.b * std::sin(cfg.theta);
    const double shift = cfg.hbar * cfg.omega - 2.0 * cfg.b * std::cos(cfg.theta);
    const double w = 2.0 * cfg.hbar * out.omega0;
    const double ratio_plus = (shift + w) / denom;
    const double ratio_minus = (shift - w) / denom;
    const double a_plus = 1.0 / std::sqrt(1.0 + ratio_plus * ratio_plus);
    const double a_minus = 1.0 / std::sqrt(1.0 + ratio_minus * ratio_minus);
    out.a_plus = a_plus;
    out.b_plus = a_plus * ratio_plus;
    out.a_minus = a_minus;
    out.b_minus = a_minus * ratio_minus;
    return out;
}

C2Matrix propagator_matrix(const ExactSolutionPair& sols, double t) {
    return outer(sols.psi_plus(t), sols.psi_plus(0.0)) + outer(sols.psi_minus(t), sols.psi_minus(0.0));
}

C2Matrix propagator_matrix(const FieldConfig& cfg, double t) {
    cfg.validate();
    if (cfg.is_static()) return static_propagator(cfg, t);
    return propagator_matrix(exact_solutions(cfg), t);
}

C2Matrix eigenbasis(const FieldConfig& cfg) {
    cfg.validate();
    if (cfg.is_static()) return C2Matrix::identity();
    const auto sols = exact_solutions(cfg);
    return columns(sols.psi_plus(0.0), sols.psi_minus(0.0));
}

MesState propagator(const ExactSolutionPair& sols, double t) {
    const C2Matrix basis = columns(sols.psi_plus(0.0), sols.psi_minus(0.0));
    const C2Matrix in_basis = basis.adjoint() * propagator_matrix(sols, t) * basis;
    return {in_basis.m00, in_basis.m01};
}

MesState propagator(const FieldConfig& cfg, double t) {
    cfg.validate();
    if (cfg.is_static()) {
        const C2Matrix u = static_propagator(cfg, t);
        return {u.m00, u.m01};
    }
    return propagator(exact_solutions(cfg), t);
}

MesState closed_form_propagator(const FieldConfig& cfg, double t) {
    const auto sols = exact_solutions(cfg);
    const double w0 = sols.omega0;
    const double shift = cfg.hbar * cfg.omega - 2.0 * cfg.b * std::cos(cfg.theta);
    const double half = 0.5 * cfg.omega * t;
    const cplx alpha = (std::cos(half) + kI * std::sin(half) * shift / (2.0 * cfg.hbar * w0)) *
                       std::exp(-kI * w0 * t);
    const double amp_ratio = sols.a_minus.real() / sols.a_plus.real();
    const cplx beta = kI * std::sin(half) * amp_ratio *
                      (cfg.hbar * (cfg.omega - 2.0 * w0) - 2.0 * cfg.b * std::cos(cfg.theta)) /
                      (2.0 * cfg.hbar * w0) * std::exp(kI * w0 * t);
    return {alpha, beta};
}

C2Matrix rk4_oracle(const FieldConfig& cfg, double t, std::size_t steps) {
    cfg.validate();
    if (steps == 0) throw Error(ErrorCode::Accuracy, "rk4 needs at least one step");
    const double h = t / static_cast<double>(steps);
    const cplx scale = -kI / cfg.hbar;
    auto rhs = [&](double time, const C2Matrix& u) { return scale * (hamiltonian(cfg, time) * u); };

    C2Matrix u = C2Matrix::identity();
    for (std::size_t n = 0; n < steps; ++n) {
        const double tn = h * static_cast<double>(n);
        const C2Matrix k1 = rhs(tn, u);
        const C2Matrix k2 = rhs(tn + 0.5 * h, u + (0.5 * h) * k1);
        const C2Matrix k3 = rhs(tn + 0.5 * h, u + (0.5 * h) * k2);
        const C2Matrix k4 = rhs(tn + h, u + h * k3);
        u = u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    const double drift = max_entry_diff(u * u.adjoint(), C2Matrix::identity());
    if (drift > kRk4UnitarityTol) {
        throw Error(ErrorCode::Accuracy, "rk4 unitarity drift " + std::to_string(drift) + " with " +
                                             std::to_string(steps) + " steps");
    }
    return u;
}

std::size_t rk4_default_steps(const FieldConfig& cfg, double t) {
    const double periods = std::abs(t) * cfg.omega / (2.0 * kPi);
    const auto steps = static_cast<std::size_t>(std::ceil(1e4 * periods));
    return steps < 1000 ? 1000 : steps;
}

double solve_field_for_ratio(double theta, double omega, double hbar, double ratio) {
    if (!(omega > 0.0) || !(hbar > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "omega and hbar must be positive");
    }
    if (!(ratio >= 0.0)) {
        throw Error(ErrorCode::NoSolution, "omega0/omega must be non-negative");
    }
    const double c = std::cos(theta);
    const double disc = c * c - 1.0 + 4.0 * ratio * ratio;
    if (!(disc >= 0.0)) {
        throw Error(ErrorCode::NoSolution, "no real field gives omega0/omega = " + std::to_string(ratio));
    }
    const double b = 0.5 * hbar * omega * (c + std::sqrt(disc));
    if (b < 0.0) {
        throw Error(ErrorCode::NoSolution,
                    "only negative field strengths give omega0/omega = " + std::to_string(ratio));
    }
    return b;
}

TwoQubitState dual_evolution(const FieldConfig& cfg, double t) {
    const C2Matrix u = propagator(cfg, t).matrix();
    return apply_local(u, u, phi_plus());
}

}  // namespace so3mes
