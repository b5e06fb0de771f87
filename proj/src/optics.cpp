#include "so3mes/optics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "so3mes/error.hpp"

namespace so3mes {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kClampTol = 1e-9;

}  // namespace

KerrStage KerrStage::axis_aligned(double phi) { return {KerrKind::AxisAligned, phi, 0.0, std::nullopt}; }

KerrStage KerrStage::rotated(double phi, double delta) {
    return {KerrKind::Rotated, phi, delta, std::nullopt};
}

KerrStage KerrStage::from_physical(KerrKind kind, const KerrPhysical& bench, double delta) {
    const double phi = phase_from_field(bench.lambda, bench.kerr_k, bench.d, bench.e_field);
    return {kind, phi, kind == KerrKind::AxisAligned ? 0.0 : delta, bench};
}

C2Matrix KerrStage::jones() const {
    return kind == KerrKind::AxisAligned ? u1_matrix(phi) : u2_matrix(phi, delta);
}

C2Matrix u1_matrix(double phi1) {
    const cplx ph = std::exp(-kI * (0.5 * phi1));
    return C2Matrix::diag(ph, std::conj(ph));
}

C2Matrix u2_matrix(double phi2, double delta) {
    const double c = std::cos(0.5 * phi2);
    const double s = std::sin(0.5 * phi2);
    const cplx a{c, s * std::cos(2.0 * delta)};
    const cplx b{0.0, s * std::sin(2.0 * delta)};
    return {a, b, -std::conj(b), std::conj(a)};
}

double phase_from_field(double lambda, double kerr_k, double d, double e) {
    if (!(lambda > 0.0) || !(d > 0.0)) {
        throw Error(ErrorCode::InvalidGeometry, "wavelength and thickness must be positive");
    }
    return 2.0 * kPi * kerr_k * d * e * e / lambda;
}

double field_for_phase(double phi, double lambda, double kerr_k, double d) {
    if (!(lambda > 0.0) || !(d > 0.0)) {
        throw Error(ErrorCode::InvalidGeometry, "wavelength and thickness must be positive");
    }
    if (phi == 0.0) return 0.0;
    const double e2 = phi * lambda / (2.0 * kPi * kerr_k * d);
    if (!(e2 >= 0.0) || !std::isfinite(e2)) {
        throw Error(ErrorCode::InconsistentParameters,
                    "retardance " + std::to_string(phi) + " is unreachable with this Kerr constant");
    }
    return std::sqrt(e2);
}

OpticsSettings map_dynamics_to_optics(const FieldConfig& cfg, double t) {
    cfg.validate();
    const double w0 = omega_zero(cfg);
    if (!(w0 > 0.0)) {
        throw Error(ErrorCode::InconsistentParameters, "omega0 vanishes; delta is undefined");
    }
    double cos2d = (cfg.hbar * cfg.omega - 2.0 * cfg.b * std::cos(cfg.theta)) / (2.0 * cfg.hbar * w0);
    if (std::abs(cos2d) > 1.0 + kClampTol) {
        throw Error(ErrorCode::InconsistentParameters,
                    "cos(2 delta) = " + std::to_string(cos2d) + " is outside [-1, 1]");
    }
    cos2d = std::clamp(cos2d, -1.0, 1.0);
    return {2.0 * w0 * t, cfg.omega * t, 0.5 * std::acos(cos2d)};
}

C2Matrix arm_transform(const OpticsSettings& s) { return u2_matrix(s.phi2, s.delta) * u1_matrix(s.phi1); }

MesState to_optical_basis(const MesState& m) { return {m.alpha, -m.beta}; }

std::vector<C2Matrix> two_photon_stages(const OpticsSettings& s) {
    const C2Matrix u1 = u1_matrix(s.phi1);
    const C2Matrix u2 = u2_matrix(s.phi2, s.delta);
    // Photon b's U2 U1 moves onto photon a as (U2 U1)^T = U1^T U2^T, which acts first.
    return {u2.transpose(), u1.transpose(), u1, u2};
}

double mach_zehnder_intensity(std::span<const C2Matrix> stages, double reference_phase) {
    C2Matrix product = C2Matrix::identity();
    for (const auto& stage : stages) product = stage * product;
    const TwoQubitState ref = phi_plus();
    const cplx v = overlap(ref, apply_local(product, C2Matrix::identity(), ref));
    return std::norm(1.0 + std::polar(1.0, reference_phase) * v) / 4.0;
}

std::vector<ScanPoint> bright_port_scan(double phi2, double delta, double ratio_min,
                                        double ratio_max, std::size_t points,
                                        double reference_phase) {
    std::vector<ScanPoint> out;
    out.reserve(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double ratio =
            points == 1 ? ratio_min
                        : ratio_min + (ratio_max - ratio_min) * static_cast<double>(i) /
                                          static_cast<double>(points - 1);
        const auto stages = two_photon_stages({ratio * phi2, phi2, delta});
        out.push_back({ratio, mach_zehnder_intensity(stages, reference_phase)});
    }
    return out;
}

}  // namespace so3mes
