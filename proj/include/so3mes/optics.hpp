#pragma once

#include <optional>
#include <span>
#include <vector>

#include "so3mes/dynamics.hpp"
#include "so3mes/mes.hpp"
#include "so3mes/qmath.hpp"

namespace so3mes {

/// Bench parameters of a Kerr cell. Retardance phi = 2 pi kerr_k d E^2 / lambda.
struct KerrPhysical {
    double lambda{1.0};
    double kerr_k{1.0};
    double d{1.0};
    double e_field{0.0};
};

enum class KerrKind {
    AxisAligned,  // optical axis along z: U1
    Rotated,      // optical axis at angle delta from z: U2
};

struct KerrStage {
    KerrKind kind{KerrKind::AxisAligned};
    double phi{0.0};
    double delta{0.0};
    std::optional<KerrPhysical> physical;

    static KerrStage axis_aligned(double phi);
    static KerrStage rotated(double phi, double delta);
    static KerrStage from_physical(KerrKind kind, const KerrPhysical& bench, double delta = 0.0);

    C2Matrix jones() const;
};

/// diag(e^{-i phi/2}, e^{i phi/2})
C2Matrix u1_matrix(double phi1);

/// [[A, B], [-B*, A*]] with A = cos(phi/2) + i sin(phi/2) cos(2 delta),
/// B = i sin(phi/2) sin(2 delta).
C2Matrix u2_matrix(double phi2, double delta);

/// 2 pi kerr_k d e^2 / lambda. Throws InvalidGeometry unless lambda, d > 0.
double phase_from_field(double lambda, double kerr_k, double d, double e);

/// Inverse of phase_from_field for e >= 0: sqrt(phi lambda / (2 pi kerr_k d)).
/// Throws InconsistentParameters when phi / kerr_k < 0.
double field_for_phase(double phi, double lambda, double kerr_k, double d);

struct OpticsSettings {
    double phi1{0.0};
    double phi2{0.0};
    double delta{0.0};
};

/// phi1 = 2 omega0 t, phi2 = omega t, cos(2 delta) = (hbar omega - 2b cos(theta)) / (2 hbar omega0)
/// with delta in [0, pi/2]. Throws InconsistentParameters if the cosine
/// leaves [-1, 1] by more than 1e-9 or omega0 = 0.
OpticsSettings map_dynamics_to_optics(const FieldConfig& cfg, double t);

/// U2(phi2, delta) U1(phi1).
C2Matrix arm_transform(const OpticsSettings& s);

/// The H/V basis is identified with {psi_+(0), -psi_-(0)}; re-expresses an
/// eigenbasis element in it (beta flips sign). With this identification
/// arm_transform(map_dynamics_to_optics(cfg, t)) equals propagator(cfg, t).
MesState to_optical_basis(const MesState& eigenbasis_element);

/// Stages, in the order light meets them, that act on photon a alone with the
/// same effect as U2 U1 on each photon of |Phi+>. Uses (1 (x) M)|Phi+> = (M^T (x) 1)|Phi+>.
std::vector<C2Matrix> two_photon_stages(const OpticsSettings& s);

/// Idealized balanced Mach-Zehnder readout. The stages (in order) act on
/// photon a; with v = <Phi+|(S (x) 1)|Phi+> the bright-port probability is
/// |1 + e^{i reference_phase} v|^2 / 4. Throws InvalidOperator for a
/// non-special-unitary product.
double mach_zehnder_intensity(std::span<const C2Matrix> stages, double reference_phase);

struct ScanPoint {
    double ratio{0.0};
    double intensity{0.0};
};

/// Bright-port intensity of the two-photon scheme as phi1 = ratio * phi2
/// sweeps [ratio_min, ratio_max] in `points` samples.
std::vector<ScanPoint> bright_port_scan(double phi2, double delta, double ratio_min,
                                        double ratio_max, std::size_t points,
                                        double reference_phase = 0.0);

}  // namespace so3mes
