#include "so3mes/trajectory.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "so3mes/error.hpp"

namespace so3mes {

namespace {

constexpr double kBisectTol = 1e-10;

int sheet_of(const MesState& m) { return m.alpha.real() >= 0.0 ? 1 : -1; }

void check_request(double t_max, std::size_t n_steps) {
    if (!(t_max >= 0.0) || !std::isfinite(t_max)) {
        throw Error(ErrorCode::InvalidConfig, "t_max must be finite and non-negative");
    }
    if (t_max > 0.0 && n_steps < kMinSteps) {
        throw Error(ErrorCode::InsufficientResolution,
                    "at least " + std::to_string(kMinSteps) + " steps are required");
    }
}

double sample_time(double t_max, std::size_t i, std::size_t n) {
    return t_max * static_cast<double>(i) / static_cast<double>(n);
}

BreakEvent localize_break(const FieldConfig& cfg, EvolutionMode mode, double t_lo, double t_hi,
                          int sheet_lo) {
    while (t_hi - t_lo > kBisectTol) {
        const double mid = 0.5 * (t_lo + t_hi);
        if (sheet_of(evolve_mes(cfg, mode, mid)) == sheet_lo) {
            t_lo = mid;
        } else {
            t_hi = mid;
        }
    }
    BreakEvent ev;
    ev.t_lo = t_lo;
    ev.t_hi = t_hi;
    ev.exit = axis_angle_from_su2(evolve_mes(cfg, mode, t_lo)).position();
    ev.reentry = axis_angle_from_su2(evolve_mes(cfg, mode, t_hi)).position();
    return ev;
}

}  // namespace

MesState evolve_mes(const FieldConfig& cfg, EvolutionMode mode, double t) {
    if (mode == EvolutionMode::Single) return propagator(cfg, t);
    try {
        return from_two_qubit(dual_evolution(cfg, t));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotMaximallyEntangled) throw;
        throw Error(ErrorCode::InternalConsistency,
                    "dual evolution left the MES manifold at t = " + std::to_string(t));
    }
}

Trajectory trace(const FieldConfig& cfg, EvolutionMode mode, double t_max, std::size_t n_steps) {
    cfg.validate();
    check_request(t_max, n_steps);

    Trajectory traj;
    traj.cfg = cfg;
    traj.mode = mode;
    traj.t_max = t_max;
    traj.n_steps = t_max == 0.0 ? 0 : n_steps;

    const std::size_t n = traj.n_steps;
    traj.samples.reserve(n + 1);
    std::optional<Vec3> carried;
    for (std::size_t i = 0; i <= n; ++i) {
        TrajectorySample s;
        s.t = n == 0 ? 0.0 : sample_time(t_max, i, n);
        s.mes = evolve_mes(cfg, mode, s.t);
        s.point = axis_angle_from_su2(s.mes, carried);
        carried = s.point.axis;
        if (!traj.samples.empty()) {
            const TrajectorySample& prev = traj.samples.back();
            if (prev.point.sheet != s.point.sheet) {
                s.after_break = true;
                traj.breaks.push_back(localize_break(cfg, mode, prev.t, s.t, prev.point.sheet));
            }
        }
        traj.samples.push_back(s);
    }
    traj.end_overlap =
        overlap(to_two_qubit(traj.samples.front().mes), to_two_qubit(traj.samples.back().mes));
    return traj;
}

std::size_t count_sheet_flips(const FieldConfig& cfg, EvolutionMode mode, double t_max,
                              std::size_t n_steps) {
    cfg.validate();
    check_request(t_max, n_steps);
    if (t_max == 0.0) return 0;
    std::size_t flips = 0;
    int prev = sheet_of(evolve_mes(cfg, mode, 0.0));
    for (std::size_t i = 1; i <= n_steps; ++i) {
        const int cur = sheet_of(evolve_mes(cfg, mode, sample_time(t_max, i, n_steps)));
        if (cur != prev) ++flips;
        prev = cur;
    }
    return flips;
}

std::size_t count_breaks(const Trajectory& traj) {
    if (traj.n_steps == 0) return 0;
    std::size_t count = traj.breaks.size();
    for (std::size_t n = 2 * traj.n_steps; n <= kMaxRefinedSteps; n *= 2) {
        const std::size_t refined = count_sheet_flips(traj.cfg, traj.mode, traj.t_max, n);
        if (refined == count) return count;
        count = refined;
    }
    throw Error(ErrorCode::InsufficientResolution,
                "break count did not settle below " + std::to_string(kMaxRefinedSteps) + " steps");
}

ClosurePhase classify_closure(cplx overlap) {
    const double modulus = std::abs(overlap);
    if (modulus < 1.0 - kClosureTol) return ClosurePhase::Open;
    const double phase = std::arg(overlap);  // (-pi, pi]
    if (std::abs(modulus - 1.0) <= kClosureTol) {
        if (std::abs(phase) <= kClosureTol) return ClosurePhase::Plus;
        if (kPi - std::abs(phase) <= kClosureTol) return ClosurePhase::Minus;
    }
    throw Error(ErrorCode::NonCommensurateClosure,
                "closed path with overlap phase " + std::to_string(phase) + " rad");
}

ClosurePhase closure_phase(const Trajectory& traj) { return classify_closure(traj.end_overlap); }

bool parity_theorem_check(const Trajectory& traj) {
    const ClosurePhase phase = closure_phase(traj);
    if (phase == ClosurePhase::Open) {
        throw Error(ErrorCode::NotApplicable, "parity check needs a closed trajectory");
    }
    const bool odd = count_breaks(traj) % 2 == 1;
    return odd == (phase == ClosurePhase::Minus);
}

}  // namespace so3mes
