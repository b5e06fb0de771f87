#pragma once

#include <cstddef>
#include <vector>

#include "so3mes/dynamics.hpp"
#include "so3mes/mes.hpp"

namespace so3mes {

enum class EvolutionMode {
    Single,  // only the first particle sees the field: D1(t)|(1,0)>
    Dual,    // both particles see it: D1(t) D2(t)|(1,0)>
};

enum class ClosurePhase { Plus, Minus, Open };

inline constexpr std::size_t kDefaultSteps = 4096;
inline constexpr std::size_t kMinSteps = 100;
inline constexpr std::size_t kMaxRefinedSteps = std::size_t{1} << 20;
inline constexpr double kClosureTol = 1e-6;

struct TrajectorySample {
    double t{0.0};
    BallPoint point;
    MesState mes;
    bool after_break{false};
};

/// A sheet flip localized by bisection. `exit` and `reentry` are ball
/// positions a*k on either side of the surface crossing.
struct BreakEvent {
    double t_lo{0.0};
    double t_hi{0.0};
    Vec3 exit;
    Vec3 reentry;
};

struct Trajectory {
    FieldConfig cfg;
    EvolutionMode mode{EvolutionMode::Dual};
    double t_max{0.0};
    std::size_t n_steps{0};

    std::vector<TrajectorySample> samples;
    std::vector<BreakEvent> breaks;
    /// <initial|final> of the two-qubit states.
    cplx end_overlap{1.0};
};

/// MES reached at time t in the given mode, expressed in the eigenbasis.
MesState evolve_mes(const FieldConfig& cfg, EvolutionMode mode, double t);

/// Samples t_i = i t_max / n_steps for i = 0..n_steps (a single sample when
/// t_max = 0). Near the ball center the previous axis is carried forward.
Trajectory trace(const FieldConfig& cfg, EvolutionMode mode, double t_max,
                 std::size_t n_steps = kDefaultSteps);

/// Sheet flips between consecutive samples, without building a Trajectory.
std::size_t count_sheet_flips(const FieldConfig& cfg, EvolutionMode mode, double t_max,
                              std::size_t n_steps);

/// Break count, confirmed by re-sampling at twice the resolution. Keeps
/// doubling while the count changes; gives up with InsufficientResolution
/// past kMaxRefinedSteps.
std::size_t count_breaks(const Trajectory& traj);

/// +1 / -1 when the overlap sits within kClosureTol of it (modulus and
/// phase), Open when |overlap| < 1 - kClosureTol. A unit-modulus overlap
/// with any other phase throws NonCommensurateClosure.
ClosurePhase classify_closure(cplx overlap);
ClosurePhase closure_phase(const Trajectory& traj);

/// closure phase == (-1)^breaks. Throws NotApplicable for open trajectories.
bool parity_theorem_check(const Trajectory& traj);

}  // namespace so3mes
