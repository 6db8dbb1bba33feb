#pragma once

namespace ltidisc {

/// Classification thresholds shared by the admissibility checks and the
/// coefficient solvers. The determinant thresholds apply to |det| scaled by
/// the Hadamard column bound, so they are dimensionless and scale-free;
/// the angle tolerance is the band around an exact resonance (a measure-zero
/// point set) that floating point needs.
struct Thresholds {
    double inadmissible = 1e-12;
    double marginal = 1e-8;
    double angle_tol = 1e-9;
};

} // namespace ltidisc
