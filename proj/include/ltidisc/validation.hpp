#pragma once

#include "ltidisc/aperiodic.hpp"
#include "ltidisc/schedule.hpp"
#include "ltidisc/spectrum.hpp"
#include "ltidisc/thresholds.hpp"
#include "ltidisc/transfer_function.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ltidisc {

/// Outcome of comparing a signal against a reference.
struct ComparisonResult {
    double max_abs_error = 0.0;
    /// Worst deviation relative to the reference signal's magnitude,
    /// with an absolute floor for near-zero signals.
    double max_rel_error = 0.0;
    std::size_t index_of_worst = 0;
    double tolerance_used = 0.0;
    bool pass = false;
};

/// Direct convolution of the sampled input with the (step) response;
/// exact up to matrix-exponential accuracy, O(K^2) cost. `Td` shifts the
/// response for dead time (ZOH only).
std::vector<double> convolution_oracle(const TransferFunction& tf,
                                       const SamplingSchedule& sched,
                                       std::span<const double> inputs, Hold hold,
                                       double Td = 0.0);

/// Relative comparison with absolute floor 1e-12 on the reference scale.
ComparisonResult compare_outputs(std::span<const double> actual,
                                 std::span<const double> reference, double tolerance);

/// Deterministic strictly proper system of order n: pole real parts in
/// [-3, -0.05], complex pairs with |Im| <= 5, poles pairwise separated,
/// random numerator of degree < n.
TransferFunction random_stable_system(int n, std::uint64_t seed);

/// Deterministic schedule of K periods drawn from `T_range`, rejection
/// sampled so that every sliding n-window passes the generic admissibility
/// check at the given thresholds. Reports the rejected draws through
/// `rejected` when given.
SamplingSchedule random_admissible_schedule(const Spectrum& sp, std::size_t K,
                                            std::uint64_t seed,
                                            std::pair<double, double> T_range,
                                            std::vector<double>* rejected = nullptr,
                                            const Thresholds& th = {});

/// Classical ZOH state-update simulation x_{k+1} = Ad x_k + Bd u_k on the
/// controllable canonical form. Second oracle for constant schedules; kept
/// in this module only so the verification paths stay independent.
std::vector<double> zoh_state_update_reference(const TransferFunction& tf, double T0,
                                               std::span<const double> inputs);

} // namespace ltidisc
