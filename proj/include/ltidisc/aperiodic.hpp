#pragma once

#include "ltidisc/realization.hpp"
#include "ltidisc/schedule.hpp"
#include "ltidisc/spectrum.hpp"
#include "ltidisc/transfer_function.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace ltidisc {

/// Input reconstruction between samples.
enum class Hold {
    impulse, ///< impulse train: u_k scales a Dirac at t_k
    zoh,     ///< zeroth-order hold: input held constant on [t_k, t_{k+1})
};

/// Output feedback coefficients of one recursion window, with the scaled
/// window determinant that gates their reliability.
struct WindowCoefficients {
    std::vector<double> f; ///< [f_1, ..., f_n]
    double scaled_delta = 0.0;
    bool marginal = false; ///< determinant above the hard threshold but small
};

/// Per-step recursion coefficients y_k = sum_i f_i y_{k-i} + sum_j g_j u_{k-j}.
struct StepCoefficients {
    std::size_t k = 0;
    std::vector<double> f;
    std::vector<double> g; ///< length n for impulse hold, n+1 for ZOH
    Hold hold = Hold::impulse;
    double scaled_delta = 0.0;
    bool marginal = false;
};

/// Vectors G_0 = x0 and G_i = exp(A (z_1 + ... + z_i)) x0 for i = 1..n.
std::vector<Eigen::VectorXd> g_vectors(const CompanionRealization& r,
                                       std::span<const double> periods);

/// f_1..f_n from the linear system with columns G_0..G_{n-1} and right side
/// G_n. Throws InadmissibleSequenceError when the window matrix is singular
/// to the hard threshold; flags `marginal` below the soft threshold.
WindowCoefficients f_coeffs_solve(const CompanionRealization& r,
                                  std::span<const double> periods);

/// Same coefficients from determinant ratios of fundamental solutions
/// evaluated at the cumulative sums alpha_j; depends only on the poles.
WindowCoefficients f_coeffs_closed(const Spectrum& sp, std::span<const double> periods);

/// Impulse-hold input coefficients g_0..g_{n-1} at step k:
/// g_j = h(t_k - t_{k-j}) - sum_i f_i h(t_{k-i} - t_{k-j}), h causal.
std::vector<double> g_coeffs_impulse(const CompanionRealization& r,
                                     const SamplingSchedule& sched, std::size_t k,
                                     std::span<const double> f);

/// ZOH input coefficients g_0..g_n at step k; `sr` is the step-response
/// realization of the plant (order n+1) while n is the plant order.
std::vector<double> g_coeffs_zoh(const CompanionRealization& sr,
                                 const SamplingSchedule& sched, std::size_t k,
                                 std::span<const double> f);

/// Coefficient rows for every step k >= n. Windows below the hard
/// determinant threshold throw unless `keep_going` is set, in which case the
/// row is emitted with NaN coefficients.
std::vector<StepCoefficients> model_coefficients(const TransferFunction& tf,
                                                 const SamplingSchedule& sched,
                                                 Hold hold, bool keep_going = false);

/// Run the input-output recursion over the schedule. Outputs for the
/// warm-up steps (k < n, or k <= n for ZOH) come from the direct convolution
/// sum, which the recursion then extends exactly.
std::vector<double> simulate(const TransferFunction& tf, const SamplingSchedule& sched,
                             std::span<const double> inputs, Hold hold);

} // namespace ltidisc
