#pragma once

#include "ltidisc/admissibility.hpp"
#include "ltidisc/aperiodic.hpp"
#include "ltidisc/spectrum.hpp"
#include "ltidisc/transfer_function.hpp"

#include <span>
#include <vector>

namespace ltidisc {

/// Constant-period discrete model y_k = sum_i a_i y_{k-i} + sum_j b_j
/// u_{k-j-p}, where p is the dead-time shift in whole periods.
struct PeriodicModel {
    double T0 = 0.0;
    std::vector<double> a; ///< [a_1 ... a_n]
    std::vector<double> b; ///< [b_0 ... b_m], m = n-1 for impulse hold, n for ZOH
    Hold hold = Hold::zoh;
    int dead_shift = 0;   ///< p with (p-1) T0 < Td <= p T0 (0 when Td = 0)
    double dead_time = 0.0;

    int order() const { return static_cast<int>(a.size()); }
    double sum_a() const;
    double sum_b() const;
};

/// a_i = (-1)^{i-1} e_i(exp(lambda_1 T0), ..., exp(lambda_n T0)), the
/// elementary symmetric functions of the pole exponentials, computed by
/// expanding prod (x - exp(lambda_j T0)). Repeated eigenvalues enter by
/// multiplicity; results are real with asserted imaginary residue.
std::vector<double> a_coeffs(const Spectrum& sp, double T0);

/// Input coefficients via the aperiodic g-computation on a constant
/// schedule. Impulse hold returns [b_0 ... b_{n-1}], ZOH [b_0 ... b_n] with
/// b_0 = 0. Throws InadmissibleSequenceError for a resonant T0.
std::vector<double> b_coeffs(const TransferFunction& tf, double T0, Hold hold,
                             std::span<const double> a);

/// Full model for a constant sampling period (no dead time).
PeriodicModel discretize_periodic(const TransferFunction& tf, double T0, Hold hold);

/// ZOH model with dead time Td >= 0: a_i are unchanged, inputs shift by p
/// whole periods, and b_j are recomputed from the shifted step response
/// unless Td is an exact multiple of T0 (then they are bitwise unchanged).
PeriodicModel dead_time_model(const TransferFunction& tf, double T0, double Td,
                              Hold hold = Hold::zoh);

/// Residual of the static-gain identity sum b = K (1 + sum a'), written
/// with the recursion-sign convention as sum b - K (1 - sum a); near zero
/// for every admissible ZOH model, scaled by the static gain K.
double gain_identity(const PeriodicModel& m, double static_gain = 1.0);

/// Periodic resonance: b T0 on an integral multiple of pi for any complex
/// pair. The oblique-plane case cannot occur with one constant period.
AdmissibilityReport check_periodic_resonance(const Spectrum& sp, double T0,
                                             const Thresholds& th = {});

/// Run the periodic recursion (including the dead-time input shift); the
/// first n + p + 1 outputs come from the direct convolution sum.
std::vector<double> simulate_periodic(const TransferFunction& tf, const PeriodicModel& m,
                                      std::span<const double> inputs);

} // namespace ltidisc
