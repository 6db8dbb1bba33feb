#include "ltidisc/periodic.hpp"

#include "ltidisc/errors.hpp"
#include "ltidisc/realization.hpp"

#include <cassert>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

namespace ltidisc {

namespace {

void require_admissible_period(const Spectrum& sp, double T0) {
    const AdmissibilityReport report = check_periodic_resonance(sp, T0);
    if (report.verdict == Verdict::inadmissible) {
        throw InadmissibleSequenceError("sampling period is resonant",
                                        report.delta_magnitude);
    }
}

} // namespace

double PeriodicModel::sum_a() const {
    return std::accumulate(a.begin(), a.end(), 0.0);
}

double PeriodicModel::sum_b() const {
    return std::accumulate(b.begin(), b.end(), 0.0);
}

std::vector<double> a_coeffs(const Spectrum& sp, double T0) {
    if (!(T0 > 0.0)) {
        throw std::invalid_argument("sampling period must be positive");
    }
    const int n = sp.order();
    // Expand prod_j (x - phi_j) with phi_j = exp(lambda_j T0); the a_i are
    // the negated non-leading coefficients.
    std::vector<std::complex<double>> coeffs = {1.0};
    for (const auto& g : sp.eigenvalues) {
        const std::complex<double> phi = std::exp(g.value * T0);
        for (int m = 0; m < g.multiplicity; ++m) {
            coeffs.push_back(0.0);
            for (std::size_t i = coeffs.size() - 1; i > 0; --i) {
                coeffs[i] -= phi * coeffs[i - 1];
            }
        }
    }
    std::vector<double> a(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const std::complex<double> c = coeffs[static_cast<std::size_t>(i)];
        assert(std::abs(c.imag()) <= 1e-10 * std::max(1.0, std::abs(c)));
        a[static_cast<std::size_t>(i - 1)] = -c.real();
    }
    return a;
}

std::vector<double> b_coeffs(const TransferFunction& tf, double T0, Hold hold,
                             std::span<const double> a) {
    const int n = tf.order();
    if (static_cast<int>(a.size()) != n) {
        throw std::invalid_argument("expected n feedback coefficients");
    }
    require_admissible_period(spectrum(tf), T0);

    if (hold == Hold::impulse) {
        const SamplingSchedule sched =
            SamplingSchedule::constant(T0, static_cast<std::size_t>(n));
        return g_coeffs_impulse(realize(tf), sched, static_cast<std::size_t>(n), a);
    }
    const SamplingSchedule sched =
        SamplingSchedule::constant(T0, static_cast<std::size_t>(n) + 1);
    return g_coeffs_zoh(step_realization(tf), sched, static_cast<std::size_t>(n) + 1, a);
}

PeriodicModel discretize_periodic(const TransferFunction& tf, double T0, Hold hold) {
    PeriodicModel m;
    m.T0 = T0;
    m.hold = hold;
    m.a = a_coeffs(spectrum(tf), T0);
    m.b = b_coeffs(tf, T0, hold, m.a);
    return m;
}

PeriodicModel dead_time_model(const TransferFunction& tf, double T0, double Td, Hold hold) {
    if (Td < 0.0) {
        throw std::invalid_argument("dead time must be nonnegative");
    }
    if (hold != Hold::zoh) {
        throw std::invalid_argument("dead time is modelled for the ZOH input only");
    }
    PeriodicModel m = discretize_periodic(tf, T0, hold);
    if (Td == 0.0) return m;

    m.dead_time = Td;
    // Smallest integer p with Td <= p T0 (closed upper boundary).
    int p = static_cast<int>(std::ceil(Td / T0));
    if ((p - 1) * T0 >= Td) --p;
    m.dead_shift = p;

    const double remainder = Td - static_cast<double>(p) * T0;
    if (std::abs(remainder) <= 1e-15 * Td) {
        return m; // whole-period delay: coefficients unchanged, inputs shift
    }

    // Fractional delay: recompute b_j from the shifted step response,
    // b_j = sum_{i} (-a_i) [h_s((p+j-i) T0 - Td) - h_s((p+j-i-1) T0 - Td)]
    // with a_0 = -1 and h_s causal.
    const int n = tf.order();
    const CompanionRealization sr = step_realization(tf);
    const auto shifted_step = [&](int steps) {
        return impulse_response(sr, static_cast<double>(steps) * T0 - Td,
                                ResponseMode::causal);
    };
    for (int j = 0; j <= n; ++j) {
        double acc = shifted_step(p + j) - shifted_step(p + j - 1);
        for (int i = 1; i <= n; ++i) {
            acc -= m.a[static_cast<std::size_t>(i - 1)] *
                   (shifted_step(p + j - i) - shifted_step(p + j - i - 1));
        }
        m.b[static_cast<std::size_t>(j)] = acc;
    }
    return m;
}

double gain_identity(const PeriodicModel& m, double static_gain) {
    if (m.hold != Hold::zoh) {
        throw std::invalid_argument("gain identity applies to ZOH models");
    }
    return m.sum_b() - static_gain * (1.0 - m.sum_a());
}

AdmissibilityReport check_periodic_resonance(const Spectrum& sp, double T0,
                                             const Thresholds& th) {
    if (!(T0 > 0.0)) {
        throw std::invalid_argument("sampling period must be positive");
    }
    const int n = sp.order();
    std::vector<double> periods(static_cast<std::size_t>(n), T0);
    AdmissibilityReport report = check_generic(sp, periods, th);

    // With one constant period, different rotations of the window vectors
    // would need different periods, so the oblique-plane degeneracy cannot
    // occur; only the pi-multiple resonance survives.
    report.notes.push_back("periodic case: oblique-plane degeneracy cannot occur");
    return report;
}

std::vector<double> simulate_periodic(const TransferFunction& tf, const PeriodicModel& m,
                                      std::span<const double> inputs) {
    const int n = tf.order();
    const int p = m.dead_shift;
    const CompanionRealization resp =
        m.hold == Hold::zoh ? step_realization(tf) : realize(tf);

    std::vector<double> y(inputs.size(), 0.0);
    const std::size_t warmup =
        std::min(inputs.size(), static_cast<std::size_t>(n + p + 1));
    for (std::size_t k = 0; k < warmup; ++k) {
        double acc = 0.0;
        for (std::size_t l = 0; l <= k; ++l) {
            const double weight =
                m.hold == Hold::impulse ? inputs[l]
                                        : inputs[l] - (l > 0 ? inputs[l - 1] : 0.0);
            acc += impulse_response(resp,
                                    static_cast<double>(k - l) * m.T0 - m.dead_time,
                                    ResponseMode::causal) *
                   weight;
        }
        y[k] = acc;
    }

    for (std::size_t k = warmup; k < inputs.size(); ++k) {
        double acc = 0.0;
        for (int i = 1; i <= n; ++i) {
            acc += m.a[static_cast<std::size_t>(i - 1)] * y[k - static_cast<std::size_t>(i)];
        }
        for (std::size_t j = 0; j < m.b.size(); ++j) {
            const std::size_t shift = j + static_cast<std::size_t>(p);
            if (shift <= k) {
                acc += m.b[j] * inputs[k - shift];
            }
        }
        y[k] = acc;
    }
    return y;
}

} // namespace ltidisc
