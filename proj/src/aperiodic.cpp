#include "ltidisc/aperiodic.hpp"

#include "ltidisc/errors.hpp"
#include "ltidisc/expm.hpp"
#include "ltidisc/thresholds.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace ltidisc {

namespace {

std::vector<double> cumulative_sums(std::span<const double> periods) {
    std::vector<double> alphas(periods.size() + 1, 0.0);
    for (std::size_t i = 0; i < periods.size(); ++i) {
        if (!(periods[i] > 0.0)) {
            throw std::invalid_argument("sampling periods must be positive");
        }
        alphas[i + 1] = alphas[i] + periods[i];
    }
    return alphas;
}

double scaled_abs_det_real(const Eigen::MatrixXd& M) {
    Eigen::MatrixXd S = M;
    for (Eigen::Index j = 0; j < S.cols(); ++j) {
        const double norm = S.col(j).norm();
        if (norm == 0.0) return 0.0;
        S.col(j) /= norm;
    }
    return std::abs(S.partialPivLu().determinant());
}

// Step-response difference over one period: D(m, l) = h_s(t_m - t_l) -
// h_s(t_m - t_{l+1}), with the second term dropped when t_{l+1} runs past
// the end of the schedule (the argument would be negative there anyway).
double step_difference(const CompanionRealization& sr, const SamplingSchedule& sched,
                       std::size_t m, std::size_t l) {
    double d = impulse_response(sr, sched.at(m) - sched.at(l), ResponseMode::causal);
    if (l + 1 < sched.size()) {
        d -= impulse_response(sr, sched.at(m) - sched.at(l + 1), ResponseMode::causal);
    }
    return d;
}

std::vector<double> convolution_warmup(const CompanionRealization& response,
                                       const SamplingSchedule& sched,
                                       std::span<const double> inputs, Hold hold,
                                       std::size_t count) {
    std::vector<double> y(count, 0.0);
    for (std::size_t k = 0; k < count; ++k) {
        double acc = 0.0;
        for (std::size_t l = 0; l <= k; ++l) {
            const double weight =
                hold == Hold::impulse
                    ? inputs[l]
                    : inputs[l] - (l > 0 ? inputs[l - 1] : 0.0);
            acc += impulse_response(response, sched.at(k) - sched.at(l),
                                    ResponseMode::causal) *
                   weight;
        }
        y[k] = acc;
    }
    return y;
}

} // namespace

std::vector<Eigen::VectorXd> g_vectors(const CompanionRealization& r,
                                       std::span<const double> periods) {
    const std::vector<double> alphas = cumulative_sums(periods);
    std::vector<Eigen::VectorXd> G;
    G.reserve(alphas.size());
    G.push_back(r.x0);
    for (std::size_t i = 1; i < alphas.size(); ++i) {
        G.push_back(expm(r.A, alphas[i]) * r.x0);
    }
    return G;
}

WindowCoefficients f_coeffs_solve(const CompanionRealization& r,
                                  std::span<const double> periods) {
    const int n = r.order();
    if (static_cast<int>(periods.size()) != n) {
        throw std::invalid_argument("expected one period per model order");
    }
    const std::vector<Eigen::VectorXd> G = g_vectors(r, periods);

    Eigen::MatrixXd M(n, n);
    for (int j = 0; j < n; ++j) M.col(j) = G[static_cast<std::size_t>(j)];

    const Thresholds th;
    WindowCoefficients out;
    out.scaled_delta = scaled_abs_det_real(M);
    if (out.scaled_delta < th.inadmissible) {
        throw InadmissibleSequenceError("sampling window is degenerate", out.scaled_delta);
    }
    out.marginal = out.scaled_delta < th.marginal;

    // Unknown ordering in the system is [f_n, ..., f_1].
    const Eigen::VectorXd sol = M.partialPivLu().solve(G[static_cast<std::size_t>(n)]);
    out.f.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        out.f[static_cast<std::size_t>(i - 1)] = sol(n - i);
    }
    return out;
}

WindowCoefficients f_coeffs_closed(const Spectrum& sp, std::span<const double> periods) {
    const int n = sp.order();
    if (static_cast<int>(periods.size()) != n) {
        throw std::invalid_argument("expected one period per model order");
    }
    const std::vector<double> alphas = cumulative_sums(periods);
    Eigen::MatrixXcd F =
        fundamental_matrix(sp, std::span<const double>(alphas.data(), alphas.size() - 1));
    const Eigen::MatrixXcd last =
        fundamental_matrix(sp, std::span<const double>(alphas.data() + n, 1));

    // Normalize columns so the determinant ratios stay representable even
    // when exp(lambda alpha) spans many orders of magnitude; the scaling
    // factors cancel in each ratio.
    Eigen::VectorXd norms(n + 1);
    Eigen::MatrixXcd S = F;
    for (int j = 0; j < n; ++j) {
        norms(j) = S.col(j).norm();
        if (norms(j) == 0.0) norms(j) = 1.0;
        S.col(j) /= norms(j);
    }
    Eigen::VectorXcd target = last.col(0);
    norms(n) = target.norm();
    if (norms(n) == 0.0) norms(n) = 1.0;
    target /= norms(n);

    const std::complex<double> det = S.partialPivLu().determinant();
    const Thresholds th;
    WindowCoefficients out;
    out.scaled_delta = std::abs(det);
    if (out.scaled_delta < th.inadmissible) {
        throw InadmissibleSequenceError("fundamental-solution determinant vanishes",
                                        out.scaled_delta);
    }
    out.marginal = out.scaled_delta < th.marginal;

    out.f.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        Eigen::MatrixXcd Si = S;
        Si.col(n - i) = target;
        const std::complex<double> det_i = Si.partialPivLu().determinant();
        const std::complex<double> ratio =
            det_i / det * (norms(n) / norms(n - i));
        assert(std::abs(ratio.imag()) <= 1e-9 * std::max(1.0, std::abs(ratio)));
        out.f[static_cast<std::size_t>(i - 1)] = ratio.real();
    }
    return out;
}

std::vector<double> g_coeffs_impulse(const CompanionRealization& r,
                                     const SamplingSchedule& sched, std::size_t k,
                                     std::span<const double> f) {
    const int n = r.order();
    if (k < static_cast<std::size_t>(n) || k >= sched.size()) {
        throw std::out_of_range("impulse g coefficients need k >= n inside the schedule");
    }
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const std::size_t tj = k - static_cast<std::size_t>(j);
        double acc = impulse_response(r, sched.at(k) - sched.at(tj), ResponseMode::causal);
        for (int i = 1; i <= n; ++i) {
            acc -= f[static_cast<std::size_t>(i - 1)] *
                   impulse_response(r, sched.at(k - static_cast<std::size_t>(i)) - sched.at(tj),
                                    ResponseMode::causal);
        }
        g[static_cast<std::size_t>(j)] = acc;
    }
    return g;
}

std::vector<double> g_coeffs_zoh(const CompanionRealization& sr,
                                 const SamplingSchedule& sched, std::size_t k,
                                 std::span<const double> f) {
    const int n = sr.order() - 1; // sr realizes G(s)/s
    if (k < static_cast<std::size_t>(n) || k >= sched.size()) {
        throw std::out_of_range("ZOH g coefficients need k >= n inside the schedule");
    }
    std::vector<double> g(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        const std::size_t tj = k - static_cast<std::size_t>(j);
        double acc = step_difference(sr, sched, k, tj);
        for (int i = 1; i <= n; ++i) {
            acc -= f[static_cast<std::size_t>(i - 1)] *
                   step_difference(sr, sched, k - static_cast<std::size_t>(i), tj);
        }
        g[static_cast<std::size_t>(j)] = acc;
    }
    return g;
}

namespace {

// Per-window coefficients by the better-conditioned of the two routes. The
// companion-basis solve degrades when one mode dominates the derivative
// coordinates, while the pole-only determinant (the admissibility notion)
// can still be healthy; in that band the closed form takes over. Throws only
// when both routes are degenerate.
WindowCoefficients window_coefficients(const CompanionRealization& r,
                                       const Spectrum& sp,
                                       std::span<const double> window) {
    std::optional<WindowCoefficients> solve;
    try {
        solve = f_coeffs_solve(r, window);
        if (solve->scaled_delta >= 1e-6) return *solve;
    } catch (const InadmissibleSequenceError&) {
    }
    std::optional<WindowCoefficients> closed;
    try {
        closed = f_coeffs_closed(sp, window);
    } catch (const InadmissibleSequenceError&) {
        if (!solve) throw;
    }
    if (!closed) return *solve;
    if (!solve || closed->scaled_delta > solve->scaled_delta) return *closed;
    return *solve;
}

} // namespace

std::vector<StepCoefficients> model_coefficients(const TransferFunction& tf,
                                                 const SamplingSchedule& sched,
                                                 Hold hold, bool keep_going) {
    const int n = tf.order();
    const CompanionRealization r = realize(tf);
    const Spectrum sp = spectrum(tf);
    const CompanionRealization sr =
        hold == Hold::zoh ? step_realization(tf) : CompanionRealization{};

    std::vector<StepCoefficients> rows;
    for (std::size_t k = static_cast<std::size_t>(n); k < sched.size(); ++k) {
        StepCoefficients row;
        row.k = k;
        row.hold = hold;
        const std::vector<double> window = sched.window_periods(k, n);
        try {
            WindowCoefficients fc = window_coefficients(r, sp, window);
            row.scaled_delta = fc.scaled_delta;
            row.marginal = fc.marginal;
            row.g = hold == Hold::impulse ? g_coeffs_impulse(r, sched, k, fc.f)
                                          : g_coeffs_zoh(sr, sched, k, fc.f);
            row.f = std::move(fc.f);
        } catch (const InadmissibleSequenceError& e) {
            if (!keep_going) {
                throw InadmissibleSequenceError(e.what(), e.scaled_delta, k);
            }
            row.scaled_delta = e.scaled_delta;
            row.f.assign(static_cast<std::size_t>(n),
                         std::numeric_limits<double>::quiet_NaN());
            row.g.assign(static_cast<std::size_t>(hold == Hold::impulse ? n : n + 1),
                         std::numeric_limits<double>::quiet_NaN());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<double> simulate(const TransferFunction& tf, const SamplingSchedule& sched,
                             std::span<const double> inputs, Hold hold) {
    if (inputs.size() != sched.size()) {
        throw std::invalid_argument("inputs and schedule must have the same length");
    }
    const int n = tf.order();
    const CompanionRealization r = realize(tf);
    const Spectrum sp = spectrum(tf);
    const CompanionRealization resp = hold == Hold::zoh ? step_realization(tf) : r;

    const std::size_t warmup =
        std::min(inputs.size(),
                 static_cast<std::size_t>(hold == Hold::zoh ? n + 1 : n));
    std::vector<double> y = convolution_warmup(resp, sched, inputs, hold, warmup);
    y.resize(inputs.size(), 0.0);

    for (std::size_t k = warmup; k < inputs.size(); ++k) {
        const std::vector<double> window = sched.window_periods(k, n);
        WindowCoefficients fc;
        try {
            fc = window_coefficients(r, sp, window);
        } catch (const InadmissibleSequenceError& e) {
            throw InadmissibleSequenceError(e.what(), e.scaled_delta, k);
        }
        const std::vector<double> g = hold == Hold::impulse
                                          ? g_coeffs_impulse(r, sched, k, fc.f)
                                          : g_coeffs_zoh(resp, sched, k, fc.f);
        double acc = 0.0;
        for (int i = 1; i <= n; ++i) {
            acc += fc.f[static_cast<std::size_t>(i - 1)] *
                   y[k - static_cast<std::size_t>(i)];
        }
        for (std::size_t j = 0; j < g.size(); ++j) {
            acc += g[j] * inputs[k - j];
        }
        y[k] = acc;
    }
    return y;
}

} // namespace ltidisc
