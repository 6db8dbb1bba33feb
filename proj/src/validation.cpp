#include "ltidisc/validation.hpp"

#include "ltidisc/admissibility.hpp"
#include "ltidisc/errors.hpp"
#include "ltidisc/expm.hpp"
#include "ltidisc/realization.hpp"

#include <cmath>
#include <random>

namespace ltidisc {

namespace {

// Deterministic uniform double in [lo, hi); the distribution is hand-rolled
// so results do not depend on the standard library implementation.
double uniform(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

std::vector<double> poly_from_roots(const std::vector<std::complex<double>>& roots) {
    std::vector<std::complex<double>> coeffs = {1.0};
    for (const auto& r : roots) {
        coeffs.push_back(0.0);
        for (std::size_t i = coeffs.size() - 1; i > 0; --i) {
            coeffs[i] -= r * coeffs[i - 1];
        }
    }
    std::vector<double> real_coeffs(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        real_coeffs[i] = coeffs[i].real();
    }
    return real_coeffs;
}

} // namespace

std::vector<double> convolution_oracle(const TransferFunction& tf,
                                       const SamplingSchedule& sched,
                                       std::span<const double> inputs, Hold hold,
                                       double Td) {
    if (inputs.size() != sched.size()) {
        throw std::invalid_argument("inputs and schedule must have the same length");
    }
    if (Td < 0.0) {
        throw std::invalid_argument("dead time must be nonnegative");
    }
    if (Td > 0.0 && hold != Hold::zoh) {
        throw std::invalid_argument("dead time is modelled for the ZOH input only");
    }
    const CompanionRealization resp =
        hold == Hold::zoh ? step_realization(tf) : realize(tf);

    std::vector<double> y(inputs.size(), 0.0);
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i <= k; ++i) {
            const double weight =
                hold == Hold::impulse ? inputs[i]
                                      : inputs[i] - (i > 0 ? inputs[i - 1] : 0.0);
            acc += impulse_response(resp, sched.at(k) - sched.at(i) - Td,
                                    ResponseMode::causal) *
                   weight;
        }
        y[k] = acc;
    }
    return y;
}

ComparisonResult compare_outputs(std::span<const double> actual,
                                 std::span<const double> reference, double tolerance) {
    if (actual.size() != reference.size()) {
        throw std::invalid_argument("signals must have the same length");
    }
    ComparisonResult res;
    res.tolerance_used = tolerance;
    double scale = 0.0;
    for (double v : reference) scale = std::max(scale, std::abs(v));
    scale = std::max(scale, 1e-12); // absolute floor for near-zero signals
    for (std::size_t k = 0; k < actual.size(); ++k) {
        const double err = std::abs(actual[k] - reference[k]);
        if (err > res.max_abs_error) {
            res.max_abs_error = err;
            res.index_of_worst = k;
        }
    }
    res.max_rel_error = res.max_abs_error / scale;
    res.pass = res.max_rel_error <= tolerance;
    return res;
}

TransferFunction random_stable_system(int n, std::uint64_t seed) {
    if (n < 1 || n > 8) {
        throw std::invalid_argument("supported orders are 1..8");
    }
    std::mt19937_64 rng(seed);

    const int max_pairs = n / 2;
    const int pairs = max_pairs > 0 ? static_cast<int>(rng() % static_cast<std::uint64_t>(max_pairs + 1)) : 0;

    // Keep poles pairwise separated; near-coincident modes make every
    // sampling window ill conditioned, which is a property of the system,
    // not of the schedule.
    const double min_gap = 0.1;
    std::vector<std::complex<double>> roots;
    const auto well_separated = [&](const std::complex<double>& z) {
        for (const auto& r : roots) {
            if (std::abs(z - r) < min_gap) return false;
        }
        return true;
    };
    const auto place = [&](bool pair) {
        for (int attempt = 0; attempt < 200; ++attempt) {
            const double re = uniform(rng, -3.0, -0.05);
            const double im = pair ? uniform(rng, 0.1, 5.0) : 0.0;
            const std::complex<double> z(re, im);
            if (well_separated(z) && (!pair || im >= min_gap / 2.0)) {
                roots.push_back(z);
                if (pair) roots.push_back(std::conj(z));
                return;
            }
        }
        throw std::logic_error("pole placement failed");
    };
    for (int i = 0; i < pairs; ++i) place(true);
    while (static_cast<int>(roots.size()) < n) place(false);

    std::vector<double> den = poly_from_roots(roots);

    const int num_degree = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    std::vector<double> num(static_cast<std::size_t>(num_degree) + 1);
    // A numerator that nearly cancels a pole leaves that mode almost
    // unobservable, which degenerates every sampling window; keep the
    // realization comfortably minimal.
    for (int attempt = 0; attempt < 200; ++attempt) {
        for (double& c : num) c = uniform(rng, -2.0, 2.0);
        // Keep the leading coefficient away from zero so the degree is stable.
        if (std::abs(num[0]) < 0.3) num[0] = num[0] < 0.0 ? -0.3 : 0.3;
        bool minimal = true;
        for (const auto& root : roots) {
            std::complex<double> value = 0.0;
            double scale = 0.0;
            for (double c : num) {
                value = value * root + c;
                scale = scale * std::abs(root) + std::abs(c);
            }
            if (std::abs(value) < 0.05 * std::max(scale, 1e-30)) {
                minimal = false;
                break;
            }
        }
        if (minimal) break;
    }

    return TransferFunction(std::move(num), std::move(den));
}

SamplingSchedule random_admissible_schedule(const Spectrum& sp, std::size_t K,
                                            std::uint64_t seed,
                                            std::pair<double, double> T_range,
                                            std::vector<double>* rejected,
                                            const Thresholds& th) {
    const int n = sp.order();
    if (K < static_cast<std::size_t>(n)) {
        throw std::invalid_argument("schedule needs at least n periods");
    }
    if (!(T_range.first > 0.0) || !(T_range.second > T_range.first)) {
        throw std::invalid_argument("invalid period range");
    }
    std::mt19937_64 rng(seed);
    const int attempts_per_period = 200;
    const long rejection_budget = 50000;
    long rejections = 0;

    // The window determinant depends only on the first n-1 periods of each
    // window, so each new period is validated against the window in which it
    // is the last determining element. That keeps rejection sampling local:
    // redraw the period that closed the degenerate window, and back up one
    // period when the degeneracy sits further upstream.
    std::vector<double> periods;
    periods.reserve(K);
    while (periods.size() < K) {
        bool placed = false;
        for (int attempt = 0; attempt < attempts_per_period; ++attempt) {
            const double T = uniform(rng, T_range.first, T_range.second);
            periods.push_back(T);
            bool ok = true;
            if (n >= 2 && periods.size() >= static_cast<std::size_t>(n) - 1) {
                const std::span<const double> prefix(
                    periods.data() + periods.size() - (static_cast<std::size_t>(n) - 1),
                    static_cast<std::size_t>(n) - 1);
                ok = check_generic(sp, prefix, th).verdict == Verdict::admissible;
            }
            if (ok) {
                placed = true;
                break;
            }
            periods.pop_back();
            if (rejected) rejected->push_back(T);
            if (++rejections >= rejection_budget) {
                throw InadmissibleSequenceError(
                    "could not draw an admissible period in the given range", 0.0);
            }
        }
        if (!placed) {
            if (periods.empty()) {
                throw InadmissibleSequenceError(
                    "could not draw an admissible period in the given range", 0.0);
            }
            periods.pop_back();
        }
    }
    return SamplingSchedule::from_periods(periods);
}

std::vector<double> zoh_state_update_reference(const TransferFunction& tf, double T0,
                                               std::span<const double> inputs) {
    const int n = tf.order();
    // Controllable canonical form; deliberately a different realization from
    // the library's observability form.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) A(i, i + 1) = 1.0;
    for (int j = 0; j < n; ++j) {
        A(n - 1, j) = -tf.den()[static_cast<std::size_t>(n - j)];
    }
    Eigen::VectorXd B = Eigen::VectorXd::Zero(n);
    B(n - 1) = 1.0;
    const std::vector<double> num = tf.num_padded();
    Eigen::RowVectorXd C(n);
    for (int j = 0; j < n; ++j) {
        C(j) = num[static_cast<std::size_t>(n - 1 - j)];
    }

    // Discretize with the augmented-matrix exponential:
    // exp([[A, B], [0, 0]] T) = [[Ad, Bd], [0, I]].
    Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(n + 1, n + 1);
    aug.topLeftCorner(n, n) = A;
    aug.topRightCorner(n, 1) = B;
    const Eigen::MatrixXd E = expm(aug, T0);
    const Eigen::MatrixXd Ad = E.topLeftCorner(n, n);
    const Eigen::VectorXd Bd = E.topRightCorner(n, 1);

    std::vector<double> y(inputs.size(), 0.0);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        y[k] = C * x;
        x = Ad * x + Bd * inputs[k];
    }
    return y;
}

} // namespace ltidisc
