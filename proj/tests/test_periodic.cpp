#include "ltidisc/errors.hpp"
#include "ltidisc/periodic.hpp"
#include "ltidisc/realization.hpp"
#include "ltidisc/validation.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <random>

using namespace ltidisc;

namespace {

// Unit-gain three-lag benchmark with time constants 10, 7.5, 5.
TransferFunction benchmark_system() {
    return TransferFunction({1.0}, {375.0, 162.5, 22.5, 1.0});
}

std::vector<double> random_inputs(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> u(count);
    for (double& v : u) {
        v = -1.0 + static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0;
    }
    return u;
}

} // namespace

TEST_CASE("a coefficients match the published three-lag table") {
    const Spectrum sp = spectrum(benchmark_system());
    const std::vector<double> a2 = a_coeffs(sp, 2.0);
    CHECK(std::abs(a2[0] - 2.2549) < 5e-4);
    CHECK(std::abs(a2[1] - (-1.689)) < 5e-4);
    CHECK(std::abs(a2[2] - 0.4203) < 5e-4);

    const std::vector<double> a12 = a_coeffs(sp, 12.0);
    CHECK(std::abs(a12[0] - 0.5938) < 5e-4);
    CHECK(std::abs(a12[1] - (-0.106)) < 5e-4);
    CHECK(std::abs(a12[2] - 0.0055) < 5e-4);
}

TEST_CASE("a coefficients for two real poles") {
    const Spectrum sp = spectrum(TransferFunction({1.0}, {1.0, 3.0, 2.0}));
    const std::vector<double> a = a_coeffs(sp, 1.0);
    CHECK(a[0] == doctest::Approx(std::exp(-1.0) + std::exp(-2.0)).epsilon(1e-10));
    CHECK(a[1] == doctest::Approx(-std::exp(-3.0)).epsilon(1e-10));
}

TEST_CASE("b coefficients match the published three-lag table") {
    const TransferFunction tf = benchmark_system();
    const Spectrum sp = spectrum(tf);

    const std::vector<double> a2 = a_coeffs(sp, 2.0);
    const std::vector<double> b2 = b_coeffs(tf, 2.0, Hold::zoh, a2);
    REQUIRE(b2.size() == 4);
    CHECK(b2[0] == doctest::Approx(0.0));
    CHECK(std::abs(b2[1] - 0.0026) < 5e-4);
    CHECK(std::abs(b2[2] - 0.0092) < 5e-4);
    CHECK(std::abs(b2[3] - 0.0018) < 5e-4);

    const std::vector<double> a10 = a_coeffs(sp, 10.0);
    const std::vector<double> b10 = b_coeffs(tf, 10.0, Hold::zoh, a10);
    CHECK(std::abs(b10[1] - 0.1586) < 5e-4);
    CHECK(std::abs(b10[2] - 0.2257) < 5e-4);
    CHECK(std::abs(b10[3] - 0.0181) < 5e-4);
}

TEST_CASE("first-order ZOH discretization") {
    const TransferFunction lag({1.0}, {1.0, 1.0});
    const PeriodicModel m = discretize_periodic(lag, 1.0, Hold::zoh);
    REQUIRE(m.b.size() == 2);
    CHECK(m.a[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(m.b[0] == doctest::Approx(0.0));
    CHECK(m.b[1] == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("static-gain identity on the benchmark sweep") {
    const TransferFunction tf = benchmark_system();
    const PeriodicModel m6 = discretize_periodic(tf, 6.0, Hold::zoh);
    CHECK(std::abs(m6.sum_b() - 0.1736) < 5e-4);
    const PeriodicModel m8 = discretize_periodic(tf, 8.0, Hold::zoh);
    CHECK(std::abs(m8.sum_b() - 0.2882) < 5e-4);
    for (double T0 : {2.0, 4.0, 6.0, 8.0, 10.0, 12.0}) {
        const PeriodicModel m = discretize_periodic(tf, T0, Hold::zoh);
        CHECK(std::abs(gain_identity(m)) < 1e-9);
    }
}

TEST_CASE("gain identity scales with the static gain") {
    const TransferFunction sys({3.0}, {1.0, 2.0}); // gain 1.5
    const PeriodicModel m = discretize_periodic(sys, 0.7, Hold::zoh);
    CHECK(std::abs(gain_identity(m, sys.static_gain())) < 1e-9);
}

TEST_CASE("small periods leave the input coefficients far below the a_i") {
    // Fast sampling of the three-lag benchmark: the b_j sit in the fourth
    // decimal place while the a_i stay order one, so identification from
    // such data is precision-limited.
    const PeriodicModel m = discretize_periodic(benchmark_system(), 1.0, Hold::zoh);
    double max_b = 0.0, min_a = 1e300;
    for (double b : m.b) max_b = std::max(max_b, std::abs(b));
    for (double a : m.a) min_a = std::min(min_a, std::abs(a));
    CHECK(max_b < 1e-2 * min_a);
    CHECK(m.sum_b() < 0.01);
}

TEST_CASE("coefficient magnitudes trend with the sampling period") {
    const TransferFunction tf = benchmark_system();
    std::vector<PeriodicModel> sweep;
    for (double T0 : {2.0, 4.0, 6.0, 8.0, 10.0, 12.0}) {
        sweep.push_back(discretize_periodic(tf, T0, Hold::zoh));
    }
    for (std::size_t k = 1; k < sweep.size(); ++k) {
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(std::abs(sweep[k].a[i]) < std::abs(sweep[k - 1].a[i]));
        }
        CHECK(sweep[k].b[1] > sweep[k - 1].b[1]);
        CHECK(sweep[k].b[2] > sweep[k - 1].b[2]);
    }
}

TEST_CASE("periodic coefficients equal the aperiodic window coefficients") {
    for (int n = 1; n <= 5; ++n) {
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            const TransferFunction tf = random_stable_system(n, 500 + 17 * n + seed);
            const double T0 = 0.4 + 0.2 * static_cast<double>(seed);
            const Spectrum sp = spectrum(tf);
            if (check_periodic_resonance(sp, T0).verdict != Verdict::admissible) continue;
            const std::vector<double> a = a_coeffs(sp, T0);
            const std::vector<double> periods(static_cast<std::size_t>(n), T0);
            const auto fc = f_coeffs_solve(realize(tf), periods);
            // The solve path carries the window conditioning; agreement at
            // 1e-10 is a claim about the two formulas, not about solving
            // near-singular systems.
            if (fc.scaled_delta < 1e-5) continue;
            double scale = 1.0;
            for (double v : a) scale = std::max(scale, std::abs(v));
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(std::abs(a[i] - fc.f[i]) <= 1e-10 * scale);
            }
        }
    }
}

TEST_CASE("dead time in whole periods leaves coefficients untouched") {
    const TransferFunction tf = benchmark_system();
    const double T0 = 2.0;
    const PeriodicModel plain = discretize_periodic(tf, T0, Hold::zoh);
    const PeriodicModel delayed = dead_time_model(tf, T0, 2.0 * T0);
    CHECK(delayed.dead_shift == 2);
    REQUIRE(delayed.b.size() == plain.b.size());
    for (std::size_t j = 0; j < plain.b.size(); ++j) {
        CHECK(std::abs(delayed.b[j] - plain.b[j]) < 1e-14);
    }
    for (std::size_t i = 0; i < plain.a.size(); ++i) {
        CHECK(delayed.a[i] == plain.a[i]);
    }

    const PeriodicModel none = dead_time_model(tf, T0, 0.0);
    CHECK(none.dead_shift == 0);
    CHECK(none.dead_time == 0.0);
}

TEST_CASE("fractional dead time matches the shifted convolution oracle") {
    const TransferFunction lag({1.0}, {1.0, 1.0});
    const double T0 = 1.0, Td = 0.5;
    const PeriodicModel m = dead_time_model(lag, T0, Td);
    CHECK(m.dead_shift == 1);
    const SamplingSchedule sched = SamplingSchedule::constant(T0, 29);
    const std::vector<double> u = random_inputs(sched.size(), 8);
    const auto y = simulate_periodic(lag, m, u);
    const auto ref = convolution_oracle(lag, sched, u, Hold::zoh, Td);
    CHECK(compare_outputs(y, ref, 1e-8).pass);
}

TEST_CASE("periodic resonance check") {
    const Spectrum osc = spectrum(TransferFunction({1.0}, {1.0, 0.0, 1.0}));
    CHECK(check_periodic_resonance(osc, std::numbers::pi).verdict ==
          Verdict::inadmissible);

    const Spectrum reals = spectrum(TransferFunction({1.0}, {1.0, 3.0, 2.0}));
    for (double T0 : {0.1, 1.0, 3.3, 10.0}) {
        CHECK(check_periodic_resonance(reals, T0).verdict == Verdict::admissible);
    }

    // b = 3, T0 = 1: off the pi grid, healthy determinant.
    const Spectrum fast =
        spectrum(TransferFunction({1.0}, {1.0, 1.0, 9.25})); // poles -0.5 +/- 3j
    const AdmissibilityReport report = check_periodic_resonance(fast, 1.0);
    CHECK(report.verdict == Verdict::admissible);
    CHECK(report.delta_magnitude > 1e-8);
}

TEST_CASE("pulse polynomial roots are the pole exponentials") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const int n = 1 + static_cast<int>(seed % 5);
        const TransferFunction tf = random_stable_system(n, 900 + seed);
        const Spectrum sp = spectrum(tf);
        const double T0 = 0.9;
        const std::vector<double> a = a_coeffs(sp, T0);

        // Companion matrix of z^n - a_1 z^{n-1} - ... - a_n.
        Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i + 1 < n; ++i) C(i, i + 1) = 1.0;
        for (int j = 0; j < n; ++j) {
            C(n - 1, j) = a[static_cast<std::size_t>(n - 1 - j)];
        }
        Eigen::VectorXcd roots = Eigen::EigenSolver<Eigen::MatrixXd>(C, false).eigenvalues();

        std::vector<std::complex<double>> expected;
        for (const auto& g : sp.eigenvalues) {
            for (int m = 0; m < g.multiplicity; ++m) {
                expected.push_back(std::exp(g.value * T0));
            }
        }
        // Greedy multiset match.
        std::vector<bool> used(expected.size(), false);
        for (int i = 0; i < n; ++i) {
            double best = 1e300;
            std::size_t best_j = 0;
            for (std::size_t j = 0; j < expected.size(); ++j) {
                if (used[j]) continue;
                const double d = std::abs(roots(i) - expected[j]);
                if (d < best) {
                    best = d;
                    best_j = j;
                }
            }
            used[best_j] = true;
            CHECK(best < 1e-8);
        }
    }
}

TEST_CASE("period sweeps are safe to run concurrently") {
    const TransferFunction tf = benchmark_system();
    std::vector<std::future<PeriodicModel>> jobs;
    for (double T0 : {2.0, 4.0, 6.0, 8.0, 10.0, 12.0}) {
        jobs.push_back(std::async(std::launch::async, [&tf, T0] {
            return discretize_periodic(tf, T0, Hold::zoh);
        }));
    }
    std::vector<PeriodicModel> parallel;
    for (auto& job : jobs) parallel.push_back(job.get());
    for (std::size_t i = 0; i < parallel.size(); ++i) {
        const PeriodicModel serial =
            discretize_periodic(tf, parallel[i].T0, Hold::zoh);
        for (std::size_t j = 0; j < serial.b.size(); ++j) {
            CHECK(parallel[i].b[j] == serial.b[j]);
        }
    }
}

TEST_CASE("resonant period is rejected when building coefficients") {
    const TransferFunction osc({1.0}, {1.0, 0.0, 1.0});
    CHECK_THROWS_AS((void)discretize_periodic(osc, std::numbers::pi, Hold::zoh),
                    InadmissibleSequenceError);
}

TEST_CASE("dead time rejects negative values and impulse hold") {
    const TransferFunction lag({1.0}, {1.0, 1.0});
    CHECK_THROWS_AS((void)dead_time_model(lag, 1.0, -0.5), std::invalid_argument);
    CHECK_THROWS_AS((void)dead_time_model(lag, 1.0, 0.5, Hold::impulse),
                    std::invalid_argument);
}
