#include "ltidisc/aperiodic.hpp"
#include "ltidisc/errors.hpp"
#include "ltidisc/periodic.hpp"
#include "ltidisc/realization.hpp"
#include "ltidisc/validation.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ltidisc;

namespace {

TransferFunction lag1() { return TransferFunction({1.0}, {1.0, 1.0}); }

// (s+1)(s+2) with unit numerator
TransferFunction two_pole() { return TransferFunction({1.0}, {1.0, 3.0, 2.0}); }

std::vector<double> random_inputs(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> u(count);
    for (double& v : u) {
        v = -1.0 + static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0;
    }
    return u;
}

} // namespace

TEST_CASE("g_vectors on the first-order lag") {
    const CompanionRealization r = realize(lag1());
    const std::vector<double> periods = {1.0};
    const auto G = g_vectors(r, periods);
    REQUIRE(G.size() == 2);
    CHECK(G[0](0) == doctest::Approx(1.0));
    CHECK(G[1](0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("g_vectors collapse to x0 as periods vanish") {
    const CompanionRealization r = realize(two_pole());
    const std::vector<double> periods = {1e-12, 1e-12};
    const auto G = g_vectors(r, periods);
    for (const auto& Gi : G) {
        CHECK((Gi - r.x0).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("first component of G_i is the impulse response at alpha_i") {
    const TransferFunction tf = random_stable_system(4, 11);
    const CompanionRealization r = realize(tf);
    const std::vector<double> periods = {0.3, 0.7, 1.1, 0.5};
    const auto G = g_vectors(r, periods);
    double alpha = 0.0;
    for (std::size_t i = 0; i < G.size(); ++i) {
        CHECK(G[i](0) ==
              doctest::Approx(impulse_response(r, alpha)).epsilon(1e-10));
        if (i < periods.size()) alpha += periods[i];
    }
}

TEST_CASE("f coefficients: first order is the period exponential") {
    const auto fc = f_coeffs_solve(realize(lag1()), std::vector<double>{0.5});
    REQUIRE(fc.f.size() == 1);
    CHECK(fc.f[0] == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
}

TEST_CASE("f coefficients: equal periods give symmetric functions") {
    const auto fc = f_coeffs_solve(realize(two_pole()), std::vector<double>{1.0, 1.0});
    REQUIRE(fc.f.size() == 2);
    CHECK(fc.f[0] == doctest::Approx(std::exp(-1.0) + std::exp(-2.0)).epsilon(1e-10));
    CHECK(fc.f[1] == doctest::Approx(-std::exp(-3.0)).epsilon(1e-10));
}

TEST_CASE("resonant window is rejected") {
    // Pure oscillator: rotation by pi collapses G_1 onto G_0.
    const TransferFunction osc({1.0}, {1.0, 0.0, 1.0});
    const std::vector<double> periods = {std::acos(-1.0), 0.7};
    CHECK_THROWS_AS((void)f_coeffs_solve(realize(osc), periods),
                    InadmissibleSequenceError);
    CHECK_THROWS_AS((void)f_coeffs_closed(spectrum(osc), periods),
                    InadmissibleSequenceError);
}

TEST_CASE("solve and closed-form f paths agree") {
    SUBCASE("two real poles, periods (1, 2)") {
        const auto fa = f_coeffs_solve(realize(two_pole()), std::vector<double>{1.0, 2.0});
        const auto fb = f_coeffs_closed(spectrum(two_pole()), std::vector<double>{1.0, 2.0});
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(fa.f[i] == doctest::Approx(fb.f[i]).epsilon(1e-10));
        }
    }
    SUBCASE("random systems and windows") {
        Thresholds well_conditioned;
        well_conditioned.marginal = 1e-6;
        int checked = 0;
        for (std::uint64_t seed = 0; checked < 50; ++seed) {
            const int n = 1 + static_cast<int>(seed % 5);
            const TransferFunction tf = random_stable_system(n, 31 * n + seed);
            const Spectrum sp = spectrum(tf);
            SamplingSchedule sched = SamplingSchedule::constant(1.0, 1);
            try {
                sched = random_admissible_schedule(sp, static_cast<std::size_t>(n),
                                                   seed + 1, {0.2, 1.5}, nullptr,
                                                   well_conditioned);
            } catch (const InadmissibleSequenceError&) {
                continue; // spectrum admits no well-conditioned window here
            }
            ++checked;
            const auto fa = f_coeffs_solve(realize(tf), sched.periods());
            const auto fb = f_coeffs_closed(sp, sched.periods());
            double fmax = 1.0;
            for (double v : fa.f) fmax = std::max(fmax, std::abs(v));
            for (std::size_t i = 0; i < fa.f.size(); ++i) {
                CHECK(std::abs(fa.f[i] - fb.f[i]) <= 1e-9 * fmax);
            }
        }
    }
}

TEST_CASE("impulse g coefficients start at the first Markov parameter") {
    const CompanionRealization r = realize(lag1());
    const SamplingSchedule sched(std::vector<double>{0.0, 0.4, 1.1, 1.5});
    const auto fc = f_coeffs_solve(r, sched.window_periods(2, 1));
    const auto g = g_coeffs_impulse(r, sched, 2, fc.f);
    REQUIRE(g.size() == 1);
    CHECK(g[0] == doctest::Approx(1.0)); // h(0) = 1 regardless of the schedule

    const TransferFunction tf = random_stable_system(3, 99);
    const CompanionRealization r3 = realize(tf);
    const SamplingSchedule s3 =
        random_admissible_schedule(spectrum(tf), 6, 5, {0.2, 1.2});
    const auto f3 = f_coeffs_solve(r3, s3.window_periods(4, 3));
    const auto g3 = g_coeffs_impulse(r3, s3, 4, f3.f);
    CHECK(g3[0] == doctest::Approx(r3.x0(0)).epsilon(1e-9));
}

TEST_CASE("ZOH g coefficients reproduce the classic first-order values") {
    const CompanionRealization sr = step_realization(lag1());
    const SamplingSchedule sched = SamplingSchedule::constant(1.0, 4);
    const auto fc = f_coeffs_solve(realize(lag1()), sched.window_periods(2, 1));
    const auto g = g_coeffs_zoh(sr, sched, 2, fc.f);
    REQUIRE(g.size() == 2);
    CHECK(g[0] == doctest::Approx(0.0)); // strict properness
    CHECK(g[1] == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("zero input produces zero output") {
    const SamplingSchedule sched = SamplingSchedule::constant(0.7, 9);
    const std::vector<double> u(sched.size(), 0.0);
    for (Hold hold : {Hold::impulse, Hold::zoh}) {
        const auto y = simulate(two_pole(), sched, u, hold);
        for (double v : y) CHECK(v == 0.0);
    }
}

TEST_CASE("recursion matches the convolution oracle") {
    const TransferFunction tf = random_stable_system(3, 2024);
    const Spectrum sp = spectrum(tf);
    const SamplingSchedule sched = random_admissible_schedule(sp, 50, 77, {0.2, 1.3});
    const std::vector<double> u = random_inputs(sched.size(), 4);
    for (Hold hold : {Hold::impulse, Hold::zoh}) {
        const auto y = simulate(tf, sched, u, hold);
        const auto ref = convolution_oracle(tf, sched, u, hold);
        const auto cmp = compare_outputs(y, ref, 1e-8);
        CHECK(cmp.pass);
    }
}

TEST_CASE("two-pole impulse recursion matches oracle to 1e-10") {
    const SamplingSchedule sched = SamplingSchedule::constant(1.0, 19);
    const std::vector<double> u = random_inputs(sched.size(), 123);
    const auto y = simulate(two_pole(), sched, u, Hold::impulse);
    const auto ref = convolution_oracle(two_pole(), sched, u, Hold::impulse);
    CHECK(compare_outputs(y, ref, 1e-10).pass);
}

TEST_CASE("extended recurrence: h(s + alpha_n) = sum f_i h(s + alpha_{n-i})") {
    const TransferFunction tf = random_stable_system(4, 55);
    const CompanionRealization r = realize(tf);
    const std::vector<double> periods = {0.4, 0.9, 0.6, 1.2};
    const auto fc = f_coeffs_solve(r, periods);
    std::vector<double> alphas(periods.size() + 1, 0.0);
    for (std::size_t i = 0; i < periods.size(); ++i) alphas[i + 1] = alphas[i] + periods[i];
    for (int step = 0; step <= 20; ++step) {
        const double s = 0.25 * step;
        const double lhs = impulse_response(r, s + alphas[4], ResponseMode::extended);
        double rhs = 0.0;
        for (int i = 1; i <= 4; ++i) {
            rhs += fc.f[static_cast<std::size_t>(i - 1)] *
                   impulse_response(r, s + alphas[static_cast<std::size_t>(4 - i)],
                                    ResponseMode::extended);
        }
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("constant schedule reproduces the periodic coefficients") {
    const TransferFunction tf = random_stable_system(3, 321);
    const double T0 = 0.8;
    const PeriodicModel m = discretize_periodic(tf, T0, Hold::zoh);
    const SamplingSchedule sched = SamplingSchedule::constant(T0, 6);
    const auto rows = model_coefficients(tf, sched, Hold::zoh);
    REQUIRE(!rows.empty());
    const auto& row = rows.back();
    for (std::size_t i = 0; i < m.a.size(); ++i) {
        CHECK(std::abs(row.f[i] - m.a[i]) <= 1e-10 * std::max(1.0, std::abs(m.a[i])));
    }
    for (std::size_t j = 0; j < m.b.size(); ++j) {
        CHECK(std::abs(row.g[j] - m.b[j]) <= 1e-10 * std::max(1.0, std::abs(m.b[j])));
    }
}

TEST_CASE("simulate reports the failing step and validates lengths") {
    const TransferFunction osc({1.0}, {1.0, 0.0, 1.0});
    // Second window (T_1, T_2) = (pi, x) is resonant at k = 2.
    const SamplingSchedule sched(std::vector<double>{0.0, 0.5, 0.5 + std::acos(-1.0), 4.4});
    const std::vector<double> u(sched.size(), 1.0);
    try {
        (void)simulate(osc, sched, u, Hold::impulse);
        FAIL("expected inadmissible step");
    } catch (const InadmissibleSequenceError& e) {
        REQUIRE(e.step.has_value());
        CHECK(*e.step == 3);
    }
    CHECK_THROWS_AS((void)simulate(osc, sched, std::vector<double>{1.0}, Hold::impulse),
                    std::invalid_argument);
}

TEST_CASE("coefficients depend on period differences, not absolute instants") {
    const TransferFunction tf = random_stable_system(3, 61);
    const std::vector<double> periods = {0.5, 0.9, 0.4, 1.1, 0.7};
    const SamplingSchedule at_zero = SamplingSchedule::from_periods(periods, 0.0);
    const SamplingSchedule shifted = SamplingSchedule::from_periods(periods, 17.25);
    const auto a = model_coefficients(tf, at_zero, Hold::zoh);
    const auto b = model_coefficients(tf, shifted, Hold::zoh);
    REQUIRE(a.size() == b.size());
    for (std::size_t r = 0; r < a.size(); ++r) {
        for (std::size_t i = 0; i < a[r].f.size(); ++i) {
            CHECK(a[r].f[i] == doctest::Approx(b[r].f[i]).epsilon(1e-13));
        }
        for (std::size_t j = 0; j < a[r].g.size(); ++j) {
            CHECK(a[r].g[j] == doctest::Approx(b[r].g[j]).epsilon(1e-13));
        }
    }
}

TEST_CASE("extreme arguments surface the exponential overflow") {
    // Unstable pole at +1000: the G vectors blow past double range.
    const TransferFunction hot({1.0}, {1.0, -1000.0});
    CHECK_THROWS_AS((void)g_vectors(realize(hot), std::vector<double>{2.0}),
                    ExpmOverflowError);
}

TEST_CASE("simulate handles inputs shorter than the warm-up") {
    const TransferFunction tf = random_stable_system(3, 21);
    const SamplingSchedule sched(std::vector<double>{0.0, 0.6});
    const std::vector<double> u = {1.0, -0.5};
    const auto y = simulate(tf, sched, u, Hold::zoh);
    const auto ref = convolution_oracle(tf, sched, u, Hold::zoh);
    CHECK(compare_outputs(y, ref, 1e-12).pass);
}

TEST_CASE("ill-conditioned companion basis falls back to the closed form") {
    // A weakly damped high-frequency pair dominates the derivative
    // coordinates: the window solve matrix is numerically singular while the
    // pole-only determinant stays healthy, so the recursion must still run.
    const TransferFunction tf = random_stable_system(5, 1109);
    const Spectrum sp = spectrum(tf);
    Thresholds wide;
    wide.marginal = 1e-6;
    const SamplingSchedule sched =
        random_admissible_schedule(sp, 50, 77 * 109 + 1, {0.2, 1.5}, nullptr, wide);
    const std::vector<double> u = random_inputs(sched.size(), 13 * 109 + 5);
    const auto y = simulate(tf, sched, u, Hold::impulse);
    const auto ref = convolution_oracle(tf, sched, u, Hold::impulse);
    CHECK(compare_outputs(y, ref, 1e-8).pass);
}

TEST_CASE("model_coefficients keep-going mode emits NaN rows") {
    const TransferFunction osc({1.0}, {1.0, 0.0, 1.0});
    const SamplingSchedule sched(
        std::vector<double>{0.0, 0.5, 0.5 + std::acos(-1.0), 4.4, 5.0});
    CHECK_THROWS_AS((void)model_coefficients(osc, sched, Hold::impulse),
                    InadmissibleSequenceError);
    const auto rows = model_coefficients(osc, sched, Hold::impulse, true);
    REQUIRE(rows.size() == 3);
    CHECK(std::isnan(rows[1].f[0])); // window ending at k = 3 is resonant
    CHECK(!std::isnan(rows[2].f[0]));
}
