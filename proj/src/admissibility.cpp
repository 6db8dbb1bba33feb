#include "ltidisc/admissibility.hpp"

#include "ltidisc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ltidisc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Distance from x to the nearest integral multiple of `period` (>= 0).
double dist_to_multiple(double x, double period) {
    const double r = std::remainder(x, period);
    return std::abs(r);
}

double wrap_angle(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

std::string format_angle_finding(const char* what, double angle, double period) {
    std::ostringstream os;
    const double m = std::round(angle / period);
    os << what << ": angle " << angle << " within tolerance of " << m
       << (period == kPi ? " * pi" : " * 2pi");
    return os.str();
}

// Appends the counterclockwise arc from `from` to `to` (wrapping at 2 pi)
// as one or two non-wrapping arcs.
void push_ccw_arc(std::vector<AngularArc>& arcs, double from, double to) {
    from = wrap_angle(from);
    to = wrap_angle(to);
    if (from < to) {
        arcs.push_back({from, to});
    } else {
        arcs.push_back({from, kTwoPi});
        arcs.push_back({0.0, to});
    }
}

double golden_section_max(double lo, double hi, const auto& f, double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return std::max(fc, fd);
}

} // namespace

const char* to_string(ResonanceKind kind) {
    switch (kind) {
        case ResonanceKind::second_order_pi_multiple: return "second-order-pi-multiple";
        case ResonanceKind::coplanarity: return "coplanarity";
        case ResonanceKind::equal_real_part_two_pi: return "equal-real-part-2pi";
        case ResonanceKind::generic_degeneracy: return "generic-degeneracy";
    }
    return "unknown";
}

AdmissibilityReport check_generic(const Spectrum& sp, std::span<const double> periods,
                                  const Thresholds& th) {
    const int n = sp.order();
    if (periods.size() != static_cast<std::size_t>(n) &&
        periods.size() != static_cast<std::size_t>(n) - 1) {
        throw std::invalid_argument("expected n (or n-1) periods for an order-n window");
    }
    // alpha_0 = 0, alpha_j = z_1 + ... + z_j. Only the first n-1 periods
    // enter the window matrix; the n-th period never affects admissibility.
    std::vector<double> alphas(static_cast<std::size_t>(n), 0.0);
    for (int j = 1; j < n; ++j) {
        const double z = periods[static_cast<std::size_t>(j - 1)];
        if (!(z > 0.0)) throw std::invalid_argument("sampling periods must be positive");
        alphas[static_cast<std::size_t>(j)] = alphas[static_cast<std::size_t>(j - 1)] + z;
    }

    AdmissibilityReport report;
    report.thresholds = th;
    report.delta_magnitude = scaled_abs_det(fundamental_matrix(sp, alphas));

    // Named resonances. Coplanarity: some complex pair whose rotation hits a
    // pi multiple at every alpha_j (alpha_0 = 0 trivially does).
    for (const auto& g : sp.eigenvalues) {
        const double b = g.value.imag();
        if (b <= 0.0) continue;
        bool all_on_multiple = true;
        std::vector<double> angles;
        std::vector<int> indices;
        for (int j = 1; j < n; ++j) {
            const double angle = b * alphas[static_cast<std::size_t>(j)];
            angles.push_back(angle);
            indices.push_back(j);
            if (dist_to_multiple(angle, kPi) >= th.angle_tol) {
                all_on_multiple = false;
                break;
            }
        }
        if (all_on_multiple && n >= 2) {
            ResonanceFinding finding;
            finding.kind = n == 2 ? ResonanceKind::second_order_pi_multiple
                                  : ResonanceKind::coplanarity;
            finding.angles = angles;
            finding.indices = indices;
            finding.detail = "rotations of pair Im=" + std::to_string(b) +
                             " all sit on pi multiples";
            report.resonances.push_back(std::move(finding));
        }
    }

    // Equal-real-part resonance: all eigenvalue groups share one real part
    // and some pair of instants resonates with every eigenfrequency.
    std::vector<double> bs;
    for (const auto& g : sp.eigenvalues) {
        if (g.value.imag() > 0.0) bs.push_back(g.value.imag());
    }
    std::size_t distinct_groups = 0;
    for (const auto& g : sp.eigenvalues) {
        if (g.value.imag() >= 0.0) ++distinct_groups;
    }
    if (!bs.empty() && distinct_groups >= 2) {
        bool equal_real = true;
        const double re0 = sp.eigenvalues.front().value.real();
        for (const auto& g : sp.eigenvalues) {
            if (std::abs(g.value.real() - re0) >
                1e-9 * std::max(1.0, std::abs(re0))) {
                equal_real = false;
                break;
            }
        }
        if (equal_real) {
            for (int i = 0; i < n && equal_real; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    const double gap = alphas[static_cast<std::size_t>(j)] -
                                       alphas[static_cast<std::size_t>(i)];
                    bool all_pairs = true;
                    for (double b : bs) {
                        if (dist_to_multiple(b * gap, kTwoPi) >= th.angle_tol) {
                            all_pairs = false;
                            break;
                        }
                    }
                    if (all_pairs) {
                        ResonanceFinding finding;
                        finding.kind = ResonanceKind::equal_real_part_two_pi;
                        finding.indices = {i, j};
                        for (double b : bs) finding.angles.push_back(b * gap);
                        finding.detail =
                            format_angle_finding("equal real parts", bs.front() * gap, kTwoPi);
                        report.resonances.push_back(std::move(finding));
                        equal_real = false; // one finding is enough
                        break;
                    }
                }
            }
        }
    }

    if (report.delta_magnitude < th.inadmissible && report.resonances.empty()) {
        ResonanceFinding finding;
        finding.kind = ResonanceKind::generic_degeneracy;
        finding.detail = "scaled window determinant below threshold";
        report.resonances.push_back(std::move(finding));
    }

    if (report.delta_magnitude < th.inadmissible || !report.resonances.empty()) {
        report.verdict = Verdict::inadmissible;
    } else if (report.delta_magnitude < th.marginal) {
        report.verdict = Verdict::marginal;
    } else {
        report.verdict = Verdict::admissible;
    }
    return report;
}

std::optional<ResonanceFinding> check_second_order(double b, double T, double angle_tol) {
    if (!(b > 0.0) || !(T > 0.0)) {
        throw std::invalid_argument("check_second_order needs b > 0 and T > 0");
    }
    const double angle = b * T;
    if (dist_to_multiple(angle, kPi) < angle_tol) {
        ResonanceFinding finding;
        finding.kind = ResonanceKind::second_order_pi_multiple;
        finding.angles = {angle};
        finding.indices = {1};
        finding.detail = format_angle_finding("sampling resonance", angle, kPi);
        return finding;
    }
    return std::nullopt;
}

std::vector<ResonanceFinding> check_third_order(double lambda, double a, double b,
                                                double alpha1, double alpha2,
                                                double angle_tol) {
    if (!(b > 0.0) || !(alpha1 > 0.0) || !(alpha2 > alpha1)) {
        throw std::invalid_argument("check_third_order needs b > 0 and 0 < alpha1 < alpha2");
    }
    std::vector<ResonanceFinding> findings;

    // (a) coplanarity: both rotations on pi multiples (alpha_0 = 0 is one
    // trivially).
    if (dist_to_multiple(b * alpha1, kPi) < angle_tol &&
        dist_to_multiple(b * alpha2, kPi) < angle_tol) {
        ResonanceFinding finding;
        finding.kind = ResonanceKind::coplanarity;
        finding.angles = {b * alpha1, b * alpha2};
        finding.indices = {1, 2};
        finding.detail = "both rotations sit on pi multiples";
        findings.push_back(std::move(finding));
    }

    // (b) equal real parts: some rotation gap on a 2 pi multiple.
    if (std::abs(lambda - a) <= 1e-9 * std::max(1.0, std::abs(a))) {
        const std::array<double, 3> alphas = {0.0, alpha1, alpha2};
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                const double gap = b * (alphas[static_cast<std::size_t>(j)] -
                                        alphas[static_cast<std::size_t>(i)]);
                if (dist_to_multiple(gap, kTwoPi) < angle_tol) {
                    ResonanceFinding finding;
                    finding.kind = ResonanceKind::equal_real_part_two_pi;
                    finding.angles = {gap};
                    finding.indices = {i, j};
                    finding.detail = format_angle_finding("equal real parts", gap, kTwoPi);
                    findings.push_back(std::move(finding));
                }
            }
        }
    }
    return findings;
}

bool ArcSet::allows_angle(double total_angle) const {
    if (total_angle <= min_angle) return false; // alpha2 must exceed alpha1
    const double frac = wrap_angle(total_angle);
    for (const auto& arc : per_rotation) {
        if (arc.contains(frac)) return true;
    }
    if (total_angle < kTwoPi) {
        for (const auto& arc : first_rotation_extra) {
            if (arc.contains(frac)) return true;
        }
    }
    return false;
}

bool ArcSet::allows_alpha(double alpha2, double b) const {
    if (alpha_star && alpha2 > *alpha_star) return true;
    return allows_angle(b * alpha2);
}

ArcSet allowed_arcs_third_order(double lambda, double a, double b, double alpha1) {
    if (!(b > 0.0) || !(alpha1 > 0.0)) {
        throw std::invalid_argument("allowed_arcs_third_order needs b > 0 and alpha1 > 0");
    }
    const Thresholds th;
    if (dist_to_multiple(b * alpha1, kPi) < th.angle_tol) {
        throw InadmissibleSequenceError("alpha1 is resonant: b*alpha1 on a pi multiple", 0.0);
    }
    if (lambda == 0.0) {
        throw std::invalid_argument("lambda must be nonzero to classify the geometry");
    }

    ArcSet arcs;
    arcs.theta1 = wrap_angle(b * alpha1);
    arcs.min_angle = b * alpha1;
    arcs.sign_case = lambda > 0.0 ? +1 : -1;

    if (lambda > 0.0) {
        // Forbidden arc: rotations congruent to (0, theta1); everything else
        // is allowed on every rotation.
        arcs.per_rotation.push_back({arcs.theta1, kTwoPi});

        // Beyond alpha_star the window vector is longer than any vector on
        // the plane/surface intersection, so no further rotation can be
        // degenerate. The intersection radius at azimuth theta solves
        // rho^{(lambda-a)/a} = K(theta), so crossings of the spiral require
        // exp((lambda-a) alpha) <= max K; for lambda <= a they never cease.
        if (lambda > a) {
            const double theta_p1 = b * alpha1;
            const std::array<double, 3> y0 = {1.0, 0.0, 1.0};
            const std::array<double, 3> y1 = {std::exp(a * alpha1) * std::cos(theta_p1),
                                              std::exp(a * alpha1) * std::sin(theta_p1),
                                              std::exp(lambda * alpha1)};
            const double nx = y0[1] * y1[2] - y0[2] * y1[1];
            const double ny = y0[2] * y1[0] - y0[0] * y1[2];
            const double nz = y0[0] * y1[1] - y0[1] * y1[0];
            const auto K = [&](double theta) {
                return -(nx * std::cos(theta) + ny * std::sin(theta)) / nz;
            };
            // Grid scan plus golden-section refinement of the maximum.
            const int grid = 2048;
            double best = 0.0;
            int best_i = 0;
            for (int i = 0; i < grid; ++i) {
                const double v = K(kTwoPi * i / grid);
                if (v > best) {
                    best = v;
                    best_i = i;
                }
            }
            const double lo = kTwoPi * (best_i - 1) / grid;
            const double hi = kTwoPi * (best_i + 1) / grid;
            const double kmax = golden_section_max(lo, hi, K, 1e-6);
            if (kmax > 0.0) {
                arcs.alpha_star = std::max(0.0, std::log(kmax) / (lambda - a));
            }
        }
    } else {
        // The chord P0-P1 has direction theta1/2 + pi/2; the parallel
        // diameter ends R1, R0 bound the two arcs the descending spiral
        // crosses once per rotation. Allowed: P0->P1 and R1->R0, plus
        // P1->R1 on the first rotation only.
        const double r1 = wrap_angle(arcs.theta1 / 2.0 + kPi / 2.0);
        const double r0 = wrap_angle(arcs.theta1 / 2.0 + 1.5 * kPi);
        arcs.per_rotation.push_back({0.0, arcs.theta1});
        push_ccw_arc(arcs.per_rotation, r1, r0);
        push_ccw_arc(arcs.first_rotation_extra, arcs.theta1, r1);
    }
    return arcs;
}

bool reduction_check_fourth_order(double lambda1, double lambda2, double a, double b,
                                  const std::array<double, 4>& alphas) {
    if (!(b > 0.0)) {
        throw std::invalid_argument("reduction check needs b > 0");
    }
    using Vec3 = Eigen::Vector3d;
    const auto curve = [&](double lambda, double alpha) {
        return Vec3(std::exp(a * alpha) * std::cos(b * alpha),
                    std::exp(a * alpha) * std::sin(b * alpha), std::exp(lambda * alpha));
    };
    std::array<Vec3, 4> c1, c2;
    for (std::size_t i = 0; i < 4; ++i) {
        c1[i] = curve(lambda1, alphas[i]);
        c2[i] = curve(lambda2, alphas[i]);
    }

    // Precondition: every 3-subset of each projected family independent.
    const auto subset_ok = [](const std::array<Vec3, 4>& c) {
        for (int skip = 0; skip < 4; ++skip) {
            Eigen::Matrix3d M;
            int col = 0;
            for (int i = 0; i < 4; ++i) {
                if (i == skip) continue;
                M.col(col++) = c[static_cast<std::size_t>(i)];
            }
            Eigen::Matrix3d S = M;
            for (int j = 0; j < 3; ++j) S.col(j) /= S.col(j).norm();
            if (std::abs(S.determinant()) < 1e-10) return false;
        }
        return true;
    };
    if (!subset_ok(c1) || !subset_ok(c2)) {
        throw PreconditionError(
            "projected 3-subsets are dependent: reduce further or use generic check");
    }

    // Express the held-out vector in each projected family; the window
    // vectors are dependent exactly when the two coordinate solutions agree.
    const int held_out = 3;
    Eigen::Matrix3d M1, M2;
    int col = 0;
    for (int i = 0; i < 4; ++i) {
        if (i == held_out) continue;
        M1.col(col) = c1[static_cast<std::size_t>(i)];
        M2.col(col) = c2[static_cast<std::size_t>(i)];
        ++col;
    }
    const Vec3 x = M1.partialPivLu().solve(c1[held_out]);
    const Vec3 y = M2.partialPivLu().solve(c2[held_out]);
    const double scale = std::max({1.0, x.cwiseAbs().maxCoeff(), y.cwiseAbs().maxCoeff()});
    const bool equation_holds = (x - y).cwiseAbs().maxCoeff() <= 1e-8 * scale;
    return !equation_holds;
}

} // namespace ltidisc
