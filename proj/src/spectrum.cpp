#include "ltidisc/spectrum.hpp"

#include "ltidisc/errors.hpp"
#include "ltidisc/realization.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace ltidisc {

namespace {

using std::complex;

// p evaluated at z; coeffs highest degree first.
complex<double> polyval(std::span<const double> coeffs, complex<double> z) {
    complex<double> v = 0.0;
    for (double c : coeffs) v = v * z + c;
    return v;
}

std::vector<double> polyder(std::span<const double> coeffs) {
    const std::size_t deg = coeffs.size() - 1;
    std::vector<double> d(deg);
    for (std::size_t i = 0; i < deg; ++i) {
        d[i] = coeffs[i] * static_cast<double>(deg - i);
    }
    return d;
}

// A multiplicity-m root of p is a simple root of p^{(m-1)}. A few Newton
// steps there restore the accuracy the QR eigensolver loses on defective
// companion matrices. Real inputs stay exactly on the real axis.
complex<double> polish_root(const std::vector<double>& poly, complex<double> z, int multiplicity) {
    std::vector<double> p = poly;
    for (int i = 1; i < multiplicity; ++i) p = polyder(p);
    if (p.size() < 2) return z;
    const std::vector<double> dp = polyder(p);
    for (int iter = 0; iter < 3; ++iter) {
        const complex<double> fv = polyval(p, z);
        const complex<double> dv = polyval(dp, z);
        if (std::abs(dv) < 1e-300) break;
        const complex<double> step = fv / dv;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        z -= step;
    }
    return z;
}

struct Cluster {
    complex<double> value;
    int count = 0;
    double spread = 0.0;
};

// Greedy clustering of roots within a relative tolerance.
std::vector<Cluster> cluster_roots(std::vector<complex<double>> roots, double tol) {
    std::vector<Cluster> clusters;
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    for (const auto& z : roots) {
        bool merged = false;
        for (auto& cl : clusters) {
            const double scale = std::max(1.0, std::abs(cl.value));
            if (std::abs(z - cl.value) <= tol * scale) {
                cl.spread = std::max(cl.spread, std::abs(z - cl.value));
                cl.value = (cl.value * static_cast<double>(cl.count) + z) /
                           static_cast<double>(cl.count + 1);
                cl.count += 1;
                merged = true;
                break;
            }
        }
        if (!merged) clusters.push_back({z, 1, 0.0});
    }
    return clusters;
}

} // namespace

int Spectrum::order() const {
    int n = 0;
    for (const auto& g : eigenvalues) n += g.multiplicity;
    return n;
}

std::complex<double> Spectrum::basis_eval(std::size_t index, double t) const {
    std::size_t i = index;
    for (const auto& g : eigenvalues) {
        if (i < static_cast<std::size_t>(g.multiplicity)) {
            return std::pow(t, static_cast<double>(i)) * std::exp(g.value * t);
        }
        i -= static_cast<std::size_t>(g.multiplicity);
    }
    throw std::out_of_range("basis index out of range");
}

double Spectrum::impulse_eval(double t) const {
    complex<double> acc = 0.0;
    for (std::size_t i = 0; i < modal_coeffs.size(); ++i) {
        acc += modal_coeffs[i] * basis_eval(i, t);
    }
    assert(std::abs(acc.imag()) <= 1e-10 * std::max(1.0, std::abs(acc)));
    return acc.real();
}

Spectrum spectrum(const TransferFunction& tf, double cluster_tol) {
    const int n = tf.order();
    const CompanionRealization r = realize(tf);

    Eigen::EigenSolver<Eigen::MatrixXd> solver(r.A, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw RootFindingError("eigenvalue iteration failed to converge");
    }

    // The real Schur form yields exact conjugate pairs, so it is enough to
    // cluster the open upper half plane and the real axis separately.
    std::vector<complex<double>> upper, real_axis;
    for (int i = 0; i < n; ++i) {
        const complex<double> z = solver.eigenvalues()(i);
        if (z.imag() > 0.0) {
            upper.push_back(z);
        } else if (z.imag() == 0.0) {
            real_axis.push_back(z);
        }
    }

    Spectrum sp;
    std::vector<Cluster> pairs;
    for (auto& cl : cluster_roots(std::move(upper), cluster_tol)) {
        const double scale = std::max(1.0, std::abs(cl.value));
        if (cl.value.imag() <= 0.5 * cluster_tol * scale) {
            // The pair and its mirror image collapse onto the axis: a
            // (near-)multiple real root reported with a tiny imaginary part.
            for (int i = 0; i < 2 * cl.count; ++i) real_axis.push_back(cl.value.real());
            sp.clustered_roots = true;
        } else {
            if (cl.count > 1 && cl.spread > 0.0) sp.clustered_roots = true;
            pairs.push_back(cl);
        }
    }
    std::vector<Cluster> reals = cluster_roots(std::move(real_axis), cluster_tol);
    for (const auto& cl : reals) {
        if (cl.count > 1 && cl.spread > 0.0) sp.clustered_roots = true;
    }

    for (auto& cl : reals) {
        const complex<double> z = polish_root(tf.den(), cl.value.real(), cl.count);
        sp.eigenvalues.push_back({complex<double>(z.real(), 0.0), cl.count});
    }
    for (auto& cl : pairs) {
        complex<double> z = polish_root(tf.den(), cl.value, cl.count);
        if (z.imag() <= 0.0) z = cl.value; // polish fell off the half plane
        sp.eigenvalues.push_back({z, cl.count});
        sp.eigenvalues.push_back({std::conj(z), cl.count});
    }
    if (sp.order() != n) {
        throw RootFindingError("conjugate pairing lost roots; denominator may be ill-scaled");
    }

    std::sort(sp.eigenvalues.begin(), sp.eigenvalues.end(),
              [](const EigenvalueGroup& a, const EigenvalueGroup& b) {
                  if (a.value.real() != b.value.real())
                      return a.value.real() < b.value.real();
                  return std::abs(a.value.imag()) == std::abs(b.value.imag())
                             ? a.value.imag() > b.value.imag()
                             : std::abs(a.value.imag()) < std::abs(b.value.imag());
              });

    // Modal coefficients: match derivatives of sum C_i t^p e^{lambda t} at 0
    // to the Markov parameters. The column for (lambda, p) has d-th entry
    // d (d-1) ... (d-p+1) lambda^{d-p}.
    Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(n, n);
    int col = 0;
    for (const auto& g : sp.eigenvalues) {
        for (int p = 0; p < g.multiplicity; ++p, ++col) {
            for (int d = p; d < n; ++d) {
                double factor = 1.0;
                for (int q = 0; q < p; ++q) factor *= static_cast<double>(d - q);
                V(d, col) = factor * std::pow(g.value, static_cast<double>(d - p));
            }
        }
    }
    const Eigen::VectorXcd C = V.fullPivLu().solve(r.x0.cast<complex<double>>());
    sp.modal_coeffs.assign(C.data(), C.data() + n);

    // Enforce conjugate symmetry across paired groups (partner groups are
    // adjacent after the sort above).
    for (std::size_t g = 0, base = 0; g < sp.eigenvalues.size(); ++g) {
        const auto& grp = sp.eigenvalues[g];
        const std::size_t m = static_cast<std::size_t>(grp.multiplicity);
        if (grp.value.imag() > 0.0) {
            for (std::size_t p = 0; p < m; ++p) {
                const complex<double> avg =
                    0.5 * (sp.modal_coeffs[base + p] +
                           std::conj(sp.modal_coeffs[base + m + p]));
                sp.modal_coeffs[base + p] = avg;
                sp.modal_coeffs[base + m + p] = std::conj(avg);
            }
            base += 2 * m;
            ++g;
        } else {
            for (std::size_t p = 0; p < m; ++p) {
                assert(std::abs(sp.modal_coeffs[base + p].imag()) <=
                       1e-10 * std::max(1.0, std::abs(sp.modal_coeffs[base + p])));
                sp.modal_coeffs[base + p].imag(0.0);
            }
            base += m;
        }
    }
    return sp;
}

Eigen::MatrixXcd fundamental_matrix(const Spectrum& sp, std::span<const double> alphas) {
    const int n = sp.order();
    Eigen::MatrixXcd F(n, static_cast<Eigen::Index>(alphas.size()));
    for (Eigen::Index j = 0; j < F.cols(); ++j) {
        const double t = alphas[static_cast<std::size_t>(j)];
        int row = 0;
        for (const auto& g : sp.eigenvalues) {
            const std::complex<double> e = std::exp(g.value * t);
            double tp = 1.0;
            for (int p = 0; p < g.multiplicity; ++p, ++row) {
                F(row, j) = tp * e;
                tp *= t;
            }
        }
    }
    return F;
}

double scaled_abs_det(const Eigen::MatrixXcd& F) {
    Eigen::MatrixXcd S = F;
    for (Eigen::Index j = 0; j < S.cols(); ++j) {
        const double norm = S.col(j).norm();
        if (norm == 0.0) return 0.0;
        S.col(j) /= norm;
    }
    return std::abs(S.partialPivLu().determinant());
}

} // namespace ltidisc
