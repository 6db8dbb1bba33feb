#pragma once

#include "ltidisc/transfer_function.hpp"

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace ltidisc {

struct EigenvalueGroup {
    std::complex<double> value;
    int multiplicity = 1;
};

/// Eigenvalues of the system with multiplicities plus the modal coefficients
/// C_i of the impulse-response expansion h(t) = sum_i C_i phi_i(t), where the
/// fundamental solutions phi_i(t) = t^p exp(lambda t) are enumerated group by
/// group with the power p ascending (p = 0 .. multiplicity-1).
struct Spectrum {
    std::vector<EigenvalueGroup> eigenvalues;
    std::vector<std::complex<double>> modal_coeffs;
    /// Set when distinct computed roots were merged into a multiple root.
    bool clustered_roots = false;

    int order() const;

    /// phi_i(t) for flat basis index i (grouped enumeration as above).
    std::complex<double> basis_eval(std::size_t index, double t) const;

    /// Re(sum_i C_i phi_i(t)); asserts the imaginary residue is negligible.
    double impulse_eval(double t) const;
};

/// Poles of `tf` with multiplicities and partial-fraction modal coefficients.
///
/// Roots come from the eigenvalues of the companion matrix; clusters of roots
/// closer than `cluster_tol` (relative) are merged into one root of higher
/// multiplicity and refined on the appropriate polynomial derivative.
Spectrum spectrum(const TransferFunction& tf, double cluster_tol = 1e-8);

/// Matrix of the fundamental solutions evaluated on a time grid:
/// entry (l, j) = phi_l(alphas[j]). Used for the window determinant and the
/// closed-form coefficient path.
Eigen::MatrixXcd fundamental_matrix(const Spectrum& sp, std::span<const double> alphas);

/// |det(F)| after normalizing each column of F to unit Euclidean norm, i.e.
/// |det| divided by its Hadamard bound; dimensionless in [0, 1].
double scaled_abs_det(const Eigen::MatrixXcd& F);

} // namespace ltidisc
