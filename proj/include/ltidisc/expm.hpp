#pragma once

#include <Eigen/Dense>

namespace ltidisc {

/// Largest matrix dimension accepted by expm(); the models in scope are
/// small, and the Pade evaluation below is tuned for that regime.
inline constexpr int kMaxExpmDim = 12;

/// exp(M*t) by scaling-and-squaring with diagonal Pade approximants.
///
/// Valid for any real t (including negative). Throws ExpmOverflowError when
/// t*||M|| is too extreme to represent the result in double precision, and
/// std::invalid_argument for non-square, non-finite, or oversized input.
Eigen::MatrixXd expm(const Eigen::MatrixXd& M, double t = 1.0);

} // namespace ltidisc
