#pragma once

#include "ltidisc/transfer_function.hpp"

#include <Eigen/Dense>

namespace ltidisc {

/// State matrix in bottom-companion form together with the Markov-parameter
/// initial state; (A, x0, c) is the observability canonical realization of
/// the impulse response.
struct CompanionRealization {
    Eigen::MatrixXd A;    ///< n x n, superdiagonal ones, negated ODE coefficients in the last row
    Eigen::VectorXd x0;   ///< first n Markov parameters h(0), h'(0), ...
    Eigen::RowVectorXd c; ///< selector row [1, 0, ..., 0]

    int order() const { return static_cast<int>(A.rows()); }
};

/// How to evaluate the impulse response at negative times.
enum class ResponseMode {
    causal,   ///< h(t) = 0 for t < 0; h(0) = h(0+)
    extended, ///< analytic continuation c exp(At) x0 for any real t
};

/// Build the companion realization of `tf`. The Markov parameters come from
/// the division recursion h_1 = b_1, h_i = b_i - sum_{j<i} a_j h_{i-j}.
CompanionRealization realize(const TransferFunction& tf);

/// Companion realization of order n+1 whose causal impulse response is the
/// step response of `tf` (the system followed by an integrator).
CompanionRealization step_realization(const TransferFunction& tf);

/// c exp(At) x0, either causally truncated or analytically extended.
double impulse_response(const CompanionRealization& r, double t,
                        ResponseMode mode = ResponseMode::causal);

} // namespace ltidisc
