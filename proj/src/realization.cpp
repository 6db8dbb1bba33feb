#include "ltidisc/realization.hpp"

#include "ltidisc/expm.hpp"

namespace ltidisc {

CompanionRealization realize(const TransferFunction& tf) {
    const int n = tf.order();
    const std::vector<double>& den = tf.den();
    const std::vector<double> num = tf.num_padded();

    CompanionRealization r;
    r.A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) r.A(i, i + 1) = 1.0;
    // Last row [-a_n, ..., -a_1]; den = [1, a_1, ..., a_n].
    for (int j = 0; j < n; ++j) r.A(n - 1, j) = -den[static_cast<std::size_t>(n - j)];

    r.x0 = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        double h = num[static_cast<std::size_t>(i)];
        for (int j = 1; j <= i; ++j) {
            h -= den[static_cast<std::size_t>(j)] * r.x0(i - j);
        }
        r.x0(i) = h;
    }

    r.c = Eigen::RowVectorXd::Zero(n);
    r.c(0) = 1.0;
    return r;
}

CompanionRealization step_realization(const TransferFunction& tf) {
    // G(s)/s: multiply the denominator by s.
    std::vector<double> den = tf.den();
    den.push_back(0.0);
    return realize(TransferFunction(tf.num(), std::move(den)));
}

double impulse_response(const CompanionRealization& r, double t, ResponseMode mode) {
    if (mode == ResponseMode::causal && t < 0.0) return 0.0;
    return r.c * expm(r.A, t) * r.x0;
}

} // namespace ltidisc
