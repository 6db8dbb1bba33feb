#include "ltidisc/expm.hpp"

#include "ltidisc/errors.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace ltidisc {

namespace {

using Eigen::MatrixXd;

// Degree-m diagonal Pade approximant of exp evaluated at A.
// exp(A) ~ (-U + V)^{-1} (U + V) with U the odd and V the even part.
MatrixXd pade_3_5_7_9(const MatrixXd& A, int m) {
    static const std::array<double, 4> b3 = {120, 60, 12, 1};
    static const std::array<double, 6> b5 = {30240, 15120, 3360, 420, 30, 1};
    static const std::array<double, 8> b7 = {17297280, 8648640, 1995840, 277200,
                                             25200, 1512, 56, 1};
    static const std::array<double, 10> b9 = {17643225600, 8821612800, 2075673600,
                                              302702400,  30270240,   2162160,
                                              110880,     3960,       90,
                                              1};
    const double* b = nullptr;
    switch (m) {
        case 3: b = b3.data(); break;
        case 5: b = b5.data(); break;
        case 7: b = b7.data(); break;
        case 9: b = b9.data(); break;
        default: throw std::logic_error("unsupported pade degree");
    }
    const auto n = A.rows();
    const MatrixXd I = MatrixXd::Identity(n, n);
    const MatrixXd A2 = A * A;
    // Powers A^0, A^2, A^4, ... up to A^{m-1}.
    std::array<MatrixXd, 5> even;
    even[0] = I;
    for (int k = 1; 2 * k <= m - 1; ++k) even[static_cast<std::size_t>(k)] = even[static_cast<std::size_t>(k - 1)] * A2;

    MatrixXd Usum = MatrixXd::Zero(n, n);
    MatrixXd V = MatrixXd::Zero(n, n);
    for (int k = 0; 2 * k + 1 <= m; ++k) Usum += b[2 * k + 1] * even[static_cast<std::size_t>(k)];
    for (int k = 0; 2 * k <= m; ++k) V += b[2 * k] * even[static_cast<std::size_t>(k)];
    const MatrixXd U = A * Usum;
    return (V - U).partialPivLu().solve(V + U);
}

MatrixXd pade_13(const MatrixXd& A) {
    static const std::array<double, 14> b = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};
    const auto n = A.rows();
    const MatrixXd I = MatrixXd::Identity(n, n);
    const MatrixXd A2 = A * A;
    const MatrixXd A4 = A2 * A2;
    const MatrixXd A6 = A2 * A4;
    const MatrixXd U =
        A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 +
             b[3] * A2 + b[1] * I);
    const MatrixXd V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 +
                       b[4] * A4 + b[2] * A2 + b[0] * I;
    return (V - U).partialPivLu().solve(V + U);
}

} // namespace

Eigen::MatrixXd expm(const Eigen::MatrixXd& M, double t) {
    if (M.rows() != M.cols()) {
        throw std::invalid_argument("expm: matrix must be square");
    }
    if (M.rows() == 0) {
        throw std::invalid_argument("expm: matrix must be non-empty");
    }
    if (M.rows() > kMaxExpmDim) {
        throw std::invalid_argument("expm: dimension exceeds supported bound");
    }
    if (!M.allFinite() || !std::isfinite(t)) {
        throw std::invalid_argument("expm: non-finite input");
    }

    const MatrixXd A = M * t;
    const double norm = A.cwiseAbs().colwise().sum().maxCoeff(); // 1-norm

    // Degree switch points from the scaling-and-squaring analysis.
    if (norm <= 1.495585217958292e-2) return pade_3_5_7_9(A, 3);
    if (norm <= 2.539398330063230e-1) return pade_3_5_7_9(A, 5);
    if (norm <= 9.504178996162932e-1) return pade_3_5_7_9(A, 7);
    if (norm <= 2.097847961257068e0) return pade_3_5_7_9(A, 9);

    const double theta13 = 5.371920351148152;
    int s = 0;
    if (norm > theta13) {
        s = static_cast<int>(std::ceil(std::log2(norm / theta13)));
    }
    if (s > 60) {
        throw ExpmOverflowError("expm: t*||M|| too large to evaluate");
    }
    MatrixXd R = pade_13(A / std::ldexp(1.0, s));
    for (int i = 0; i < s; ++i) R = R * R;
    if (!R.allFinite()) {
        throw ExpmOverflowError("expm: result overflowed double precision");
    }
    return R;
}

} // namespace ltidisc
