#include "ltidisc/transfer_function.hpp"

#include "ltidisc/errors.hpp"

#include <cmath>
#include <limits>

namespace ltidisc {

namespace {

void trim_leading_zeros(std::vector<double>& coeffs) {
    std::size_t lead = 0;
    while (lead < coeffs.size() && coeffs[lead] == 0.0) {
        ++lead;
    }
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(lead));
}

} // namespace

TransferFunction::TransferFunction(std::vector<double> num, std::vector<double> den)
    : num_(std::move(num)), den_(std::move(den)) {
    for (double c : den_) {
        if (!std::isfinite(c)) {
            throw InvalidSystemError("denominator coefficient is not finite");
        }
    }
    for (double c : num_) {
        if (!std::isfinite(c)) {
            throw InvalidSystemError("numerator coefficient is not finite");
        }
    }
    trim_leading_zeros(den_);
    if (den_.size() < 2) {
        throw InvalidSystemError("denominator must have degree >= 1");
    }
    if (den_[0] != 1.0) {
        const double lead = den_[0];
        for (double& c : den_) c /= lead;
        for (double& c : num_) c /= lead;
        den_[0] = 1.0;
    }
    trim_leading_zeros(num_);
    if (num_.size() >= den_.size()) {
        throw InvalidSystemError(
            "transfer function must be strictly proper (deg num < deg den)");
    }
}

std::vector<double> TransferFunction::num_padded() const {
    std::vector<double> padded(static_cast<std::size_t>(order()), 0.0);
    const std::size_t offset = padded.size() - num_.size();
    for (std::size_t i = 0; i < num_.size(); ++i) {
        padded[offset + i] = num_[i];
    }
    return padded;
}

double TransferFunction::static_gain() const {
    if (num_.empty()) return 0.0;
    const double a0 = den_.back();
    if (a0 == 0.0) return std::numeric_limits<double>::infinity();
    return num_.back() / a0;
}

} // namespace ltidisc
