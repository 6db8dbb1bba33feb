#pragma once

#include <vector>

namespace ltidisc {

/// Continuous-time, strictly proper SISO transfer function B(s)/A(s).
///
/// Coefficients are stored highest degree first. The denominator is kept
/// monic: a non-monic denominator is accepted at the boundary and both
/// polynomials are divided through by its leading coefficient.
class TransferFunction {
public:
    /// `num` may be shorter than `den`; deg(num) < deg(den) is required.
    TransferFunction(std::vector<double> num, std::vector<double> den);

    int order() const { return static_cast<int>(den_.size()) - 1; }

    /// Monic denominator, length order()+1, highest degree first.
    const std::vector<double>& den() const { return den_; }

    /// Numerator with leading zeros trimmed, highest degree first.
    /// May be empty (identically zero system).
    const std::vector<double>& num() const { return num_; }

    /// Numerator padded on the left with zeros to length order().
    std::vector<double> num_padded() const;

    /// G(0) = trailing numerator coefficient over trailing denominator
    /// coefficient.
    double static_gain() const;

private:
    std::vector<double> num_;
    std::vector<double> den_;
};

} // namespace ltidisc
