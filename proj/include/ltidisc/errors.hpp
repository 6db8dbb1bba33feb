#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace ltidisc {

/// Invalid continuous-time system description (improper, non-finite, empty).
class InvalidSystemError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Polynomial root finding did not converge.
class RootFindingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Matrix exponential argument too large to evaluate in double precision.
class ExpmOverflowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sampling window is degenerate: the coefficient system is singular
/// (or numerically indistinguishable from singular).
class InadmissibleSequenceError : public std::runtime_error {
public:
    InadmissibleSequenceError(const std::string& what, double scaled_delta,
                              std::optional<std::size_t> step = std::nullopt)
        : std::runtime_error(what), scaled_delta(scaled_delta), step(step) {}

    /// |det| of the window matrix, normalized by the Hadamard column bound.
    double scaled_delta;
    /// Recursion step at which the failure surfaced, when known.
    std::optional<std::size_t> step;
};

/// A geometric test's precondition does not hold; caller should fall back
/// to the generic determinant check or reduce the model further.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration or input document.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ltidisc
