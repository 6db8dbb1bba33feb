#include "ltidisc/schedule.hpp"

#include "ltidisc/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace ltidisc {

SamplingSchedule::SamplingSchedule(std::vector<double> instants)
    : instants_(std::move(instants)) {
    if (instants_.empty()) {
        throw std::invalid_argument("schedule needs at least one instant");
    }
    periods_.reserve(instants_.size() - 1);
    for (std::size_t k = 1; k < instants_.size(); ++k) {
        if (!std::isfinite(instants_[k])) {
            throw std::invalid_argument("schedule instant is not finite");
        }
        const double T = instants_[k] - instants_[k - 1];
        if (!(T > 0.0)) {
            throw std::invalid_argument("sampling instants must be strictly increasing");
        }
        periods_.push_back(T);
    }
}

SamplingSchedule SamplingSchedule::from_periods(const std::vector<double>& periods, double t0) {
    std::vector<double> instants;
    instants.reserve(periods.size() + 1);
    instants.push_back(t0);
    double t = t0;
    for (double T : periods) {
        t += T;
        instants.push_back(t);
    }
    return SamplingSchedule(std::move(instants));
}

SamplingSchedule SamplingSchedule::constant(double T0, std::size_t num_periods, double t0) {
    std::vector<double> instants(num_periods + 1);
    for (std::size_t k = 0; k <= num_periods; ++k) {
        instants[k] = t0 + static_cast<double>(k) * T0;
    }
    return SamplingSchedule(std::move(instants));
}

std::vector<double> SamplingSchedule::window_periods(std::size_t k, int n) const {
    if (k < static_cast<std::size_t>(n) || k >= instants_.size()) {
        throw std::out_of_range("window does not fit the schedule");
    }
    return {periods_.begin() + static_cast<std::ptrdiff_t>(k) - n,
            periods_.begin() + static_cast<std::ptrdiff_t>(k)};
}

} // namespace ltidisc
