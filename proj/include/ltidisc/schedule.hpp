#pragma once

#include <cstddef>
#include <vector>

namespace ltidisc {

/// Strictly increasing sampling instants t_0 < t_1 < ... < t_K and the
/// derived period sequence T_k = t_k - t_{k-1}.
class SamplingSchedule {
public:
    explicit SamplingSchedule(std::vector<double> instants);

    static SamplingSchedule from_periods(const std::vector<double>& periods, double t0 = 0.0);
    static SamplingSchedule constant(double T0, std::size_t num_periods, double t0 = 0.0);

    const std::vector<double>& instants() const { return instants_; }
    const std::vector<double>& periods() const { return periods_; }

    std::size_t size() const { return instants_.size(); }
    double at(std::size_t k) const { return instants_[k]; }

    /// Periods (T_{k-n+1}, ..., T_k) entering the step-k coefficient window.
    std::vector<double> window_periods(std::size_t k, int n) const;

private:
    std::vector<double> instants_;
    std::vector<double> periods_;
};

} // namespace ltidisc
