#pragma once

#include "ltidisc/admissibility.hpp"
#include "ltidisc/aperiodic.hpp"
#include "ltidisc/periodic.hpp"
#include "ltidisc/schedule.hpp"
#include "ltidisc/transfer_function.hpp"
#include "ltidisc/validation.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace ltidisc {

/// Decimal form with 17 significant digits; round-trips the double exactly.
std::string format_full(double v);
/// Fixed four decimals, the print precision of the human-readable table.
std::string format_table(double v);

/// {"num": [...], "den": [...], "gain": g?}; gain multiplies the numerator.
TransferFunction transfer_function_from_json(const nlohmann::json& doc);
/// Emits num/den with 17-significant-digit decimals.
std::string transfer_function_to_json(const TransferFunction& tf);

/// {"instants": [...]} or {"periods": [...], "t0": t?}.
SamplingSchedule schedule_from_json(const nlohmann::json& doc);

nlohmann::json report_to_json(const AdmissibilityReport& report);
nlohmann::json comparison_to_json(const ComparisonResult& result);
nlohmann::json periodic_model_to_json(const PeriodicModel& m);

/// CSV rows k, f_1..f_n, g_0..g_m (LF line endings, 17-digit numbers).
void write_step_coefficients_csv(std::ostream& os,
                                 const std::vector<StepCoefficients>& rows, int order);

/// CSV columns k, t, u, y.
void write_outputs_csv(std::ostream& os, const SamplingSchedule& sched,
                       std::span<const double> inputs, std::span<const double> outputs);

/// Sweep table in the classic layout: one column per period, rows
/// b_1..b_n, a_1..a_n, sum b. `table_precision` switches to the 4-decimal
/// human view.
void write_sweep_csv(std::ostream& os, const std::vector<PeriodicModel>& models,
                     bool table_precision = false);

} // namespace ltidisc
