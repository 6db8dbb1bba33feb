#include "ltidisc/io.hpp"

#include "ltidisc/errors.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace ltidisc {

namespace {

std::vector<double> doubles_from_json(const nlohmann::json& arr, const char* field) {
    if (!arr.is_array() || arr.empty()) {
        throw ConfigError(std::string("field '") + field + "' must be a non-empty array");
    }
    std::vector<double> out;
    out.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_number()) {
            throw ConfigError(std::string("field '") + field + "' must contain numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::admissible: return "admissible";
        case Verdict::marginal: return "marginal";
        case Verdict::inadmissible: return "inadmissible";
    }
    return "unknown";
}

} // namespace

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_table(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

TransferFunction transfer_function_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("num") || !doc.contains("den")) {
        throw ConfigError("system document needs 'num' and 'den' arrays");
    }
    std::vector<double> num = doubles_from_json(doc.at("num"), "num");
    std::vector<double> den = doubles_from_json(doc.at("den"), "den");
    if (doc.contains("gain")) {
        const double gain = doc.at("gain").get<double>();
        for (double& c : num) c *= gain;
    }
    try {
        return TransferFunction(std::move(num), std::move(den));
    } catch (const InvalidSystemError& e) {
        throw ConfigError(std::string("invalid system: ") + e.what());
    }
}

std::string transfer_function_to_json(const TransferFunction& tf) {
    std::string out = "{\n  \"num\": [";
    for (std::size_t i = 0; i < tf.num().size(); ++i) {
        if (i) out += ", ";
        out += format_full(tf.num()[i]);
    }
    out += "],\n  \"den\": [";
    for (std::size_t i = 0; i < tf.den().size(); ++i) {
        if (i) out += ", ";
        out += format_full(tf.den()[i]);
    }
    out += "]\n}\n";
    return out;
}

SamplingSchedule schedule_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw ConfigError("schedule document must be an object");
    }
    const bool has_instants = doc.contains("instants");
    const bool has_periods = doc.contains("periods");
    if (has_instants == has_periods) {
        throw ConfigError("schedule needs exactly one of 'instants' or 'periods'");
    }
    try {
        if (has_instants) {
            return SamplingSchedule(doubles_from_json(doc.at("instants"), "instants"));
        }
        const double t0 = doc.value("t0", 0.0);
        return SamplingSchedule::from_periods(doubles_from_json(doc.at("periods"), "periods"), t0);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid schedule: ") + e.what());
    }
}

nlohmann::json report_to_json(const AdmissibilityReport& report) {
    nlohmann::json findings = nlohmann::json::array();
    for (const auto& f : report.resonances) {
        findings.push_back({{"condition", to_string(f.kind)},
                            {"angles", f.angles},
                            {"indices", f.indices},
                            {"detail", f.detail}});
    }
    return {{"verdict", verdict_name(report.verdict)},
            {"delta_magnitude", report.delta_magnitude},
            {"resonances", findings},
            {"thresholds",
             {{"inadmissible", report.thresholds.inadmissible},
              {"marginal", report.thresholds.marginal},
              {"angle_tolerance", report.thresholds.angle_tol}}},
            {"notes", report.notes}};
}

nlohmann::json comparison_to_json(const ComparisonResult& result) {
    return {{"max_abs_error", result.max_abs_error},
            {"max_rel_error", result.max_rel_error},
            {"index_of_worst", result.index_of_worst},
            {"tolerance_used", result.tolerance_used},
            {"pass", result.pass}};
}

nlohmann::json periodic_model_to_json(const PeriodicModel& m) {
    return {{"T0", m.T0},
            {"a", m.a},
            {"b", m.b},
            {"hold", m.hold == Hold::zoh ? "zoh" : "impulse"},
            {"dead_shift", m.dead_shift},
            {"dead_time", m.dead_time},
            {"sum_a", m.sum_a()},
            {"sum_b", m.sum_b()}};
}

void write_step_coefficients_csv(std::ostream& os,
                                 const std::vector<StepCoefficients>& rows, int order) {
    os << "k";
    for (int i = 1; i <= order; ++i) os << ",f_" << i;
    const int g_count = rows.empty() ? order : static_cast<int>(rows.front().g.size());
    for (int j = 0; j < g_count; ++j) os << ",g_" << j;
    os << "\n";
    for (const auto& row : rows) {
        os << row.k;
        for (double v : row.f) os << "," << format_full(v);
        for (double v : row.g) os << "," << format_full(v);
        os << "\n";
    }
}

void write_outputs_csv(std::ostream& os, const SamplingSchedule& sched,
                       std::span<const double> inputs, std::span<const double> outputs) {
    os << "k,t,u,y\n";
    for (std::size_t k = 0; k < outputs.size(); ++k) {
        os << k << "," << format_full(sched.at(k)) << "," << format_full(inputs[k])
           << "," << format_full(outputs[k]) << "\n";
    }
}

void write_sweep_csv(std::ostream& os, const std::vector<PeriodicModel>& models,
                     bool table_precision) {
    if (models.empty()) return;
    const auto fmt = [&](double v) {
        return table_precision ? format_table(v) : format_full(v);
    };
    const std::size_t nb = models.front().b.size();
    const std::size_t na = models.front().a.size();
    // ZOH always has b_0 = 0; the classic table layout omits that row.
    const std::size_t b_first = models.front().hold == Hold::zoh ? 1 : 0;

    os << "T0";
    for (const auto& m : models) os << "," << fmt(m.T0);
    os << "\n";
    for (std::size_t j = b_first; j < nb; ++j) {
        os << "b_" << j;
        for (const auto& m : models) os << "," << fmt(m.b[j]);
        os << "\n";
    }
    for (std::size_t i = 0; i < na; ++i) {
        os << "a_" << (i + 1);
        for (const auto& m : models) os << "," << fmt(m.a[i]);
        os << "\n";
    }
    os << "sum_b";
    for (const auto& m : models) os << "," << fmt(m.sum_b());
    os << "\n";
}

} // namespace ltidisc
