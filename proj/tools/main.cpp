#include "ltidisc/admissibility.hpp"
#include "ltidisc/aperiodic.hpp"
#include "ltidisc/errors.hpp"
#include "ltidisc/io.hpp"
#include "ltidisc/periodic.hpp"
#include "ltidisc/validation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace ltidisc;

constexpr int kExitUsage = 1;
constexpr int kExitInadmissible = 2;
constexpr int kExitVerification = 3;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open file: " + path);
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError("cannot parse " + path + ": " + e.what());
    }
    return doc;
}

struct RunConfig {
    json doc;

    static RunConfig from_file(const std::string& path) {
        RunConfig cfg;
        cfg.doc = load_json_file(path);
        if (!cfg.doc.is_object()) {
            throw ConfigError("config must be a JSON object");
        }
        if (cfg.doc.contains("schedule") &&
            (cfg.doc.contains("T0") || cfg.doc.contains("sweep"))) {
            throw ConfigError("config needs exactly one of 'schedule' or 'T0'/'sweep'");
        }
        // Referenced files must exist at parse time.
        for (const char* key : {"system", "schedule", "inputs"}) {
            if (cfg.doc.contains(key) && cfg.doc.at(key).is_string()) {
                const std::string ref = cfg.doc.at(key).get<std::string>();
                if (!std::ifstream(ref)) {
                    throw ConfigError(std::string("referenced file for '") + key +
                                      "' does not exist: " + ref);
                }
            }
        }
        return cfg;
    }

    TransferFunction system() const {
        if (!doc.contains("system")) {
            throw ConfigError("config needs a 'system' entry");
        }
        const json& sys = doc.at("system");
        if (sys.is_string()) {
            return transfer_function_from_json(load_json_file(sys.get<std::string>()));
        }
        return transfer_function_from_json(sys);
    }

    bool has_schedule() const { return doc.contains("schedule"); }
    bool has_T0() const { return doc.contains("T0"); }

    void require_one_time_base() const {
        if (has_schedule() == has_T0()) {
            throw ConfigError("config needs exactly one of 'schedule' or 'T0'");
        }
    }

    double T0() const {
        const double v = doc.at("T0").get<double>();
        if (!(v > 0.0)) throw ConfigError("'T0' must be positive");
        return v;
    }

    SamplingSchedule schedule(std::size_t fallback_steps) const {
        if (has_schedule()) {
            const json& s = doc.at("schedule");
            if (s.is_string()) {
                return schedule_from_json(load_json_file(s.get<std::string>()));
            }
            return schedule_from_json(s);
        }
        return SamplingSchedule::constant(T0(), fallback_steps);
    }

    Hold hold() const {
        const std::string h = doc.value("hold", std::string("zoh"));
        if (h == "zoh") return Hold::zoh;
        if (h == "impulse") return Hold::impulse;
        throw ConfigError("'hold' must be \"zoh\" or \"impulse\"");
    }

    std::string format_name() const { return doc.value("format", std::string()); }
    bool fail_fast() const { return doc.value("fail_fast", false); }
    double tolerance(double fallback) const { return doc.value("tolerance", fallback); }

    double dead_time() const {
        const double v = doc.value("Td", 0.0);
        if (v < 0.0) throw ConfigError("'Td' must be nonnegative");
        return v;
    }

    std::vector<double> sweep() const {
        if (doc.contains("sweep")) {
            std::vector<double> out;
            for (const auto& v : doc.at("sweep")) out.push_back(v.get<double>());
            if (out.empty()) throw ConfigError("'sweep' must be non-empty");
            return out;
        }
        return {T0()};
    }

    std::vector<double> inputs(std::uint64_t seed_override, bool has_seed_override) const {
        if (!doc.contains("inputs")) {
            throw ConfigError("config needs an 'inputs' entry");
        }
        const json& in = doc.at("inputs");
        if (in.is_array()) {
            std::vector<double> u;
            for (const auto& v : in) u.push_back(v.get<double>());
            return u;
        }
        if (in.is_string()) {
            const json arr = load_json_file(in.get<std::string>());
            std::vector<double> u;
            for (const auto& v : arr) u.push_back(v.get<double>());
            return u;
        }
        if (in.is_object()) {
            const std::string kind = in.value("generator", std::string());
            const std::size_t count = in.value("count", std::size_t{50});
            const double amplitude = in.value("amplitude", 1.0);
            std::vector<double> u(count, 0.0);
            if (kind == "impulse") {
                if (!u.empty()) u[0] = amplitude;
            } else if (kind == "step") {
                for (double& v : u) v = amplitude;
            } else if (kind == "random") {
                std::uint64_t seed = in.value("seed", std::uint64_t{1});
                if (has_seed_override) seed = seed_override;
                std::mt19937_64 rng(seed);
                for (double& v : u) {
                    v = amplitude *
                        (-1.0 + static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0);
                }
            } else {
                throw ConfigError("input generator must be impulse, step, or random");
            }
            return u;
        }
        throw ConfigError("'inputs' must be an array, a file path, or a generator");
    }
};

enum class Format { csv, json_like, table };

Format parse_format(const std::string& name, Format fallback) {
    if (name.empty()) return fallback;
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json_like;
    if (name == "table") return Format::table;
    throw ConfigError("unknown format: " + name);
}

void print_sweep(const std::vector<PeriodicModel>& models, Format format) {
    if (format == Format::json_like) {
        json arr = json::array();
        for (const auto& m : models) arr.push_back(periodic_model_to_json(m));
        std::cout << arr.dump(2) << "\n";
        return;
    }
    write_sweep_csv(std::cout, models, format == Format::table);
}

int cmd_discretize(const RunConfig& cfg, Format format) {
    const TransferFunction tf = cfg.system();
    const Hold hold = cfg.hold();
    const double Td = cfg.dead_time();
    std::vector<PeriodicModel> models;
    for (double T0 : cfg.sweep()) {
        models.push_back(Td > 0.0 ? dead_time_model(tf, T0, Td, hold)
                                  : discretize_periodic(tf, T0, hold));
    }
    print_sweep(models, format);
    return 0;
}

int cmd_model(const RunConfig& cfg, bool fail_fast) {
    const TransferFunction tf = cfg.system();
    const SamplingSchedule sched = cfg.schedule(50);
    if (sched.size() <= static_cast<std::size_t>(tf.order())) {
        throw ConfigError("schedule is too short for the model order");
    }
    const auto rows = model_coefficients(tf, sched, cfg.hold(), !fail_fast);
    write_step_coefficients_csv(std::cout, rows, tf.order());
    for (const auto& row : rows) {
        if (row.f.empty() || std::isnan(row.f.front())) {
            std::cerr << "warning: window at k=" << row.k << " is inadmissible\n";
        } else if (row.marginal) {
            std::cerr << "warning: window at k=" << row.k
                      << " is ill-conditioned (scaled delta " << row.scaled_delta
                      << ")\n";
        }
    }
    return 0;
}

int cmd_simulate(const RunConfig& cfg, std::uint64_t seed, bool has_seed) {
    const TransferFunction tf = cfg.system();
    cfg.require_one_time_base();
    const std::vector<double> u = cfg.inputs(seed, has_seed);
    const SamplingSchedule sched = cfg.schedule(u.empty() ? 0 : u.size() - 1);
    if (u.size() != sched.size()) {
        throw ConfigError("inputs and schedule lengths differ");
    }
    std::vector<double> y;
    if (cfg.dead_time() > 0.0) {
        if (!cfg.has_T0()) {
            throw ConfigError("dead time needs a constant period 'T0'");
        }
        const PeriodicModel m = dead_time_model(tf, cfg.T0(), cfg.dead_time(), cfg.hold());
        y = simulate_periodic(tf, m, u);
    } else {
        y = simulate(tf, sched, u, cfg.hold());
    }
    write_outputs_csv(std::cout, sched, u, y);
    return 0;
}

int cmd_validate(const RunConfig& cfg) {
    const TransferFunction tf = cfg.system();
    cfg.require_one_time_base();
    const Spectrum sp = spectrum(tf);
    json out;
    Verdict worst = Verdict::admissible;
    if (cfg.has_T0()) {
        const AdmissibilityReport report = check_periodic_resonance(sp, cfg.T0());
        worst = report.verdict;
        out = report_to_json(report);
    } else {
        const SamplingSchedule sched = cfg.schedule(0);
        const int n = tf.order();
        json windows = json::array();
        for (std::size_t k = static_cast<std::size_t>(n); k < sched.size(); ++k) {
            const AdmissibilityReport report =
                check_generic(sp, sched.window_periods(k, n));
            if (report.verdict == Verdict::inadmissible ||
                (report.verdict == Verdict::marginal && worst == Verdict::admissible)) {
                worst = report.verdict;
            }
            json w = report_to_json(report);
            w["k"] = k;
            windows.push_back(std::move(w));
        }
        out["windows"] = std::move(windows);
        out["verdict"] = worst == Verdict::inadmissible ? "inadmissible"
                         : worst == Verdict::marginal   ? "marginal"
                                                        : "admissible";
    }
    std::cout << out.dump(2) << "\n";
    return worst == Verdict::inadmissible ? kExitInadmissible : 0;
}

int cmd_verify(const RunConfig& cfg, double tolerance, std::uint64_t seed, bool has_seed) {
    const TransferFunction tf = cfg.system();
    cfg.require_one_time_base();
    const std::vector<double> u = cfg.inputs(seed, has_seed);
    const SamplingSchedule sched = cfg.schedule(u.empty() ? 0 : u.size() - 1);
    if (u.size() != sched.size()) {
        throw ConfigError("inputs and schedule lengths differ");
    }
    const double Td = cfg.dead_time();
    std::vector<double> y;
    if (Td > 0.0) {
        if (!cfg.has_T0()) {
            throw ConfigError("dead time needs a constant period 'T0'");
        }
        y = simulate_periodic(tf, dead_time_model(tf, cfg.T0(), Td, cfg.hold()), u);
    } else {
        y = simulate(tf, sched, u, cfg.hold());
    }
    const std::vector<double> ref = convolution_oracle(tf, sched, u, cfg.hold(), Td);
    const ComparisonResult result = compare_outputs(y, ref, tolerance);
    std::cout << comparison_to_json(result).dump(2) << "\n";
    return result.pass ? 0 : kExitVerification;
}

int cmd_table1(Format format) {
    const TransferFunction tf({1.0}, {375.0, 162.5, 22.5, 1.0});
    std::vector<PeriodicModel> models;
    for (double T0 : {2.0, 4.0, 6.0, 8.0, 10.0, 12.0}) {
        models.push_back(discretize_periodic(tf, T0, Hold::zoh));
    }
    print_sweep(models, format);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact discrete input-output models of continuous SISO LTI systems\n"
                 "under periodic or aperiodic sampling"};
    app.require_subcommand(1);

    std::string config_path;
    std::string format_flag;
    bool fail_fast_flag = false;
    std::uint64_t seed = 0;
    bool has_seed = false;
    double tolerance_flag = 1e-8;
    bool has_tolerance = false;

    auto add_config = [&](CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("--config", config_path, "run configuration (JSON)");
        if (required) opt->required();
        cmd->add_option("--format", format_flag, "output format: csv, json, table");
        cmd->add_option("--seed", seed, "override the input generator seed")
            ->each([&](const std::string&) { has_seed = true; });
        cmd->add_option("--tolerance", tolerance_flag, "verification tolerance")
            ->each([&](const std::string&) { has_tolerance = true; });
        cmd->add_flag("--fail-fast", fail_fast_flag,
                      "stop at the first inadmissible window");
    };

    CLI::App* discretize = app.add_subcommand("discretize", "periodic coefficient table");
    add_config(discretize);
    CLI::App* model = app.add_subcommand("model", "per-step aperiodic coefficients (CSV)");
    add_config(model);
    CLI::App* simulate_cmd = app.add_subcommand("simulate", "run the recursion (CSV)");
    add_config(simulate_cmd);
    CLI::App* validate =
        app.add_subcommand("validate-sequence", "admissibility report (JSON)");
    add_config(validate);
    CLI::App* verify = app.add_subcommand("verify", "recursion vs convolution oracle");
    add_config(verify);
    CLI::App* table1 = app.add_subcommand("table1", "built-in three-lag benchmark sweep");
    add_config(table1, /*required=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (table1->parsed()) {
            return cmd_table1(parse_format(format_flag, Format::table));
        }
        const RunConfig cfg = RunConfig::from_file(config_path);
        // Flags override the corresponding config fields.
        const std::string format_name =
            format_flag.empty() ? cfg.format_name() : format_flag;
        const bool fail_fast = fail_fast_flag || cfg.fail_fast();
        const double tolerance =
            has_tolerance ? tolerance_flag : cfg.tolerance(tolerance_flag);
        if (discretize->parsed()) {
            return cmd_discretize(cfg, parse_format(format_name, Format::csv));
        }
        if (model->parsed()) {
            return cmd_model(cfg, fail_fast);
        }
        if (simulate_cmd->parsed()) {
            return cmd_simulate(cfg, seed, has_seed);
        }
        if (validate->parsed()) {
            return cmd_validate(cfg);
        }
        if (verify->parsed()) {
            return cmd_verify(cfg, tolerance, seed, has_seed);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InadmissibleSequenceError& e) {
        json out = {{"error", "inadmissible-sequence"},
                    {"detail", e.what()},
                    {"scaled_delta", e.scaled_delta}};
        if (e.step) out["k"] = *e.step;
        std::cout << out.dump(2) << "\n";
        return kExitInadmissible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
