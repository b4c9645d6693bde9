#pragma once

// Command-line front end: argument parsing into a validated RunConfig, and a
// runner that sweeps the chosen scenario and writes CSV or JSON.
//
// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 invariant violation.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "distinguish/analysis.hpp"

namespace distinguish::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kIoError = 2, kInvariantViolation = 3 };

enum class OutputFormat { Csv, Json };

struct RunConfig {
    ScenarioId scenario = ScenarioId::Hom2;
    int steps = kDefaultSteps;
    std::optional<double> beta;
    std::optional<double> theta;
    double eta = 1.0;
    double theta1 = 0.0;
    double theta2 = std::numbers::pi / 4.0;
    double field_amplitude = 2.0;
    OutputFormat format = OutputFormat::Csv;
    std::string output_path = "-";

    ScenarioParams params() const {
        ScenarioParams p;
        if (beta && theta) p.angles = ProjectorAngles(*beta, *theta);
        p.detectors = DetectorModel(eta);
        p.classical = {theta1, theta2, field_amplitude};
        return p;
    }
};

struct ParseResult {
    std::optional<RunConfig> config;
    int exit_code = kSuccess;
    std::string message;
};

namespace detail {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Plain decimal radians only; anything with a unit suffix is refused.
inline double parse_radians(const std::string& flag, const std::string& text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw UsageError(flag + ": expected a plain number in radians, got '" + text + "'");
    }
    return value;
}

inline void require_range(const std::string& flag, double v, double lo, double hi, bool hi_open,
                          const std::string& range) {
    const bool ok = v >= lo && (hi_open ? v < hi : v <= hi);
    if (!ok) throw UsageError(flag + ": value " + std::to_string(v) + " outside " + range);
}

}  // namespace detail

inline std::string scenario_list() {
    std::string out;
    for (ScenarioId id : kAllScenarios) {
        if (!out.empty()) out += ", ";
        out += scenario_name(id);
    }
    return out;
}

inline ParseResult parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Projection probabilities of partially distinguishable photon states"};
    app.name(args.empty() ? "distinguish" : args.front());

    std::string scenario;
    std::string beta;
    std::string theta;
    std::string theta1;
    std::string theta2;
    std::string format = "csv";
    RunConfig cfg;

    app.add_option("--scenario", scenario, "One of: " + scenario_list())->required();
    app.add_option("--steps", cfg.steps, "Number of uniform gamma points on [0, pi/2]");
    app.add_option("--beta", beta, "Projector angle beta in radians, [0, pi/2]");
    app.add_option("--theta", theta, "Projector phase theta in radians, [0, 2pi)");
    app.add_option("--eta", cfg.eta, "Detector efficiency for hofmann-cascade, [0, 1]");
    app.add_option("--theta1", theta1, "First polarizer angle (classical) in radians, [0, pi]");
    app.add_option("--theta2", theta2, "Second polarizer angle (classical) in radians, [0, pi]");
    app.add_option("--amplitude", cfg.field_amplitude, "Classical field amplitude E0, [0, 2]");
    app.add_option("--format", format, "csv or json");
    app.add_option("--output", cfg.output_path, "Output file, or - for standard output");

    std::vector<std::string> tail(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(tail.begin(), tail.end());
    try {
        app.parse(tail);
    } catch (const CLI::CallForHelp&) {
        return {std::nullopt, kSuccess, app.help()};
    } catch (const CLI::ParseError& e) {
        return {std::nullopt, kUsageError, e.what()};
    }

    try {
        auto id = parse_scenario(scenario);
        if (!id) throw detail::UsageError("--scenario: unknown scenario '" + scenario + "' (expected one of " +
                                          scenario_list() + ")");
        cfg.scenario = *id;

        if (cfg.steps < 3) throw detail::UsageError("--steps: must be at least 3");
        if (format == "csv") {
            cfg.format = OutputFormat::Csv;
        } else if (format == "json") {
            cfg.format = OutputFormat::Json;
        } else {
            throw detail::UsageError("--format: expected csv or json, got '" + format + "'");
        }

        if (!beta.empty()) {
            cfg.beta = detail::parse_radians("--beta", beta);
            detail::require_range("--beta", *cfg.beta, 0.0, kHalfPi, false, "[0, pi/2]");
        }
        if (!theta.empty()) {
            cfg.theta = detail::parse_radians("--theta", theta);
            detail::require_range("--theta", *cfg.theta, 0.0, 2.0 * std::numbers::pi, true, "[0, 2pi)");
        }
        if (needs_projector_angles(cfg.scenario)) {
            if (!cfg.beta) throw detail::UsageError("--beta: required for scenario " + scenario);
            if (!cfg.theta) throw detail::UsageError("--theta: required for scenario " + scenario);
        }
        detail::require_range("--eta", cfg.eta, 0.0, 1.0, false, "[0, 1]");
        if (!theta1.empty()) cfg.theta1 = detail::parse_radians("--theta1", theta1);
        if (!theta2.empty()) cfg.theta2 = detail::parse_radians("--theta2", theta2);
        detail::require_range("--theta1", cfg.theta1, 0.0, std::numbers::pi, false, "[0, pi]");
        detail::require_range("--theta2", cfg.theta2, 0.0, std::numbers::pi, false, "[0, pi]");
        detail::require_range("--amplitude", cfg.field_amplitude, 0.0, 2.0, false, "[0, 2]");
    } catch (const detail::UsageError& e) {
        return {std::nullopt, kUsageError, e.what()};
    }
    return {cfg, kSuccess, {}};
}

inline ParseResult parse_args(int argc, const char* const* argv) {
    return parse_args(std::vector<std::string>(argv, argv + argc));
}

// ---------------------------------------------------------------------------
// Output.

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// v rounded to 12 significant digits, so JSON's shortest round-trip printer
/// emits the same digits as the CSV writer.
inline double rounded(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

inline double report_clamp(double p) { return std::clamp(p, 0.0, 1.0); }

inline std::map<std::string, std::string> metadata(const SweepResult& r) {
    std::map<std::string, std::string> m;
    m["scenario"] = std::string(scenario_name(r.scenario));
    m["steps"] = std::to_string(r.gammas.size());
    m["verdict"] = std::string(verdict_name(r.verdict));
    m["probability_at_gamma_0"] = format_number(r.probabilities.front());
    m["probability_at_gamma_pi_2"] = format_number(r.probabilities.back());
    if (r.max_closed_form_deviation) {
        m["max_closed_form_deviation"] = format_number(*r.max_closed_form_deviation);
    }
    if (r.params.angles) {
        m["beta"] = format_number(r.params.angles->beta());
        m["theta"] = format_number(r.params.angles->theta());
    }
    if (r.scenario == ScenarioId::HofmannCascade) m["eta"] = format_number(r.params.detectors.eta());
    if (r.scenario == ScenarioId::ClassicalPolarization) {
        m["theta1"] = format_number(r.params.classical.theta1);
        m["theta2"] = format_number(r.params.classical.theta2);
        m["amplitude"] = format_number(r.params.classical.field_amplitude);
    }
    std::string ext;
    for (const auto& e : r.extrema) {
        if (!ext.empty()) ext += ';';
        ext += (e.kind == ExtremumKind::Min ? "min@" : "max@") + format_number(e.gamma) + ":" +
               format_number(e.value);
    }
    m["extrema"] = ext;
    return m;
}

inline void write_csv(const SweepResult& r, std::ostream& os) {
    os << "gamma,probability,closed_form,indistinguishability\n";
    for (std::size_t i = 0; i < r.gammas.size(); ++i) {
        os << format_number(r.gammas[i]) << ',' << format_number(report_clamp(r.probabilities[i])) << ',';
        if (r.closed_form) os << format_number(report_clamp((*r.closed_form)[i]));
        os << ',';
        if (r.indistinguishability) os << format_number(report_clamp((*r.indistinguishability)[i]));
        os << '\n';
    }
    for (const auto& [key, value] : metadata(r)) os << "# " << key << '=' << value << '\n';
}

inline nlohmann::json to_json(const SweepResult& r) {
    auto column = [](const std::vector<double>& v, bool clamp) {
        nlohmann::json a = nlohmann::json::array();
        for (double x : v) a.push_back(rounded(clamp ? report_clamp(x) : x));
        return a;
    };
    nlohmann::json j;
    j["scenario"] = scenario_name(r.scenario);
    j["gammas"] = column(r.gammas, false);
    j["probabilities"] = column(r.probabilities, true);
    j["closed_form"] = r.closed_form ? column(*r.closed_form, true) : nlohmann::json(nullptr);
    j["indistinguishability"] =
        r.indistinguishability ? column(*r.indistinguishability, true) : nlohmann::json(nullptr);
    j["verdict"] = verdict_name(r.verdict);
    nlohmann::json ext = nlohmann::json::array();
    for (const auto& e : r.extrema) {
        ext.push_back({{"gamma", rounded(e.gamma)},
                       {"value", rounded(e.value)},
                       {"kind", e.kind == ExtremumKind::Min ? "Min" : "Max"}});
    }
    j["extrema"] = ext;
    j["metadata"] = metadata(r);
    return j;
}

inline void write_json(const SweepResult& r, std::ostream& os) { os << to_json(r).dump(2) << '\n'; }

/// Sweeps the configured scenario and writes the table. Diagnostics go to `err`.
inline int run(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::string text;
    try {
        const SweepResult r = sweep(cfg.scenario, cfg.steps, cfg.params());
        std::ostringstream buf;
        if (cfg.format == OutputFormat::Csv) {
            write_csv(r, buf);
        } else {
            write_json(r, buf);
        }
        text = buf.str();
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << '\n';
        return kInvariantViolation;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    if (cfg.output_path == "-") {
        out << text;
        out.flush();
        if (!out) {
            err << "error: failed writing to standard output\n";
            return kIoError;
        }
        return kSuccess;
    }
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file) {
        err << "error: cannot open " << cfg.output_path << " for writing\n";
        return kIoError;
    }
    file << text;
    file.close();
    if (!file) {
        err << "error: failed writing " << cfg.output_path << '\n';
        return kIoError;
    }
    return kSuccess;
}

inline int main(int argc, const char* const* argv, std::ostream& out = std::cout,
                std::ostream& err = std::cerr) {
    ParseResult parsed = parse_args(argc, argv);
    if (!parsed.config) {
        (parsed.exit_code == kSuccess ? out : err) << parsed.message << '\n';
        return parsed.exit_code;
    }
    return run(*parsed.config, out, err);
}

}  // namespace distinguish::cli
