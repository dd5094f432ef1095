// cli.hpp: config parsing, command dispatch and CSV output for the dressed tool

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dressed/model.hpp"

namespace dressed::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitInput = 1,
    kExitNumerical = 2,
    kExitValidation = 3,
};

// Flat key=value lines, '#' comments. Unknown or repeated keys are input errors.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> load_config_file(const std::string& path);

struct RunConfig {
    // System parameters, as given.
    std::optional<double> bar_omega, g, beta, cavity_L, delta, light_speed, hbar;
    std::optional<std::size_t> n_modes;
    // Grid and selectors.
    std::optional<double> t_max, n_bar, theta;
    std::optional<std::size_t> samples, k_max;
    std::string route;  // empty: per-command default
    std::string method{"closed"};
    std::string regime{"weak"};
    std::string eq11_variant{"published"};
    std::string out;  // empty: standard output
};

RunConfig config_from_map(const std::map<std::string, std::string>& kv);

// Exactly one of {g, beta} and one of {cavity_L, delta}; bar_omega required.
OhmicSystemSpec resolve_spec(const RunConfig& cfg);

struct CurveOutput {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, double value);
    std::string render() const;
};

// "%.16e": 17 significant digits, round-trips every double.
std::string format_number(double v);

// "# key=value" lines at the top of a rendered file.
std::map<std::string, std::string> parse_header(const std::string& text);
// Rebuilds the resolved system parameters from a rendered header.
OhmicSystemSpec spec_from_header(const std::map<std::string, std::string>& header);

CurveOutput cmd_spectrum(const RunConfig& cfg);
CurveOutput cmd_decay(const RunConfig& cfg);
CurveOutput cmd_brownian(const RunConfig& cfg);
CurveOutput cmd_cavity(const RunConfig& cfg);

// Serialized report and whether every check passed.
std::pair<std::string, bool> cmd_validate(const RunConfig& cfg);

// Full command line: parses flags, runs the subcommand, writes output, maps errors to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace dressed::cli
