#pragma once

#include <map>
#include <string>
#include <vector>

#include "itm/engine.hpp"
#include "itm/root_finding.hpp"

namespace itm {

struct FinalScalars {
    bool converged = false;
    double h_star = 0.0;
    double lambda = 0.0;
    double skin_friction = 0.0;

    bool operator==(const FinalScalars&) const = default;
};

struct SolutionSample {
    double eta = 0.0;
    double f = 0.0;
    double fprime = 0.0;
    double fsecond = 0.0;

    bool operator==(const SolutionSample&) const = default;
};

/// Everything one command run produces: a config echo, the iteration table,
/// final scalars and the solution curve. Round-trips losslessly through JSON.
struct ResultDocument {
    std::string command;
    std::string timestamp;
    std::string version;
    std::map<std::string, std::string> config;
    std::vector<IterationRecord> iterations;
    FinalScalars final_scalars;
    std::vector<SolutionSample> solution;
    std::vector<ContinuationRow> continuation;
    std::map<std::string, double> extras;

    bool operator==(const ResultDocument&) const = default;
};

std::vector<SolutionSample> solution_from_trajectory(const Trajectory& traj);

std::string to_json_string(const ResultDocument& doc);
ResultDocument from_json_string(const std::string& text);

void write_json(const ResultDocument& doc, const std::string& path);
ResultDocument read_json(const std::string& path);

/// CSV emission: <base>_iterations.csv and <base>_solution.csv (plus
/// <base>_continuation.csv when present), each with commented metadata lines.
/// Numbers carry 17 significant digits.
void write_csv_tables(const ResultDocument& doc, const std::string& base_path);

std::string format_double17(double value);

// ---------------------------------------------------------------------------
// Config files
// ---------------------------------------------------------------------------

/// Flat key=value text config; keys match CLI flag names without the leading
/// dashes. '#' starts a comment. An unknown key raises std::runtime_error
/// naming the key and the nearest valid one.
std::map<std::string, std::string> load_config_file(
    const std::string& path, const std::vector<std::string>& known_keys);

/// Same validation for an already-read buffer (unit-testable without files).
std::map<std::string, std::string> parse_config_text(
    const std::string& text, const std::vector<std::string>& known_keys);

}  // namespace itm
