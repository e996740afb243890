#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace framelab {

// ─── Config-driven experiment runner ───────────────────────────────────────
//
// A config is a flat key/value map, read either from JSON or from a
// key = value text file.  `kind` selects the pipeline; the remaining keys are
// validated against that kind before anything runs.  A fixed seed makes
// report.json byte-identical across runs.
struct ExperimentConfig {
    std::string kind;  // carleson | represent | approximate | hypercyclic | diagnostics
    std::map<std::string, std::string> params;
    std::string output_dir = "out";
    std::uint64_t seed = 1;

    std::optional<std::string> param(const std::string& key) const;
    double param_double(const std::string& key, std::optional<double> fallback = {}) const;
    std::int64_t param_int(const std::string& key, std::optional<std::int64_t> fallback = {}) const;
    std::string param_string(const std::string& key, std::optional<std::string> fallback = {}) const;
};

/// Parses a config file: JSON when the content starts with '{', key = value
/// lines otherwise ('#' comments allowed).  Values given on the command line
/// (out, seed) take precedence over the file.
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

struct RunReport {
    nlohmann::json document;  // config echo, measured values, verdicts
    bool all_pass = false;
    double wall_seconds = 0.0;  // console only; never serialized
};

/// Executes the configured experiment, writes report.json (and CSV tables)
/// under the output directory, and returns the report.  Throws
/// std::invalid_argument naming the offending field on config errors.
RunReport run(const ExperimentConfig& config);

}  // namespace framelab
