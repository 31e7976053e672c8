#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lindyn/freqdyn.hpp"
#include "lindyn/sampled.hpp"
#include "lindyn/sparse_seq.hpp"
#include "lindyn/weight.hpp"

namespace lindyn {

/// Backward-shift family read off the weight, with the integer window the ratio
/// constant is fitted on.
struct ShiftSpec {
    Universe universe = Universe::ZDyadic;
    std::int64_t k_lo = -64, k_hi = 64;
};

/// One experiment, fully determined: command, inputs, horizons, tolerances and
/// the random seed. Parsed from a JSON document; reruns of the same config and
/// seed produce byte-identical reports.
struct ExperimentConfig {
    std::string command;
    std::uint64_t seed = 1;
    int threads = 1;
    std::int64_t horizon = 10000;

    std::string mode = "lp"; // check-fh: lp | c0 | shift
    int trials = 100;
    int p_max = 3;
    std::int64_t K = 100;      // summation cutoff for the L^p checks
    double lp_exponent = 2.0;

    double eps = 1e-3;
    double tol = 1e-9;
    double decay_tol = 1e-6;
    double tail_tol = 1e-4;
    double grid_step = 0.25;

    std::vector<double> thetas; // check-weight: orbit targets to witness

    std::optional<Weight> weight;
    std::optional<ShiftSpec> shift;
    std::optional<FrequencySets> frequency;
    std::vector<SparseSeq> targets;          // empty: default ladder
    std::optional<LogSeq> vector;            // extract-sets / simulate-orbit input
    std::optional<SampledFunction> function; // series-check input
    std::vector<double> alpha;               // extract-sets ladder override

    std::string report_name, csv_name;
    std::string echo; // canonical JSON echo of the input specs, embedded in reports
};

struct RunResult {
    int exit_code = 2;
    std::string verdict;
    std::string report_json; // pretty-printed document, trailing newline
    std::string report_name;
    std::optional<std::string> csv;
    std::string csv_name;
};

/// Parses and validates a JSON config document. Unknown keys, missing required
/// sub-specs, bad values and unreadable referenced files all raise config_error.
ExperimentConfig parse_experiment_config(const std::string& text);

/// Runs the configured pipeline. Exit code 0 means a positive verdict, 1 a
/// negative one (witnesses are in the report); contract violations escape as
/// exceptions for the caller to map to exit code 2.
RunResult run_experiment(const ExperimentConfig& config,
                         std::optional<std::uint64_t> seed_override = {},
                         std::optional<int> threads_override = {});

/// parse + run in one call.
RunResult run_experiment_text(const std::string& config_text,
                              std::optional<std::uint64_t> seed_override = {},
                              std::optional<int> threads_override = {});

} // namespace lindyn
