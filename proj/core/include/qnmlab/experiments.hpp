#pragma once

#include <string>
#include <vector>

#include "qnmlab/config.hpp"
#include "qnmlab/csv.hpp"

namespace qnmlab {

struct ExperimentOutput {
    std::string filename; // relative to the output directory
    CsvTable table;
};

struct ExperimentResult {
    std::string experiment;
    std::vector<ExperimentOutput> outputs;
    std::vector<std::string> warnings;
};

struct ExperimentInfo {
    std::string name;
    std::string description;
};

// The six named experiments, in the stable order reported by `list`.
const std::vector<ExperimentInfo>& experiment_catalog();

// Dispatches on [experiment] name. `threads` bounds how many independent
// sweep points run concurrently (>= 1); rows land in a deterministic
// order either way. Throws ConfigError for a malformed or incomplete
// config (including unknown keys) and the numerical error types from
// errors.hpp when a computation fails.
ExperimentResult run_experiment(const Config& cfg, int threads = 1);

} // namespace qnmlab
