#pragma once

#include "ontocell/config.hpp"

#include <string>
#include <vector>

namespace ontocell {

struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool passed = false;
};

struct ExperimentResult {
    std::vector<Check> checks;
    std::vector<std::string> files;  // paths relative to the output directory
    std::string values_json;         // command-specific report block (JSON text)

    bool all_passed() const;
};

/// Executes the command named in the config, writes the data files, report.json
/// and manifest.json into the output directory, and returns the exit code.
int run(const RunConfig& config);

}  // namespace ontocell
