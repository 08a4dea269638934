#pragma once

#include "ontocell/io.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace ontocell {

/// Config schema identifier every input document must carry.
inline constexpr const char* kSchemaId = "ontocell/1";

/// Fixed default seed so repeated runs and CI agree byte for byte.
inline constexpr uint64_t kDefaultSeed = 1000003;

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommandError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;     // cell-spectrum | su2-matrix | automaton-verify |
                             // sieve-compare | kinetic-kernel
    std::string input_path;  // JSON document
    std::string output_dir;
    uint64_t seed = kDefaultSeed;
    std::map<std::string, double> tolerance_overrides;
    bool quiet = false;
};

/// Exit codes: 0 all checks pass, 1 assertion failure, 2 schema violation,
/// 3 I/O failure.
enum ExitCode { kExitOk = 0, kExitAssertion = 1, kExitSchema = 2, kExitIo = 3 };

}  // namespace ontocell
