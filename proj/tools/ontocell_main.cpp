#include "ontocell/config.hpp"
#include "ontocell/experiments.hpp"

#include <CLI11.hpp>

#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"ontocell: deterministic periodic cells, exchange automata and their quantum equivalents"};
    app.require_subcommand(1);

    ontocell::RunConfig rc;
    std::vector<std::string> tol_args;

    const std::vector<std::string> commands = {"cell-spectrum", "su2-matrix", "automaton-verify",
                                               "sieve-compare", "kinetic-kernel"};
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", rc.input_path, "JSON config file (schema ontocell/1)")
            ->required();
        sub->add_option("--out", rc.output_dir, "output directory (env ONTOCELL_OUT overrides)");
        sub->add_option("--seed", rc.seed, "seed for randomized suites");
        sub->add_option("--tol", tol_args, "tolerance override KEY=VAL (repeatable)");
        sub->add_flag("--quiet", rc.quiet, "suppress per-check output");
        sub->callback([&rc, name] { rc.command = name; });
    }

    rc.output_dir = "out";
    rc.seed = ontocell::kDefaultSeed;

    CLI11_PARSE(app, argc, argv);

    for (const auto& kv : tol_args) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "bad --tol argument (want KEY=VAL): %s\n", kv.c_str());
            return ontocell::kExitSchema;
        }
        try {
            rc.tolerance_overrides[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            std::fprintf(stderr, "bad --tol value: %s\n", kv.c_str());
            return ontocell::kExitSchema;
        }
    }

    return ontocell::run(rc);
}
