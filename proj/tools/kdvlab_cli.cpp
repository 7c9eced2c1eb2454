// Command-line front end for the kdvlab shared library. Reads a config file,
// runs the command it names, and writes all artifacts to the output directory.
// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 a declared
// check failed, 5 I/O error.

#include "kdvlab/kdvlab.h"

#include <CLI11.hpp>

#include <cstdio>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{std::string("kdvlab ") + kdvlab_version() +
                 " — dissipative-dispersive spectral laboratory"};

    std::string config_path;
    std::string output_dir = ".";
    int jobs = 1;
    long seed = -1;

    app.add_option("--config", config_path, "Config file naming the command to run")
        ->required()
        ->check(CLI::ExistingFile);
    app.add_option("--output", output_dir, "Directory for CSV/JSON artifacts (default: cwd)");
    app.add_option("--jobs", jobs, "Worker threads for sweep commands")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "RNG seed override (default: config value or 42)");

    CLI11_PARSE(app, argc, argv);

    const kdvlab_status st = kdvlab_run_config_file(config_path.c_str(), output_dir.c_str(), seed, jobs);
    if (st == KDVLAB_OK) return 0;

    std::fprintf(stderr, "kdvlab: %s\n", kdvlab_last_error());
    switch (st) {
    case KDVLAB_ERR_INVALID_ARGUMENT:
    case KDVLAB_ERR_CONFIG: return 2;
    case KDVLAB_ERR_NUMERICAL: return 3;
    case KDVLAB_ERR_CHECK_FAILED: return 4;
    default: return 5;
    }
}
