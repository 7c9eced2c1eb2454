#pragma once

#include "config.hpp"

#include <string>

namespace kdvlab {

enum class RunStatus {
    Ok = 0,
    ConfigError,
    NumericalError,
    CheckFailed,
    IoError,
};

/// Execute one config-driven command (solve, evolve, verify-lemmas, inflate,
/// norms, threshold) and write its artifacts plus a manifest.json under
/// output_dir. seed < 0 defers to the config (default 42); jobs <= 0 means 1.
RunStatus run_command(const Config& cfg, const std::string& output_dir, long seed, int jobs,
                      std::string* error_message = nullptr);

const char* version_string();

} // namespace kdvlab
