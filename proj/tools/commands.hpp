#pragma once

// The five subcommands. Each writes its files under cfg.out_dir together with
// a <command>.manifest.json echoing the resolved configuration and checksums.

#include <string>
#include <vector>

#include "config.hpp"
#include "json.hpp"

namespace wvl::cli {

struct FileRecord {
    std::string name;
    std::size_t bytes = 0;
    std::string fnv1a64;
};

struct CommandReport {
    std::string command;
    std::vector<FileRecord> files;
    nlohmann::json summary = nlohmann::json::object();
    int exit_code = 0;
    std::string message;  ///< first failure, when exit_code != 0
};

/// One verify check: residual or invariant value against its tolerance.
struct CheckResult {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    double convergence_ratio = 0.0;  ///< NaN when not studied
    bool passed = false;
};

CommandReport run_simulate(const ScenarioConfig& cfg);
CommandReport run_wigner(const ScenarioConfig& cfg);
CommandReport run_spectrum(const ScenarioConfig& cfg);
CommandReport run_stability(const ScenarioConfig& cfg);
CommandReport run_verify(const ScenarioConfig& cfg);

/// The verify battery without file output.
std::vector<CheckResult> verify_checks(const ScenarioConfig& cfg);

/// Dispatch by name; throws ConfigError for an unknown command.
CommandReport run_command(const std::string& name, const ScenarioConfig& cfg);

/// Maps an exception escaping a command to the process exit code (1, 2 or 3).
int exit_code_for(const std::exception& e);

}  // namespace wvl::cli
