#pragma once

#include <filesystem>
#include <functional>
#include <string>

#include "config.hpp"

namespace superburst::cli {

namespace fs = std::filesystem;

inline constexpr const char* kToolVersion = SUPERBURST_VERSION;

struct RunContext {
    int threads = 0;   // OpenMP threads per run; 0 leaves the runtime default
    bool strict = true;
    int workers = 0;   // overrides sweep.workers when > 0
};

/**
 * Runs `body` and turns its exception into an exit code: 1 for configuration
 * errors, 2 for integration failures, 3 for anything else. Failures leave an
 * error.json in `dir` when one is given.
 */
int run_guarded(const fs::path& dir, const std::function<void()>& body);

/// Single trajectory: manifest.json, trace.csv and the enabled analyses.
nlohmann::json run_simulate(const RunConfig& config, const fs::path& dir, const RunContext& ctx);
/// Burst from a tipped state compared with the closed-form delay and width.
nlohmann::json run_transient(const RunConfig& config, const fs::path& dir, const RunContext& ctx);
nlohmann::json run_phase_diagram(const RunConfig& config, const fs::path& dir, const RunContext& ctx);
/// Child runs in run-<hash> directories, sweep.csv and fits.json. Returns the worst child exit code.
int run_sweep(const RunConfig& config, const fs::path& dir, const RunContext& ctx);
/// Re-analyses an existing trace.csv with the analysis block of `config`.
nlohmann::json run_analyze(const fs::path& trace_csv, const RunConfig& config, const fs::path& dir);

/// Packaged figure configurations, keyed by figure id.
[[nodiscard]] const std::vector<std::pair<std::string, std::string>>& presets();
/// Runs every entry of a preset; returns the worst exit code.
int run_reproduce(const std::string& figure, const fs::path& dir, std::optional<std::uint64_t> seed,
                  const RunContext& ctx);

}  // namespace superburst::cli
