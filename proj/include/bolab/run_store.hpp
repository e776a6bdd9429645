#pragma once

#include "bolab/config.hpp"
#include "bolab/diagnostics.hpp"
#include "bolab/trajectory.hpp"

#include <string>
#include <vector>

namespace bolab {

/// One completed (or failed) run on disk. The id is the content hash of the
/// config, so re-running the same config lands in the same directory.
struct RunRecord {
    std::string id;
    std::string directory;
    bool completed = false;
    double wall_seconds = 0.0;
    std::string error;
};

/// Writes config.json, trajectory.csv, diagnostics.json and a manifest with
/// checksums into <out_dir>/<run id>/ and returns the record.
RunRecord write_run_directory(const std::string& out_dir, const RunConfig& config,
                              const Trajectory& traj, const DiagnosticReport& report);

/// Executes one config end to end (evolve or pde per `engine`), writing a run
/// directory. Never throws; failures are captured in the record.
RunRecord execute_run(const std::string& out_dir, const RunConfig& config,
                      const std::string& engine);

/// Runs a grid of configs with at most `workers` in flight. Partial failures
/// do not abort sibling runs.
std::vector<RunRecord> run_sweep(const std::string& out_dir,
                                 const std::vector<RunConfig>& grid,
                                 const std::string& engine, int workers);

std::uint64_t fnv1a(const std::string& data);

} // namespace bolab
