#include "bolab/run_store.hpp"

#include "bolab/birkhoff_map.hpp"
#include "bolab/errors.hpp"
#include "bolab/integrator.hpp"
#include "bolab/pde.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace bolab {

namespace fs = std::filesystem;

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

std::string file_checksum(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(ss.str())));
    return buf;
}

} // namespace

RunRecord write_run_directory(const std::string& out_dir, const RunConfig& config,
                              const Trajectory& traj, const DiagnosticReport& report) {
    RunRecord rec;
    rec.id = config_hash(config);
    const fs::path dir = fs::path(out_dir) / rec.id;
    fs::create_directories(dir);
    rec.directory = dir.string();

    {
        std::ofstream out(dir / "config.json");
        out << config.to_json() << "\n";
    }
    write_trajectory_csv(traj, (dir / "trajectory.csv").string());
    {
        std::ofstream out(dir / "diagnostics.json");
        out << report.to_json() << "\n";
    }

    nlohmann::json manifest;
    manifest["run_id"] = rec.id;
    for (const char* name : {"config.json", "trajectory.csv", "diagnostics.json"})
        manifest["files"][name] = file_checksum(dir / name);
    {
        std::ofstream out(dir / "manifest.json");
        out << manifest.dump(2) << "\n";
    }
    rec.completed = true;
    return rec;
}

RunRecord execute_run(const std::string& out_dir, const RunConfig& config,
                      const std::string& engine) {
    const auto start = std::chrono::steady_clock::now();
    RunRecord rec;
    rec.id = config_hash(config);
    try {
        const FourierFunction u0 = make_initial_data(config);
        Trajectory traj;
        if (engine == "pde") {
            traj = pde_evolve(u0, config);
        } else {
            ForwardResult fw =
                birkhoff_forward(u0, config.n_modes, config.effective_lax_cut());
            traj = evolve(fw.state, config);
        }
        const DiagnosticReport report = diagnose_trajectory(traj, config);
        rec = write_run_directory(out_dir, config, traj, report);
    } catch (const std::exception& e) {
        rec.completed = false;
        rec.error = e.what();
    }
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

std::vector<RunRecord> run_sweep(const std::string& out_dir,
                                 const std::vector<RunConfig>& grid,
                                 const std::string& engine, int workers) {
    std::vector<RunRecord> records(grid.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            records[i] = execute_run(out_dir, grid[i], engine);
        }
    };
    const int n_threads = std::max(1, std::min<int>(workers, static_cast<int>(grid.size())));
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return records;
}

} // namespace bolab
