// bolab — a numerical laboratory for the damped Benjamin-Ono equation on the
// torus, driven in Birkhoff (nonlinear Fourier) coordinates with a direct
// pseudospectral solver as cross-check.
//
// Exit codes: 0 success, 1 usage/config error, 2 engine error,
//             3 acceptance-check failure (compare/diagnose).

#include "bolab/birkhoff_map.hpp"
#include "bolab/config.hpp"
#include "bolab/diagnostics.hpp"
#include "bolab/errors.hpp"
#include "bolab/integrator.hpp"
#include "bolab/pde.hpp"
#include "bolab/run_store.hpp"
#include "bolab/vector_field.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace bolab;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "runs";
    int workers = 4;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool quiet = false;
};

RunConfig load_config(const CommonOpts& opts) {
    RunConfig c = RunConfig::from_json_file(opts.config_path);
    if (opts.seed_set) c.seed = opts.seed;
    return c;
}

int cmd_birkhoff(const CommonOpts& opts) {
    const RunConfig config = load_config(opts);
    const FourierFunction u0 = make_initial_data(config);
    const ForwardResult fw =
        birkhoff_forward(u0, config.n_modes, config.effective_lax_cut());

    const SpectralParams params =
        SpectralParams::from_actions(fw.state.actions());
    if (params.min_factor < 1e-8)
        std::fprintf(stderr,
                     "warning: near-resonant actions (smallest product factor %.2e); "
                     "spectral parameters are ill-conditioned\n",
                     params.min_factor);

    std::filesystem::create_directories(opts.out_dir);
    const std::string path =
        (std::filesystem::path(opts.out_dir) / ("spectrum_" + config_hash(config) + ".json"))
            .string();
    {
        std::ofstream out(path);
        out << fw.spectrum.to_json() << "\n";
    }
    if (!opts.quiet) {
        std::printf("#  n      gamma_n           lambda_n          kappa_n\n");
        const int rows = std::min(config.n_modes, fw.spectrum.cutoff());
        for (int n = 0; n <= rows; ++n)
            std::printf("%4d  %-16.9g  %-16.9g  %-16.9g\n", n,
                        n == 0 ? 1.0 : fw.spectrum.gamma[n - 1], fw.spectrum.lambda[n],
                        fw.spectrum.kappa[n]);
        std::printf("spectrum written to %s\n", path.c_str());
    }
    return 0;
}

int cmd_run(const CommonOpts& opts, const std::string& engine) {
    const RunConfig config = load_config(opts);
    const RunRecord rec = execute_run(opts.out_dir, config, engine);
    if (!rec.completed) throw Error(rec.error);
    if (!opts.quiet) {
        std::printf("run %s finished in %.2fs -> %s\n", rec.id.c_str(), rec.wall_seconds,
                    rec.directory.c_str());
        std::ifstream diag(std::filesystem::path(rec.directory) / "diagnostics.json");
        nlohmann::json j;
        diag >> j;
        for (const auto& c : j["checks"])
            std::printf("%s  %s\n", c["pass"].get<bool>() ? "pass" : "FAIL",
                        c["name"].get<std::string>().c_str());
    }
    return 0;
}

int cmd_compare(const CommonOpts& opts, double threshold) {
    const RunConfig config = load_config(opts);
    const FourierFunction u0 = make_initial_data(config);
    const CrossValidation cv = cross_validate(u0, config);

    std::filesystem::create_directories(opts.out_dir);
    const std::string path =
        (std::filesystem::path(opts.out_dir) / ("compare_" + config_hash(config) + ".json"))
            .string();
    {
        std::ofstream out(path);
        out << cv.to_json() << "\n";
    }
    if (!opts.quiet)
        std::printf("max action discrepancy %.3e (zeta %.3e) over n <= %d; report %s\n",
                    cv.max_action_discrepancy, cv.max_zeta_discrepancy, cv.compared_modes,
                    path.c_str());
    return cv.max_action_discrepancy <= threshold ? 0 : 3;
}

int cmd_diagnose(const CommonOpts& opts, const std::string& run_dir) {
    const std::filesystem::path dir(run_dir);
    const RunConfig config = RunConfig::from_json_file((dir / "config.json").string());
    const Trajectory traj = read_trajectory_csv((dir / "trajectory.csv").string());
    Trajectory with_meta = traj;
    with_meta.meta = config;

    const DiagnosticReport report = diagnose_trajectory(with_meta, config);
    {
        std::ofstream out(dir / "diagnostics.json");
        out << report.to_json() << "\n";
    }
    if (!opts.quiet) std::fputs(report.summary_table().c_str(), stdout);
    return report.all_pass() ? 0 : 3;
}

int cmd_sweep(const CommonOpts& opts, const std::vector<double>& alphas,
              const std::vector<double>& rs) {
    const RunConfig base = load_config(opts);
    std::vector<RunConfig> grid;
    for (double a : alphas.empty() ? std::vector<double>{base.alpha} : alphas) {
        for (double r : rs.empty() ? std::vector<double>{-1.0} : rs) {
            RunConfig c = base;
            c.alpha = a;
            if (r >= 0.0) {
                c.initial_data.type = InitialData::Type::one_gap;
                c.initial_data.r = r;
            }
            grid.push_back(c);
        }
    }
    const auto records = run_sweep(opts.out_dir, grid, "evolve", opts.workers);
    int failures = 0;
    for (const auto& rec : records) {
        if (!rec.completed) ++failures;
        if (!opts.quiet)
            std::printf("%s  %s  %.2fs%s%s\n", rec.completed ? "done" : "FAIL",
                        rec.id.c_str(), rec.wall_seconds, rec.error.empty() ? "" : "  ",
                        rec.error.c_str());
    }
    if (!opts.quiet)
        std::printf("%zu/%zu runs completed\n", records.size() - failures, records.size());
    return failures == 0 ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"damped Benjamin-Ono laboratory"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string engine, run_dir;
    double compare_threshold = 1e-4;
    std::vector<double> sweep_alphas, sweep_rs;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config)
            sub->add_option("--config", opts.config_path, "JSON run configuration")
                ->required();
        sub->add_option("--out", opts.out_dir, "output directory");
        sub->add_option("--workers", opts.workers, "sweep parallelism");
        sub->add_option("--seed", opts.seed, "random initial-data seed")
            ->each([&](const std::string&) { opts.seed_set = true; });
        sub->add_flag("--quiet", opts.quiet, "suppress console output");
    };

    auto* birkhoff = app.add_subcommand("birkhoff", "direct Birkhoff map of the initial data");
    add_common(birkhoff, true);
    auto* evolve_cmd = app.add_subcommand("evolve", "integrate in Birkhoff coordinates");
    add_common(evolve_cmd, true);
    auto* pde_cmd = app.add_subcommand("pde", "integrate the PDE pseudospectrally");
    add_common(pde_cmd, true);
    auto* compare = app.add_subcommand("compare", "cross-validate the two engines");
    add_common(compare, true);
    compare->add_option("--threshold", compare_threshold,
                        "max allowed action discrepancy (exit 3 beyond)");
    auto* diagnose = app.add_subcommand("diagnose", "re-run diagnostics on a run directory");
    diagnose->add_option("run_dir", run_dir, "run directory with config.json + trajectory.csv")
        ->required();
    diagnose->add_flag("--quiet", opts.quiet, "suppress console output");
    auto* sweep = app.add_subcommand("sweep", "grid of runs over alpha and one-gap r");
    add_common(sweep, true);
    sweep->add_option("--alpha", sweep_alphas, "damping grid");
    sweep->add_option("--r", sweep_rs, "one-gap parameter grid");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(birkhoff)) return cmd_birkhoff(opts);
        if (app.got_subcommand(evolve_cmd)) return cmd_run(opts, "evolve");
        if (app.got_subcommand(pde_cmd)) return cmd_run(opts, "pde");
        if (app.got_subcommand(compare)) return cmd_compare(opts, compare_threshold);
        if (app.got_subcommand(diagnose)) return cmd_diagnose(opts, run_dir);
        if (app.got_subcommand(sweep)) return cmd_sweep(opts, sweep_alphas, sweep_rs);
    } catch (const InvalidInputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}
