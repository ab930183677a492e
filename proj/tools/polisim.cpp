// Command line front end: single runs, Monte Carlo batches, sensitivity sweeps and summaries.

#include "polisim/config.h"
#include "polisim/runner.h"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;

namespace
{

struct CommonOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& o)
{
    cmd->add_option("--config", o.config, "key = value parameter file (default: $POLISIM_CONFIG)");
    cmd->add_option("--seed", o.seed, "base seed");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--set", o.overrides, "parameter override key=value (repeatable)");
}

polisim::Params load(const CommonOptions& o)
{
    fs::path file = o.config;
    if (file.empty()) {
        if (const char* env = std::getenv("POLISIM_CONFIG")) {
            file = env;
        }
    }
    auto overrides = o.overrides;
    if (o.seed) {
        overrides.push_back("seed=" + std::to_string(*o.seed));
    }
    if (!o.out.empty()) {
        overrides.push_back("output_dir=" + o.out);
    }
    return polisim::load_config(file, overrides);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"polisim - agent-based spatial economy with regional consumption taxes"};
    app.require_subcommand(1);

    CommonOptions run_opts;
    int run_design = 0;
    auto* run_cmd  = app.add_subcommand("run", "simulate a single run");
    add_common(run_cmd, run_opts);
    run_cmd->add_option("--design", run_design, "regional design (1, 4 or 7); defaults to num_regions");

    CommonOptions batch_opts;
    int batch_runs = 0;
    std::string batch_designs = "1,4,7";
    int batch_jobs = 1;
    auto* batch_cmd = app.add_subcommand("batch", "Monte Carlo batch over regional designs");
    add_common(batch_cmd, batch_opts);
    batch_cmd->add_option("--runs", batch_runs, "runs per design (default: num_runs)");
    batch_cmd->add_option("--designs", batch_designs, "comma-separated designs");
    batch_cmd->add_option("--jobs", batch_jobs, "parallel workers")->check(CLI::PositiveNumber);

    CommonOptions sweep_opts;
    std::string sweep_param;
    std::string sweep_designs = "1,4,7";
    auto* sweep_cmd = app.add_subcommand("sweep", "one-at-a-time sensitivity sweep with a fixed seed");
    add_common(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("--param", sweep_param, "parameter to vary")->required();
    sweep_cmd->add_option("--designs", sweep_designs, "comma-separated designs");

    std::string summarize_dir;
    auto* summarize_cmd = app.add_subcommand("summarize", "recompute summary.csv from a batch directory");
    summarize_cmd->add_option("dir", summarize_dir, "batch output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            auto params = load(run_opts);
            const int design = run_design ? run_design : params.sim.num_regions;
            params.sim.num_regions = design;
            polisim::validate(params);
            const fs::path out = params.sim.output_dir;
            polisim::ensure_writable(out);
            polisim::SimulationHooks hooks;
            hooks.on_year = [](int year) { std::cerr << "year " << year << " done\n"; };
            const auto result = polisim::run_single(params, design, 0, hooks);
            std::ofstream(out / polisim::series_file_name(design, 0)) << [&] {
                std::ostringstream s;
                polisim::write_series_csv(s, result.series);
                return s.str();
            }();
            std::ofstream(out / polisim::regions_file_name(design, 0)) << [&] {
                std::ostringstream s;
                polisim::write_regions_csv(s, result.regions);
                return s.str();
            }();
            std::ofstream(out / "meta.txt") << polisim::meta_text(params, {design});
            const auto& last = result.series.back();
            std::cout << "month " << last.month_index << ": gdp_cumulative=" << polisim::format_value(last.gdp_cumulative)
                      << " unemployment=" << polisim::format_value(last.unemployment)
                      << " gini=" << polisim::format_value(last.gini_utility)
                      << " qli_mean=" << polisim::format_value(last.qli_mean) << '\n';
        }
        else if (*batch_cmd) {
            auto params = load(batch_opts);
            polisim::BatchOptions options;
            options.designs  = polisim::parse_designs(batch_designs);
            options.num_runs = batch_runs > 0 ? batch_runs : params.sim.num_runs;
            options.jobs     = batch_jobs;
            options.on_run_done = [](int design, int run) {
                std::cerr << "design " << design << " run " << run << " done\n";
            };
            polisim::run_batch(params, options, params.sim.output_dir);
            std::cout << "wrote " << params.sim.output_dir.string() << '\n';
        }
        else if (*sweep_cmd) {
            auto params = load(sweep_opts);
            auto plan   = polisim::default_sweep_plan(sweep_param);
            plan.designs = polisim::parse_designs(sweep_designs);
            polisim::run_sweep(params, plan, params.sim.output_dir, [](const std::string& cell, int design) {
                std::cerr << cell << " design " << design << " done\n";
            });
            std::cout << "wrote " << params.sim.output_dir.string() << '\n';
        }
        else if (*summarize_cmd) {
            const auto rows = polisim::summarize_dir(summarize_dir);
            polisim::write_summary_csv(std::cout, rows);
        }
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
