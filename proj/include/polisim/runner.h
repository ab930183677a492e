#ifndef POLISIM_RUNNER_H
#define POLISIM_RUNNER_H

#include "polisim/config.h"
#include "polisim/scheduler.h"
#include "polisim/stats.h"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace polisim
{

/// Builds the world for (`params`, design) from run stream `run_index` and simulates it.
SimulationResult run_single(Params params, int design, int run_index, const SimulationHooks& hooks = {});

// CSV output. Reals are written with 9 significant digits.
std::string format_value(double v);
void write_series_csv(std::ostream& out, const std::vector<RunRecord>& series);
void write_regions_csv(std::ostream& out, const std::vector<RegionRecord>& regions);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
std::vector<RunRecord> read_series_csv(std::istream& in);
std::vector<RegionRecord> read_regions_csv(std::istream& in);

std::string series_file_name(int design, int run);
std::string regions_file_name(int design, int run);

/// Fingerprint, RNG identifier and the region table of every listed design.
std::string meta_text(const Params& params, const std::vector<int>& designs, const std::string& extra = {});

/// Creates `dir` if needed and checks that files can be written there. Throws std::runtime_error otherwise.
void ensure_writable(const std::filesystem::path& dir);

struct BatchOptions {
    std::vector<int> designs = {1};
    int num_runs = 1;
    int jobs = 1;
    std::function<void(int design, int run)> on_run_done;
};

/**
 * Runs `num_runs` independent runs per design, writing series and regions CSVs per run, then `summary.csv` and
 * `meta.txt`. Run r uses derive_run_stream(seed, r) for every design. Output is independent of `jobs`.
 */
void run_batch(const Params& params, const BatchOptions& options, const std::filesystem::path& out_dir);

/// Reads every series/regions pair in `dir` and writes `summary.csv`. Returns the summary rows.
std::vector<SummaryRow> summarize_dir(const std::filesystem::path& dir);

/// Parses a comma-separated design list such as "1,4,7".
std::vector<int> parse_designs(const std::string& text);

/// One-at-a-time sensitivity plan: a single parameter over its value grid, everything else at its base value.
struct SweepPlan {
    std::string parameter;
    std::vector<double> values;
    std::vector<int> designs = {1, 4, 7};
};

/// Parameters with a built-in value grid, in table order.
std::vector<std::string> sweep_parameters();

/// The built-in ten-value grid for `parameter`. Throws ConfigError for parameters without one.
SweepPlan default_sweep_plan(const std::string& parameter);

/// Directory name of one sweep cell, e.g. "alpha_0.14".
std::string sweep_cell_name(const std::string& parameter, double value);

/**
 * Runs every (value, design) cell once with run stream 0 of the base seed. Each cell gets its own directory
 * holding its series, regions and meta files; `sweep_summary.csv` lists the final month of every cell.
 * Values are validated before anything runs; an invalid one is rejected naming its position in the grid.
 */
void run_sweep(const Params& base, const SweepPlan& plan, const std::filesystem::path& out_dir,
               const std::function<void(const std::string& cell, int design)>& on_cell_done = {});

/// Simulates one sweep cell and writes its outputs into `cell_dir`.
void run_sweep_cell(const Params& base, const std::string& parameter, double value, int design,
                    const std::filesystem::path& cell_dir);

} // namespace polisim

#endif // POLISIM_RUNNER_H
