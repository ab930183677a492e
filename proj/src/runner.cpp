#include "polisim/runner.h"
#include "polisim/space.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace fs = std::filesystem;

namespace polisim
{

SimulationResult run_single(Params params, int design, int run_index, const SimulationHooks& hooks)
{
    params.sim.num_regions = design;
    validate(params);
    RngStream rng = derive_run_stream(params.sim.seed, static_cast<std::uint64_t>(run_index));
    World world   = build_world(params, rng);
    return run_simulation(world, params, rng, run_index, hooks);
}

std::string format_value(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

namespace
{

const char* const kSeriesHeader = "run_id,month,gdp_month,gdp_cumulative,unemployment,avg_workers_per_firm,avg_price,"
                                  "avg_firm_balance,sum_firm_profit,gini_utility,median_family_wealth,avg_utility,"
                                  "qli_mean";
const char* const kRegionsHeader = "run_id,month,region_id,qli,population,tax_collected_month";

std::vector<std::string> split(const std::string& line, char sep = ',')
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) {
        out.push_back(field);
    }
    return out;
}

std::vector<std::vector<std::string>> read_rows(std::istream& in, const char* header, std::size_t width)
{
    std::string line;
    if (!std::getline(in, line) || line != header) {
        throw std::runtime_error(std::string("unexpected CSV header, expected '") + header + "'");
    }
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto fields = split(line);
        if (fields.size() != width) {
            throw std::runtime_error("malformed CSV row '" + line + "'");
        }
        rows.push_back(std::move(fields));
    }
    return rows;
}

void write_file(const fs::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << content;
}

void write_run_files(const fs::path& dir, int design, int run, const SimulationResult& result)
{
    std::ostringstream series, regions;
    write_series_csv(series, result.series);
    write_regions_csv(regions, result.regions);
    write_file(dir / series_file_name(design, run), series.str());
    write_file(dir / regions_file_name(design, run), regions.str());
}

} // namespace

void write_series_csv(std::ostream& out, const std::vector<RunRecord>& series)
{
    out << kSeriesHeader << '\n';
    for (const auto& r : series) {
        out << r.run_id << ',' << r.month_index << ',' << format_value(r.gdp_month) << ','
            << format_value(r.gdp_cumulative) << ',' << format_value(r.unemployment) << ','
            << format_value(r.avg_workers_per_firm) << ',' << format_value(r.avg_price) << ','
            << format_value(r.avg_firm_balance) << ',' << format_value(r.sum_firm_profit) << ','
            << format_value(r.gini_utility) << ',' << format_value(r.median_family_wealth) << ','
            << format_value(r.avg_utility) << ',' << format_value(r.qli_mean) << '\n';
    }
}

void write_regions_csv(std::ostream& out, const std::vector<RegionRecord>& regions)
{
    out << kRegionsHeader << '\n';
    for (const auto& r : regions) {
        out << r.run_id << ',' << r.month_index << ',' << r.region_id << ',' << format_value(r.qli) << ','
            << r.population << ',' << format_value(r.tax_collected_month) << '\n';
    }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows)
{
    out << "design,indicator,statistic,value\n";
    for (const auto& r : rows) {
        out << r.design << ',' << r.indicator << ',' << r.statistic << ',' << format_value(r.value) << '\n';
    }
}

std::vector<RunRecord> read_series_csv(std::istream& in)
{
    std::vector<RunRecord> out;
    for (const auto& f : read_rows(in, kSeriesHeader, 13)) {
        RunRecord r;
        r.run_id               = std::stoi(f[0]);
        r.month_index          = std::stoi(f[1]);
        r.gdp_month            = std::stod(f[2]);
        r.gdp_cumulative       = std::stod(f[3]);
        r.unemployment         = std::stod(f[4]);
        r.avg_workers_per_firm = std::stod(f[5]);
        r.avg_price            = std::stod(f[6]);
        r.avg_firm_balance     = std::stod(f[7]);
        r.sum_firm_profit      = std::stod(f[8]);
        r.gini_utility         = std::stod(f[9]);
        r.median_family_wealth = std::stod(f[10]);
        r.avg_utility          = std::stod(f[11]);
        r.qli_mean             = std::stod(f[12]);
        out.push_back(r);
    }
    return out;
}

std::vector<RegionRecord> read_regions_csv(std::istream& in)
{
    std::vector<RegionRecord> out;
    for (const auto& f : read_rows(in, kRegionsHeader, 6)) {
        out.push_back({std::stoi(f[0]), std::stoi(f[1]), std::stoi(f[2]), std::stod(f[3]), std::stoi(f[4]),
                       std::stod(f[5])});
    }
    return out;
}

std::string series_file_name(int design, int run)
{
    return "series_" + std::to_string(design) + "_" + std::to_string(run) + ".csv";
}

std::string regions_file_name(int design, int run)
{
    return "regions_" + std::to_string(design) + "_" + std::to_string(run) + ".csv";
}

std::string meta_text(const Params& params, const std::vector<int>& designs, const std::string& extra)
{
    std::ostringstream out;
    out << "# polisim run metadata\n";
    out << "rng_algorithm = " << RngStream::algorithm << '\n';
    out << "designs =";
    for (int d : designs) {
        out << ' ' << d;
    }
    out << '\n' << extra;
    out << "\n[fingerprint]\n" << fingerprint(params);
    for (int d : designs) {
        out << "\n[partition " << d << "]\nregion_id,x_min,x_max,y_min,y_max\n";
        for (const auto& g : build_partition(d)) {
            out << g.region_id << ',' << format_value(g.rect.x_min) << ',' << format_value(g.rect.x_max) << ','
                << format_value(g.rect.y_min) << ',' << format_value(g.rect.y_max) << '\n';
        }
    }
    return out.str();
}

void ensure_writable(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw std::runtime_error("output directory '" + dir.string() + "' cannot be created");
    }
    const fs::path probe = dir / ".polisim_write_probe";
    {
        std::ofstream out(probe);
        if (!out || !(out << "ok")) {
            throw std::runtime_error("output directory '" + dir.string() + "' is not writable");
        }
    }
    fs::remove(probe, ec);
}

void run_batch(const Params& params, const BatchOptions& options, const fs::path& out_dir)
{
    for (int d : options.designs) {
        build_partition(d);
    }
    if (options.num_runs < 1) {
        throw std::invalid_argument("a batch needs at least one run");
    }
    validate(params);
    ensure_writable(out_dir);

    struct Job {
        int design;
        int run;
    };
    std::vector<Job> jobs;
    for (int d : options.designs) {
        for (int r = 0; r < options.num_runs; ++r) {
            jobs.push_back({d, r});
        }
    }

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex, progress_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                const auto result = run_single(params, jobs[i].design, jobs[i].run);
                write_run_files(out_dir, jobs[i].design, jobs[i].run, result);
                if (options.on_run_done) {
                    std::lock_guard lock(progress_mutex);
                    options.on_run_done(jobs[i].design, jobs[i].run);
                }
            }
            catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = jobs.size();
            }
        }
    };
    const int nthreads = std::max(1, std::min<int>(options.jobs, static_cast<int>(jobs.size())));
    if (nthreads == 1) {
        worker();
    }
    else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < nthreads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }

    write_file(out_dir / "meta.txt", meta_text(params, options.designs,
                                               "num_runs = " + std::to_string(options.num_runs) + "\n"));
    summarize_dir(out_dir);
}

std::vector<SummaryRow> summarize_dir(const fs::path& dir)
{
    if (!fs::is_directory(dir)) {
        throw std::runtime_error("'" + dir.string() + "' is not a directory");
    }
    static const std::regex pattern(R"(series_(\d+)_(\d+)\.csv)");
    std::map<std::pair<int, int>, fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::smatch m;
        const std::string name = entry.path().filename().string();
        if (std::regex_match(name, m, pattern)) {
            files[{std::stoi(m[1]), std::stoi(m[2])}] = entry.path();
        }
    }
    if (files.empty()) {
        throw std::runtime_error("no series files in '" + dir.string() + "'");
    }
    std::vector<FinalState> finals;
    for (const auto& [key, path] : files) {
        std::ifstream series_in(path);
        auto series = read_series_csv(series_in);
        if (series.empty()) {
            throw std::runtime_error("'" + path.string() + "' has no rows");
        }
        FinalState state;
        state.design = key.first;
        state.run    = series.back();
        std::ifstream regions_in(dir / regions_file_name(key.first, key.second));
        if (regions_in) {
            for (auto& r : read_regions_csv(regions_in)) {
                if (r.month_index == state.run.month_index) {
                    state.regions.push_back(r);
                }
            }
        }
        finals.push_back(std::move(state));
    }
    auto rows = summarize(finals);
    std::ostringstream out;
    write_summary_csv(out, rows);
    write_file(dir / "summary.csv", out.str());
    return rows;
}

std::vector<int> parse_designs(const std::string& text)
{
    std::vector<int> out;
    for (const auto& field : split(text)) {
        std::size_t used = 0;
        int d            = 0;
        try {
            d = std::stoi(field, &used);
        }
        catch (const std::exception&) {
            used = 0;
        }
        if (used != field.size() || (d != 1 && d != 4 && d != 7)) {
            throw ConfigError("invalid design '" + field + "' (expected 1, 4 or 7)");
        }
        if (std::find(out.begin(), out.end(), d) == out.end()) {
            out.push_back(d);
        }
    }
    if (out.empty()) {
        throw ConfigError("empty design list");
    }
    return out;
}

namespace
{

const std::vector<std::pair<std::string, std::vector<double>>>& sweep_table()
{
    static const std::vector<std::pair<std::string, std::vector<double>>> table = {
        {"alpha", {0.1, 0.14, 0.19, 0.23, 0.28, 0.32, 0.37, 0.41, 0.46, 0.5}},
        {"beta", {0.5, 0.55, 0.61, 0.66, 0.72, 0.77, 0.83, 0.88, 0.94, 0.99}},
        {"price_change_quantity", {10, 42, 74, 107, 139, 171, 203, 235, 268, 300}},
        {"markup", {0.01, 0.04, 0.06, 0.09, 0.12, 0.14, 0.17, 0.2, 0.22, 0.25}},
        {"labor_market_frequency", {0.1, 0.14, 0.19, 0.23, 0.28, 0.32, 0.37, 0.41, 0.46, 0.5}},
        {"market_size", {1, 3, 5, 7, 10, 15, 30, 50, 70, 110}},
        {"housing_entry_share", {0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.1}},
        {"tax_consumption", {0.01, 0.06, 0.11, 0.16, 0.21, 0.25, 0.3, 0.35, 0.4, 0.45}},
    };
    return table;
}

} // namespace

std::vector<std::string> sweep_parameters()
{
    std::vector<std::string> out;
    for (const auto& [name, values] : sweep_table()) {
        out.push_back(name);
    }
    return out;
}

SweepPlan default_sweep_plan(const std::string& parameter)
{
    for (const auto& [name, values] : sweep_table()) {
        if (name == parameter) {
            return {name, values, {1, 4, 7}};
        }
    }
    throw ConfigError("no sensitivity grid for parameter '" + parameter + "'");
}

std::string sweep_cell_name(const std::string& parameter, double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", value);
    return parameter + "_" + buf;
}

namespace
{

Params cell_params(const Params& base, const std::string& parameter, double value, int design)
{
    Params p = base;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    set_parameter(p, parameter, buf);
    p.sim.num_regions = design;
    return p;
}

} // namespace

void run_sweep_cell(const Params& base, const std::string& parameter, double value, int design,
                    const fs::path& cell_dir)
{
    const Params p = cell_params(base, parameter, value, design);
    validate(p);
    ensure_writable(cell_dir);
    const auto result = run_single(p, design, 0);
    write_run_files(cell_dir, design, 0, result);
}

void run_sweep(const Params& base, const SweepPlan& plan, const fs::path& out_dir,
               const std::function<void(const std::string&, int)>& on_cell_done)
{
    if (!is_parameter(plan.parameter)) {
        throw ConfigError("unknown parameter '" + plan.parameter + "'");
    }
    for (int d : plan.designs) {
        build_partition(d);
    }
    for (std::size_t i = 0; i < plan.values.size(); ++i) {
        try {
            validate(cell_params(base, plan.parameter, plan.values[i], plan.designs.front()));
        }
        catch (const ConfigError& e) {
            throw ConfigError("sweep value #" + std::to_string(i + 1) + " of '" + plan.parameter +
                              "': " + e.what());
        }
    }
    ensure_writable(out_dir);

    std::ostringstream summary;
    summary << "parameter,value,design";
    for (const auto& name : summary_indicators()) {
        summary << ',' << name;
    }
    summary << '\n';
    for (double value : plan.values) {
        const std::string cell = sweep_cell_name(plan.parameter, value);
        const fs::path cell_dir = out_dir / cell;
        ensure_writable(cell_dir);
        Params cell_base = cell_params(base, plan.parameter, value, plan.designs.front());
        write_file(cell_dir / "meta.txt",
                   meta_text(cell_base, plan.designs, "sweep_parameter = " + plan.parameter + "\nsweep_value = " +
                                                          format_value(value) + "\n"));
        for (int design : plan.designs) {
            run_sweep_cell(base, plan.parameter, value, design, cell_dir);
            std::ifstream in(cell_dir / series_file_name(design, 0));
            const auto series = read_series_csv(in);
            summary << plan.parameter << ',' << format_value(value) << ',' << design;
            for (const auto& name : summary_indicators()) {
                summary << ',' << format_value(indicator_value(series.back(), name));
            }
            summary << '\n';
            if (on_cell_done) {
                on_cell_done(cell, design);
            }
        }
    }
    write_file(out_dir / "sweep_summary.csv", summary.str());
}

} // namespace polisim
