// Acceptance checks: prints one PASS/FAIL line per criterion and exits non-zero if any fails.

#include "polisim/firm_ops.h"
#include "polisim/goods_market.h"
#include "polisim/government.h"
#include "polisim/housing_market.h"
#include "polisim/runner.h"
#include "polisim/space.h"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using namespace polisim;

namespace
{

int g_failures = 0;

void report(bool ok, const std::string& name, const std::string& detail)
{
    std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
    if (!ok) {
        ++g_failures;
    }
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

bool close(double a, double b, double tol = 1e-12)
{
    return std::abs(a - b) <= tol;
}

std::vector<RunRecord> read_series(const fs::path& p)
{
    std::ifstream in(p);
    return read_series_csv(in);
}

// ---------------------------------------------------------------------------

void check_determinism(const fs::path& cli, const fs::path& work)
{
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path a = work / "determinism_a";
    const fs::path b = work / "determinism_b";
    bool ok = true;
    std::string detail;
    for (const auto& dir : {a, b}) {
        fs::remove_all(dir);
        const std::string cmd = "\"" + cli.string() + "\" batch --runs 3 --designs 1,4,7 --seed 42 --out \"" +
                                dir.string() + "\" 2>/dev/null >/dev/null";
        if (std::system(cmd.c_str()) != 0) {
            ok     = false;
            detail = "batch command failed";
        }
    }
    int compared = 0;
    if (ok) {
        for (const auto& entry : fs::directory_iterator(a)) {
            const auto name = entry.path().filename();
            if (entry.path().extension() != ".csv") {
                continue;
            }
            ++compared;
            if (!fs::exists(b / name) || slurp(entry.path()) != slurp(b / name)) {
                ok     = false;
                detail = name.string() + " differs";
            }
        }
        ok = ok && compared == 3 * 3 * 2 + 1;
    }
    const double secs = seconds_since(t0);
    ok = ok && secs < 300.0;
    report(ok, "determinism",
           (detail.empty() ? std::to_string(compared) + " CSV files byte-identical" : detail) + ", " + fmt(secs) +
               " s (limit 300 s)");
}

void check_formulas()
{
    std::vector<std::string> failed;
    auto expect = [&](bool ok, const char* what) {
        if (!ok) {
            failed.emplace_back(what);
        }
    };

    // Eq. 1: wages
    Agent e1;
    e1.qualification = 1;
    Agent e16;
    e16.qualification = 16;
    expect(close(wage_of(e1, 0.65, 0.25), 0.65), "wage E=1");
    expect(close(wage_of(e16, 0.65, 0.25), 1.30), "wage E=16");
    {
        std::vector<Agent> agents{e1, e16};
        agents[0].id = 0;
        agents[1].id = 1;
        Firm f;
        f.balance   = 10;
        f.employees = {0, 1};
        pay_wages(f, agents, 0.65, 0.25);
        expect(close(f.balance, 8.05) && close(agents[0].cash, 0.65) && close(agents[1].cash, 1.30), "wage transfer");
        f.balance = 0.5;
        pay_wages(f, agents, 0.65, 0.25);
        expect(close(f.balance, -1.45), "negative balance");
    }

    // Eq. 2: dwelling quality and initial price
    {
        Dwelling d;
        d.size = 50;
        std::vector<Dwelling> ds{d};
        Region r;
        r.qli      = 3;
        r.qli_prev = 3;
        update_dwelling_prices(ds, {r});
        expect(ds[0].quality == 150.0, "quality");
        expect(close(50 * 1.4, 70.0), "initial price");
    }

    // Eq. 3: production
    {
        std::vector<Agent> agents{e1, e16};
        agents[0].id = 0;
        agents[1].id = 1;
        Firm f;
        expect(produce_daily(f, agents, 0.25) == 0.0, "no workers");
        f.employees = {1};
        expect(close(produce_daily(f, agents, 0.25), 2.0), "one worker");
        f.employees = {0, 1};
        expect(close(produce_daily(f, agents, 0.25), 3.0), "two workers");
    }

    // Eq. 4: prices
    {
        Firm f;
        f.inventory = 5;
        expect(close(update_price(f, 10, 0.03), 1.03), "markup");
        expect(close(update_price(f, 10, 0.03), 1.0609), "compounding");
        f.inventory = 500;
        f.price     = 2.7;
        expect(update_price(f, 10, 0.03) == 1.0, "back to cost");
    }

    // Eq. 5: consumption budget, sale and tax
    {
        RngStream rng(1);
        Agent a;
        expect(draw_consumption_budget(a, 0.87, rng) == 0.0, "no cash");
        a.cash = 0.5;
        bool in_range = true;
        for (int i = 0; i < 1000; ++i) {
            const double b = draw_consumption_budget(a, 0.87, rng);
            in_range = in_range && b >= 0.0 && b <= 0.5;
        }
        expect(in_range, "budget below one unit");

        Agent buyer;
        buyer.cash = 10;
        Firm f;
        f.inventory = 10;
        Region r;
        const auto s = execute_sale(buyer, f, 4.0, 0.21, r);
        expect(s.quantity == 4.0 && close(s.tax, 0.84) && close(s.net_to_firm, 3.16), "sale with tax");
        f.price     = 2;
        f.inventory = 3;
        const auto capped = execute_sale(buyer, f, 10.0, 0.21, r);
        expect(capped.quantity == 3.0 && capped.gross_value == 6.0 && capped.change_returned == 4.0, "stock cap");
    }

    // Eq. 6: dwelling prices follow the QLI
    {
        Dwelling d;
        d.price = 70;
        d.size  = 50;
        std::vector<Dwelling> ds{d};
        Region r;
        r.qli_prev = 100;
        r.qli      = 110;
        update_dwelling_prices(ds, {r});
        expect(close(ds[0].price, 77.0), "price follows QLI");
        r.qli_prev = 110;
        update_dwelling_prices(ds, {r});
        expect(close(ds[0].price, 77.0), "unchanged QLI");
    }

    // Eq. 7: QLI
    {
        Region r;
        r.month_treasury      = 50;
        r.resident_population = 100;
        expect(close(update_qli(r), 1.5), "qli");
        Region idle;
        update_qli(idle);
        expect(idle.qli == 1.0, "no taxes");
    }

    // profits, labor decisions, sampling
    {
        Firm f;
        f.quarterly_ref_balance = 100;
        f.balance               = 130;
        expect(update_profit(f, false) == 30.0, "profit");
        f.balance = 70;
        expect(update_profit(f, false) == -30.0, "loss");
        f.balance = 130;
        update_profit(f, true);
        expect(f.quarterly_ref_balance == 130.0, "quarter reference");
        expect(fraction_count(400, 0.021) == 8, "housing entrants");
        expect(median({1, 2, 3, 4}) == 2.5, "median");
    }

    report(failed.empty(), "formula-suite",
           failed.empty() ? "all worked examples exact within 1e-12" : "failed: " + failed.front());
}

void check_gini()
{
    RngStream rng(2024);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> x(static_cast<std::size_t>(rng.uniform_int(1, 200)));
        for (auto& v : x) {
            v = rng.uniform_real(0, 1000);
        }
        double diff = 0.0;
        double sum  = 0.0;
        for (double a : x) {
            sum += a;
            for (double b : x) {
                diff += std::abs(a - b);
            }
        }
        const double oracle = diff / (2.0 * static_cast<double>(x.size()) * sum);
        worst = std::max(worst, std::abs(gini(x) - oracle));
        auto scaled = x;
        for (auto& v : scaled) {
            v *= 123.0;
        }
        worst = std::max(worst, std::abs(gini(scaled) - gini(x)));
    }
    const std::vector<double> constant(50, 7.0);
    const bool ok = worst <= 1e-12 && gini(constant) == 0.0;
    report(ok, "gini-oracle", "max deviation " + fmt(worst) + " over 1000 vectors (limit 1e-12), constant -> " +
                                  fmt(gini(constant)));
}

void check_conservation(const Params& base)
{
    Params params = base;
    double worst_sale = 0.0;
    double worst_tax  = 0.0;
    double worst_wage = 0.0;
    double worst_flow = 0.0;
    long sales = 0;

    std::vector<double> firm_before;
    std::vector<double> cash_before;
    std::vector<double> wage_to_agent;
    std::vector<double> wage_from_firm;
    double month_gross = 0.0;
    double month_net   = 0.0;
    double month_tax   = 0.0;
    double agents_at_consumption = 0.0;
    double firms_at_consumption  = 0.0;
    double treasury_at_consumption = 0.0;

    auto sum_cash = [](const World& w) {
        double s = 0.0;
        for (const auto& a : w.agents) s += a.cash;
        return s;
    };
    auto sum_firms = [](const World& w) {
        double s = 0.0;
        for (const auto& f : w.firms) s += f.balance;
        return s;
    };

    SimulationHooks hooks;
    hooks.on_phase = [&](Phase phase, const Clock&, const World& w) {
        if (phase == Phase::wages) {
            firm_before.clear();
            cash_before.clear();
            for (const auto& f : w.firms) firm_before.push_back(f.balance);
            for (const auto& a : w.agents) cash_before.push_back(a.cash);
            wage_to_agent.assign(w.agents.size(), 0.0);
            wage_from_firm.assign(w.firms.size(), 0.0);
        }
        else if (phase == Phase::consumption) {
            for (std::size_t i = 0; i < w.firms.size(); ++i) {
                worst_wage = std::max(worst_wage, std::abs(firm_before[i] - w.firms[i].balance - wage_from_firm[i]));
            }
            for (std::size_t i = 0; i < w.agents.size(); ++i) {
                worst_wage = std::max(worst_wage, std::abs(w.agents[i].cash - cash_before[i] - wage_to_agent[i]));
            }
            month_gross = month_net = month_tax = 0.0;
            agents_at_consumption   = sum_cash(w);
            firms_at_consumption    = sum_firms(w);
            treasury_at_consumption = 0.0;
            for (const auto& r : w.regions) treasury_at_consumption += r.month_treasury;
        }
        else if (phase == Phase::qli) {
            double treasury = 0.0;
            for (const auto& r : w.regions) treasury += r.month_treasury;
            const double scale = std::max(1.0, month_gross);
            worst_flow = std::max(worst_flow, std::abs((agents_at_consumption - sum_cash(w)) - month_gross) / scale);
            worst_flow = std::max(worst_flow, std::abs((sum_firms(w) - firms_at_consumption) - month_net) / scale);
            worst_flow = std::max(worst_flow, std::abs((treasury - treasury_at_consumption) - month_tax) / scale);
        }
    };
    hooks.on_wage = [&](const Firm& f, const Agent& a, double amount) {
        wage_from_firm[f.id] += amount;
        wage_to_agent[a.id] += amount;
    };
    hooks.on_receipt = [&](const SaleReceipt& r) {
        ++sales;
        worst_sale = std::max(worst_sale, std::abs(r.gross_value - (r.net_to_firm + r.tax)));
        worst_sale = std::max(worst_sale, std::abs(r.budget - r.gross_value - r.change_returned));
        month_gross += r.gross_value;
        month_net += r.net_to_firm;
        month_tax += r.tax;
    };
    hooks.on_month = [&](const Snapshot& s) {
        double regional = 0.0;
        for (const auto& r : s.regions) regional += r.tax_collected_month;
        const double expected = params.model.tax_consumption * s.run.gdp_month;
        worst_tax = std::max(worst_tax, std::abs(regional - expected) / std::max(1.0, expected));
    };
    run_single(params, 1, 0, hooks);

    const bool ok = sales > 0 && worst_sale <= 1e-9 && worst_tax <= 1e-9 && worst_wage <= 1e-9 && worst_flow <= 1e-9;
    report(ok, "conservation",
           std::to_string(sales) + " sales; max |debit - credit - tax| " + fmt(worst_sale) +
               ", max monthly tax error (relative) " + fmt(worst_tax) + ", max wage imbalance " + fmt(worst_wage) +
               ", max monthly stock-flow error (relative) " + fmt(worst_flow) + " (limit 1e-9)");
}

void check_partition()
{
    const Partition designs[] = {build_partition(1), build_partition(4), build_partition(7)};
    RngStream rng(77);
    long bad = 0;
    long nesting = 0;
    for (int i = 0; i < 1000000; ++i) {
        const Point p{rng.uniform_real(-10, 10), rng.uniform_real(-10, 10)};
        for (const auto& d : designs) {
            int hits = 0;
            for (const auto& r : d) {
                hits += r.contains(p) ? 1 : 0;
            }
            bad += hits == 1 ? 0 : 1;
        }
        const int r4 = locate(designs[1], p);
        const int r7 = locate(designs[2], p);
        if ((r4 < 3 && r7 != r4) || (r4 == 3 && r7 < 3)) {
            ++nesting;
        }
    }
    bool areas = true;
    for (int id = 3; id < 7; ++id) {
        areas = areas && designs[2][static_cast<std::size_t>(id)].rect.area() == 25.0;
    }
    report(bad == 0 && nesting == 0 && areas, "partition",
           "1e6 points: " + std::to_string(bad) + " not in exactly one region, " + std::to_string(nesting) +
               " nesting violations, small-region areas " + (areas ? "25" : "wrong"));
}

struct BatchFinals {
    std::map<int, std::vector<RunRecord>> finals; // by design, in run order
};

BatchFinals run_default_batch(const Params& params, int runs, int jobs, const fs::path& dir)
{
    BatchOptions options;
    options.designs  = {1, 4, 7};
    options.num_runs = runs;
    options.jobs     = jobs;
    const auto t0    = std::chrono::steady_clock::now();
    run_batch(params, options, dir);
    std::cout << "  (batch of " << runs << " runs per design took " << fmt(seconds_since(t0)) << " s)" << std::endl;
    BatchFinals out;
    for (int d : options.designs) {
        for (int r = 0; r < runs; ++r) {
            out.finals[d].push_back(read_series(dir / series_file_name(d, r)).back());
        }
    }
    return out;
}

double median_of(const std::vector<RunRecord>& runs, double RunRecord::*field, std::size_t limit = SIZE_MAX)
{
    std::vector<double> v;
    for (std::size_t i = 0; i < runs.size() && i < limit; ++i) {
        v.push_back(runs[i].*field);
    }
    return quantile(v, 0.5);
}

void check_full_employment(const BatchFinals& batch, int runs)
{
    bool ok = true;
    std::string detail;
    for (const auto& [design, finals] : batch.finals) {
        int below = 0;
        const std::size_t n = std::min<std::size_t>(finals.size(), static_cast<std::size_t>(runs));
        for (std::size_t i = 0; i < n; ++i) {
            below += finals[i].unemployment < 0.05 ? 1 : 0;
        }
        const double share = static_cast<double>(below) / static_cast<double>(n);
        ok = ok && share >= 0.9;
        detail += "design " + std::to_string(design) + ": " + std::to_string(below) + "/" + std::to_string(n) +
                  " runs < 5% (median final unemployment " +
                  fmt(median_of(finals, &RunRecord::unemployment, n)) + "); ";
    }
    report(ok, "full-employment", detail + "need >= 90% per design");
}

void check_ordering(const BatchFinals& batch)
{
    const auto& f = batch.finals;
    auto med = [&](int d, double RunRecord::*field) { return median_of(f.at(d), field); };
    const double g1 = med(1, &RunRecord::gdp_cumulative);
    const double g4 = med(4, &RunRecord::gdp_cumulative);
    const double g7 = med(7, &RunRecord::gdp_cumulative);
    const double q1 = med(1, &RunRecord::qli_mean);
    const double q4 = med(4, &RunRecord::qli_mean);
    const double q7 = med(7, &RunRecord::qli_mean);
    const double gi1 = med(1, &RunRecord::gini_utility);
    const double gi7 = med(7, &RunRecord::gini_utility);
    const double w1 = med(1, &RunRecord::median_family_wealth);
    const double w7 = med(7, &RunRecord::median_family_wealth);

    const bool gdp_order  = g7 > g4 && g4 > g1;
    const bool qli_order  = q7 > q4 && q4 > q1;
    const bool gini_order = gi7 > gi1;
    const bool wealth     = w7 > w1;
    const bool ratios     = g7 / g4 > 1.1 && g4 / g1 > 1.1;
    report(gdp_order && qli_order && gini_order && wealth && ratios, "stochastic-ordering",
           "median GDP 1/4/7 = " + fmt(g1) + "/" + fmt(g4) + "/" + fmt(g7) + " (ratios 7/4 " + fmt(g7 / g4) +
               ", 4/1 " + fmt(g4 / g1) + ", need > 1.1); median QLI " + fmt(q1) + "/" + fmt(q4) + "/" + fmt(q7) +
               "; median Gini 1/7 " + fmt(gi1) + "/" + fmt(gi7) + "; median wealth 1/7 " + fmt(w1) + "/" +
               fmt(w7) + "; orders gdp " + (gdp_order ? "ok" : "no") + ", qli " + (qli_order ? "ok" : "no") +
               ", gini " + (gini_order ? "ok" : "no") + ", wealth " + (wealth ? "ok" : "no"));
}

std::vector<RunRecord> fixed_seed_run(const Params& base, const std::string& key, double value)
{
    Params p = base;
    set_parameter(p, key, format_value(value));
    return run_single(p, 1, 0).series;
}

void check_sensitivity(const Params& base)
{
    {
        const double high = fixed_seed_run(base, "beta", 0.99).back().gini_utility;
        const double low  = fixed_seed_run(base, "beta", 0.5).back().gini_utility;
        report(high > low, "sensitivity-beta",
               "final Gini with beta 0.99 = " + fmt(high) + ", beta 0.5 = " + fmt(low) + " (need first > second)");
    }
    {
        auto tail_mean = [](const std::vector<RunRecord>& s) {
            const std::size_t n = std::min<std::size_t>(60, s.size());
            double sum = 0.0;
            for (std::size_t i = s.size() - n; i < s.size(); ++i) {
                sum += s[i].unemployment;
            }
            return sum / static_cast<double>(n);
        };
        const double high = tail_mean(fixed_seed_run(base, "tax_consumption", 0.45));
        const double low  = tail_mean(fixed_seed_run(base, "tax_consumption", 0.01));
        report(high > low, "sensitivity-tax",
               "mean unemployment over the last 60 months with tax 0.45 = " + fmt(high) + ", tax 0.01 = " + fmt(low) +
                   " (need first > second)");
    }
    {
        auto first_month_below = [](const std::vector<RunRecord>& s) {
            for (const auto& r : s) {
                if (r.unemployment < 0.05) {
                    return r.month_index;
                }
            }
            return -1;
        };
        const int slow = first_month_below(fixed_seed_run(base, "labor_market_frequency", 0.5));
        const int fast = first_month_below(fixed_seed_run(base, "labor_market_frequency", 0.1));
        const bool ok  = fast > 0 && (slow < 0 || slow > fast);
        auto show = [](int m) { return m < 0 ? std::string("never") : "month " + std::to_string(m); };
        report(ok, "sensitivity-gamma",
               "first month below 5% unemployment with gamma 0.5: " + show(slow) + ", gamma 0.1: " + show(fast) +
                   " (need gamma 0.1 to get there, and earlier)");
    }
}

void check_sweep_isolation(const Params& base, const fs::path& work)
{
    const fs::path dir = work / "sweep";
    fs::remove_all(dir);
    auto plan = default_sweep_plan("markup");
    run_sweep(base, plan, dir);

    bool ok = true;
    int compared = 0;
    const double value = plan.values[3];
    for (int design : plan.designs) {
        const fs::path again = work / ("sweep_rerun_" + std::to_string(design));
        fs::remove_all(again);
        run_sweep_cell(base, plan.parameter, value, design, again);
        const fs::path cell = dir / sweep_cell_name(plan.parameter, value);
        for (const auto& name : {series_file_name(design, 0), regions_file_name(design, 0)}) {
            ++compared;
            ok = ok && fs::exists(cell / name) && slurp(cell / name) == slurp(again / name);
        }
    }
    report(ok, "sweep-isolation",
           "markup sweep, cell " + sweep_cell_name(plan.parameter, value) + " rerun alone: " +
               std::to_string(compared) + " files " + (ok ? "byte-identical" : "differ"));
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"acceptance checks"};
    std::string cli;
    std::string work = (fs::temp_directory_path() / "polisim_acceptance").string();
    int order_runs = 100;
    int employment_runs = 50;
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    app.add_option("--cli", cli, "path of the polisim command line tool")->required();
    app.add_option("--work", work, "scratch directory");
    app.add_option("--order-runs", order_runs, "runs per design for the ordering check");
    app.add_option("--employment-runs", employment_runs, "runs per design for the full-employment check");
    app.add_option("--jobs", jobs, "parallel workers for batches");
    CLI11_PARSE(app, argc, argv);

    const auto t0 = std::chrono::steady_clock::now();
    fs::create_directories(work);
    Params params;
    params.sim.seed = 1;

    try {
        check_determinism(cli, work);
        check_formulas();
        check_gini();
        check_conservation(params);
        check_partition();
        const auto batch = run_default_batch(params, std::max(order_runs, employment_runs), jobs, fs::path(work) / "batch");
        check_full_employment(batch, employment_runs);
        check_ordering(batch);
        check_sensitivity(params);
        check_sweep_isolation(params, work);
    }
    catch (const std::exception& e) {
        report(false, "harness", e.what());
    }
    std::cout << g_failures << " criteria failed, total " << fmt(seconds_since(t0)) << " s" << std::endl;
    return g_failures == 0 ? 0 : 1;
}
