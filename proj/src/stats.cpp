#include "polisim/stats.h"
#include "polisim/housing_market.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace polisim
{

double gini(std::span<const double> values)
{
    if (values.empty()) {
        throw std::invalid_argument("gini of an empty list");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n   = static_cast<double>(sorted.size());
    double total     = 0.0;
    double weighted  = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        total += sorted[i];
        // sum over pairs of |x_i - x_j| equals 2 * sum_i (2i - n + 1) x_(i) with 0-based ranks
        weighted += (2.0 * static_cast<double>(i) - n + 1.0) * sorted[i];
    }
    if (total == 0.0) {
        return 0.0;
    }
    return weighted / (n * total);
}

std::vector<double> family_utilities(const World& world)
{
    std::vector<double> out;
    out.reserve(world.families.size());
    for (const auto& f : world.families) {
        if (f.members.empty()) {
            continue;
        }
        double sum = 0.0;
        for (AgentId id : f.members) {
            sum += world.agents[id].utility;
        }
        out.push_back(sum / static_cast<double>(f.members.size()));
    }
    return out;
}

std::vector<double> family_wealth(const World& world)
{
    std::vector<double> out;
    out.reserve(world.families.size());
    for (const auto& f : world.families) {
        if (f.members.empty()) {
            continue;
        }
        double w = family_cash(world, f);
        if (f.dwelling) {
            w += world.dwellings[*f.dwelling].price;
        }
        out.push_back(w);
    }
    return out;
}

double unemployment_rate(const World& world)
{
    int labor_force = 0, unemployed = 0;
    for (const auto& a : world.agents) {
        if (a.working_age()) {
            ++labor_force;
            if (!a.employer) {
                ++unemployed;
            }
        }
    }
    return labor_force == 0 ? 0.0 : static_cast<double>(unemployed) / labor_force;
}

Snapshot snapshot(const World& world, int run_id, int month_index, double gdp_month, double gdp_cumulative)
{
    Snapshot s;
    RunRecord& r     = s.run;
    r.run_id         = run_id;
    r.month_index    = month_index;
    r.gdp_month      = gdp_month;
    r.gdp_cumulative = gdp_cumulative;
    r.unemployment   = unemployment_rate(world);

    const double nfirms = static_cast<double>(world.firms.size());
    double workers = 0.0, price = 0.0, balance = 0.0, profit = 0.0;
    for (const auto& f : world.firms) {
        workers += static_cast<double>(f.employees.size());
        price += f.price;
        balance += f.balance;
        profit += f.last_profit;
    }
    r.avg_workers_per_firm = workers / nfirms;
    r.avg_price            = price / nfirms;
    r.avg_firm_balance     = balance / nfirms;
    r.sum_firm_profit      = profit;

    auto utilities         = family_utilities(world);
    r.gini_utility         = utilities.empty() ? 0.0 : gini(utilities);
    r.median_family_wealth = median(family_wealth(world));

    double utility = 0.0;
    for (const auto& a : world.agents) {
        utility += a.utility;
    }
    r.avg_utility = world.agents.empty() ? 0.0 : utility / static_cast<double>(world.agents.size());

    double qli = 0.0;
    for (const auto& region : world.regions) {
        qli += region.qli;
        s.regions.push_back(
            {run_id, month_index, region.region_id, region.qli, region.resident_population, region.month_tax_collected});
    }
    r.qli_mean = qli / static_cast<double>(world.regions.size());
    return s;
}

double quantile(std::vector<double> values, double q)
{
    if (values.empty()) {
        throw std::invalid_argument("quantile of an empty list");
    }
    std::sort(values.begin(), values.end());
    const double pos  = q * static_cast<double>(values.size() - 1);
    const auto lo     = static_cast<std::size_t>(std::floor(pos));
    const auto hi     = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

double stddev(std::span<const double> values)
{
    if (values.size() < 2) {
        return 0.0;
    }
    const double n    = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss         = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return std::sqrt(ss / (n - 1.0));
}

const std::vector<std::string>& summary_indicators()
{
    static const std::vector<std::string> names = {
        "gdp_month",   "gdp_cumulative",       "unemployment", "avg_workers_per_firm", "avg_price",
        "avg_firm_balance", "sum_firm_profit", "gini_utility", "median_family_wealth", "avg_utility",
        "qli_mean"};
    return names;
}

double indicator_value(const RunRecord& r, const std::string& name)
{
    if (name == "gdp_month") return r.gdp_month;
    if (name == "gdp_cumulative") return r.gdp_cumulative;
    if (name == "unemployment") return r.unemployment;
    if (name == "avg_workers_per_firm") return r.avg_workers_per_firm;
    if (name == "avg_price") return r.avg_price;
    if (name == "avg_firm_balance") return r.avg_firm_balance;
    if (name == "sum_firm_profit") return r.sum_firm_profit;
    if (name == "gini_utility") return r.gini_utility;
    if (name == "median_family_wealth") return r.median_family_wealth;
    if (name == "avg_utility") return r.avg_utility;
    if (name == "qli_mean") return r.qli_mean;
    throw std::invalid_argument("unknown indicator '" + name + "'");
}

std::vector<SummaryRow> summarize(const std::vector<FinalState>& finals)
{
    std::map<int, std::vector<const FinalState*>> by_design;
    for (const auto& f : finals) {
        by_design[f.design].push_back(&f);
    }
    std::vector<SummaryRow> rows;
    for (const auto& [design, runs] : by_design) {
        for (const auto& name : summary_indicators()) {
            std::vector<double> v;
            for (const auto* f : runs) {
                v.push_back(indicator_value(f->run, name));
            }
            rows.push_back({design, name, "q25", quantile(v, 0.25)});
            rows.push_back({design, name, "median", quantile(v, 0.5)});
            rows.push_back({design, name, "q75", quantile(v, 0.75)});
        }

        std::vector<double> qli_max, qli_min, pop_max, pop_min;
        for (const auto* f : runs) {
            if (f->regions.empty()) {
                continue;
            }
            auto by_qli = [](const RegionRecord& a, const RegionRecord& b) { return a.qli < b.qli; };
            const auto lo = std::min_element(f->regions.begin(), f->regions.end(), by_qli);
            const auto hi = std::max_element(f->regions.begin(), f->regions.end(), by_qli);
            qli_max.push_back(hi->qli);
            qli_min.push_back(lo->qli);
            pop_max.push_back(hi->population);
            pop_min.push_back(lo->population);
        }
        if (qli_max.empty()) {
            continue;
        }
        auto add = [&](const char* name, const std::vector<double>& v) {
            rows.push_back({design, name, "median", quantile(v, 0.5)});
            rows.push_back({design, name, "std", stddev(v)});
        };
        add("qli_max_region", qli_max);
        add("qli_min_region", qli_min);
        add("population_max_qli_region", pop_max);
        add("population_min_qli_region", pop_min);
    }
    return rows;
}

} // namespace polisim
