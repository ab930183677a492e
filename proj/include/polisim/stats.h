#ifndef POLISIM_STATS_H
#define POLISIM_STATS_H

#include "polisim/world.h"

#include <span>
#include <string>
#include <vector>

namespace polisim
{

/// End-of-month economy-wide indicators of one run.
struct RunRecord {
    int run_id = 0;
    int month_index = 0; ///< 1-based
    double gdp_month = 0.0;
    double gdp_cumulative = 0.0;
    double unemployment = 0.0;
    double avg_workers_per_firm = 0.0;
    double avg_price = 0.0;
    double avg_firm_balance = 0.0;
    double sum_firm_profit = 0.0;
    double gini_utility = 0.0;
    double median_family_wealth = 0.0;
    double avg_utility = 0.0;
    double qli_mean = 0.0; ///< unweighted mean over regions
};

struct RegionRecord {
    int run_id = 0;
    int month_index = 0;
    int region_id = 0;
    double qli = 0.0;
    int population = 0;
    double tax_collected_month = 0.0;
};

/// Mean absolute difference over all ordered pairs divided by twice the mean. All-zero input gives 0.
/// Throws std::invalid_argument on empty input.
double gini(std::span<const double> values);

/// Mean member utility of every non-empty family.
std::vector<double> family_utilities(const World& world);

/// Cash plus the price of the occupied dwelling, for every non-empty family.
std::vector<double> family_wealth(const World& world);

/// Unemployed working-age agents over working-age agents; 0 when nobody is of working age.
double unemployment_rate(const World& world);

struct Snapshot {
    RunRecord run;
    std::vector<RegionRecord> regions;
};

Snapshot snapshot(const World& world, int run_id, int month_index, double gdp_month, double gdp_cumulative);

/// Quantile by linear interpolation between order statistics (position q * (n - 1)).
double quantile(std::vector<double> values, double q);

/// Sample standard deviation; 0 for fewer than two values.
double stddev(std::span<const double> values);

/// Final-month state of one run, as input to `summarize`.
struct FinalState {
    int design = 1;
    RunRecord run;
    std::vector<RegionRecord> regions;
};

struct SummaryRow {
    int design;
    std::string indicator;
    std::string statistic;
    double value;
};

/// Names of the RunRecord indicators summarized by quartiles.
const std::vector<std::string>& summary_indicators();

/**
 * Per design: 0.25 / 0.5 / 0.75 quantiles of every final-month indicator, plus median and standard deviation of
 * the highest and lowest regional QLI and of the populations of those two regions. Rows are ordered by design.
 */
std::vector<SummaryRow> summarize(const std::vector<FinalState>& finals);

/// Value of a named RunRecord indicator. Throws std::invalid_argument on an unknown name.
double indicator_value(const RunRecord& record, const std::string& name);

} // namespace polisim

#endif // POLISIM_STATS_H
