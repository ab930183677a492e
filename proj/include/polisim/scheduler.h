#ifndef POLISIM_SCHEDULER_H
#define POLISIM_SCHEDULER_H

#include "polisim/config.h"
#include "polisim/firm_ops.h"
#include "polisim/goods_market.h"
#include "polisim/labor_market.h"
#include "polisim/rng.h"
#include "polisim/stats.h"
#include "polisim/world.h"

#include <functional>
#include <string_view>
#include <vector>

namespace polisim
{

inline constexpr int kDaysPerMonth    = 21;
inline constexpr int kMonthsPerQuarter = 3;
inline constexpr int kMonthsPerYear   = 12;

/// Calendar position of a 0-based day.
struct Clock {
    int day_index = 0;

    /// 1-based index of the month this day belongs to.
    int month() const { return day_index / kDaysPerMonth + 1; }
    int quarter() const { return (month() - 1) / kMonthsPerQuarter + 1; }
    int year() const { return (month() - 1) / kMonthsPerYear + 1; }
    bool month_end() const { return (day_index + 1) % kDaysPerMonth == 0; }
    bool quarter_end() const { return month_end() && month() % kMonthsPerQuarter == 0; }
    bool year_end() const { return month_end() && month() % kMonthsPerYear == 0; }
};

enum class Phase {
    initial_hiring,
    production,
    wages,
    consumption,
    qli,
    profits,
    prices,
    labor_decisions,
    matching,
    housing,
    stats,
};

std::string_view phase_name(Phase phase);

/// Optional instrumentation. Every member may be left empty.
struct SimulationHooks {
    std::function<void(Phase, const Clock&, const World&)> on_phase;
    WageObserver on_wage;
    ReceiptObserver on_receipt;
    std::function<void(const Hire&)> on_hire;
    std::function<void(const Snapshot&)> on_month;
    std::function<void(int year)> on_year;
};

struct SimulationResult {
    std::vector<RunRecord> series;
    std::vector<RegionRecord> regions; ///< month-major, region-minor
    int quarters = 0;
};

/**
 * Runs the economy for `params.sim.num_days` days on a generated and allocated world.
 *
 * Day 0 opens one post at every firm and matches the initial candidates before production starts. Every day all
 * firms produce. At each month end: wages, consumption with tax collection, QLI update, profits (with the
 * quarterly reference snapshot on quarter ends), prices, labor decisions, matching, housing, then a stats
 * snapshot.
 */
SimulationResult run_simulation(World& world, const Params& params, RngStream& rng, int run_id = 0,
                                const SimulationHooks& hooks = {});

} // namespace polisim

#endif // POLISIM_SCHEDULER_H
