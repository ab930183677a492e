#ifndef POLISIM_FIRM_OPS_H
#define POLISIM_FIRM_OPS_H

#include "polisim/rng.h"
#include "polisim/world.h"

#include <functional>
#include <span>

namespace polisim
{

/// Price every firm reverts to when stock is plentiful.
inline constexpr double kCostPrice = 1.0;

/// Output of one worker with qualification `qualification` per day: E^alpha.
double worker_output(int qualification, double alpha);

/// One day of production: inventory grows by the sum of E^alpha over the workforce. Returns the increment.
double produce_daily(Firm& firm, std::span<const Agent> agents, double alpha);

/**
 * Inventory-driven pricing: below `threshold` the price is marked up by `markup`, above it the price returns to
 * cost, at the threshold it is left alone. Returns the new price.
 */
double update_price(Firm& firm, double threshold, double markup);

/// Monthly wage k * E^alpha.
double wage_of(const Agent& agent, double wage_base, double alpha);

/// Called once per wage transfer with (firm, agent, amount).
using WageObserver = std::function<void(const Firm&, const Agent&, double)>;

/// Pays every employee; the firm balance may become negative. Returns the wage bill.
double pay_wages(Firm& firm, std::span<Agent> agents, double wage_base, double alpha,
                 const WageObserver& observer = {});

/// Monthly profit against the reference balance; on quarter ends the reference is reset to the current balance.
double update_profit(Firm& firm, bool quarter_end);

enum class LaborAction { none, post_vacancy, fire_employee };

struct LaborDecision {
    LaborAction action = LaborAction::none;
    std::optional<AgentId> fired;
};

/**
 * With probability 1 - skip_probability the firm evaluates its workforce: it posts one vacancy when profit is
 * positive or it has no employees, and fires one random employee when profit is negative. One uniform draw is
 * always taken, plus one more when an employee is fired.
 */
LaborDecision labor_decision(Firm& firm, std::span<Agent> agents, double skip_probability, RngStream& rng);

} // namespace polisim

#endif // POLISIM_FIRM_OPS_H
