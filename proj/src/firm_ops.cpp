#include "polisim/firm_ops.h"

#include <cmath>

namespace polisim
{

double worker_output(int qualification, double alpha)
{
    return std::pow(static_cast<double>(qualification), alpha);
}

double produce_daily(Firm& firm, std::span<const Agent> agents, double alpha)
{
    double output = 0.0;
    for (AgentId id : firm.employees) {
        output += worker_output(agents[id].qualification, alpha);
    }
    firm.inventory += output;
    return output;
}

double update_price(Firm& firm, double threshold, double markup)
{
    if (firm.inventory < threshold) {
        firm.price *= 1.0 + markup;
    }
    else if (firm.inventory > threshold) {
        firm.price = kCostPrice;
    }
    return firm.price;
}

double wage_of(const Agent& agent, double wage_base, double alpha)
{
    return wage_base * std::pow(static_cast<double>(agent.qualification), alpha);
}

double pay_wages(Firm& firm, std::span<Agent> agents, double wage_base, double alpha, const WageObserver& observer)
{
    double bill = 0.0;
    for (AgentId id : firm.employees) {
        Agent& worker = agents[id];
        double wage   = wage_of(worker, wage_base, alpha);
        worker.cash += wage;
        firm.balance -= wage;
        bill += wage;
        if (observer) {
            observer(firm, worker, wage);
        }
    }
    return bill;
}

double update_profit(Firm& firm, bool quarter_end)
{
    firm.last_profit = firm.balance - firm.quarterly_ref_balance;
    if (quarter_end) {
        firm.quarterly_ref_balance = firm.balance;
    }
    return firm.last_profit;
}

LaborDecision labor_decision(Firm& firm, std::span<Agent> agents, double skip_probability, RngStream& rng)
{
    if (rng.uniform01() < skip_probability) {
        return {};
    }
    if (firm.employees.empty() || firm.last_profit > 0.0) {
        return {LaborAction::post_vacancy, std::nullopt};
    }
    if (firm.last_profit < 0.0) {
        auto pos       = rng.index(firm.employees.size());
        AgentId fired  = firm.employees[pos];
        firm.employees.erase(firm.employees.begin() + static_cast<std::ptrdiff_t>(pos));
        agents[fired].employer.reset();
        return {LaborAction::fire_employee, fired};
    }
    return {};
}

} // namespace polisim
