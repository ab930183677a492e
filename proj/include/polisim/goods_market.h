#ifndef POLISIM_GOODS_MARKET_H
#define POLISIM_GOODS_MARKET_H

#include "polisim/rng.h"
#include "polisim/world.h"

#include <functional>
#include <span>

namespace polisim
{

/// Outcome of one purchase. Amounts are in currency, quantity in product units.
struct SaleReceipt {
    AgentId buyer_id = 0;
    FirmId firm_id = 0;
    RegionId region_id = 0;
    double budget = 0.0;
    double gross_value = 0.0;
    double tax = 0.0;
    double net_to_firm = 0.0;
    double quantity = 0.0;
    double change_returned = 0.0;

    bool empty() const
    {
        return quantity == 0.0;
    }
};

/// Splits the family's cash equally among its members. No-op for an empty family.
void equalize_family_funds(const Family& family, std::span<Agent> agents);

/**
 * Amount the agent decides to spend: nothing without cash, a uniform share of the cash when it is below one unit,
 * otherwise uniform in [0, cash^beta]. Draws once whenever cash is positive.
 */
double draw_consumption_budget(const Agent& agent, double beta, RngStream& rng);

/**
 * Samples min(market_size, |firms|) firms without replacement, then picks by a fair coin either the cheapest or
 * the closest one in the sample. Ties go to the firm sampled first.
 */
FirmId choose_firm(Point home, std::span<const Firm> firms, int market_size, RngStream& rng);

/**
 * Buys as much of the firm's product as `budget` allows, capped by inventory. Tax at `tax_rate` goes to the
 * region's treasury, the remainder to the firm; unspent budget stays with the buyer. The buyer's utility grows by
 * the gross value spent.
 */
SaleReceipt execute_sale(Agent& buyer, Firm& firm, double budget, double tax_rate, Region& region);

using ReceiptObserver = std::function<void(const SaleReceipt&)>;

/**
 * The whole monthly goods market: every family equalizes its funds, then each agent in id order draws a budget,
 * picks a firm and buys. Returns the month's gross sales.
 */
double run_goods_market(World& world, double beta, int market_size, double tax_rate, RngStream& rng,
                        const ReceiptObserver& observer = {});

} // namespace polisim

#endif // POLISIM_GOODS_MARKET_H
