#include "polisim/goods_market.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace polisim
{

void equalize_family_funds(const Family& family, std::span<Agent> agents)
{
    if (family.members.empty()) {
        return;
    }
    double total = 0.0;
    for (AgentId id : family.members) {
        total += agents[id].cash;
    }
    const double share = total / static_cast<double>(family.members.size());
    for (AgentId id : family.members) {
        agents[id].cash = share;
    }
}

double draw_consumption_budget(const Agent& agent, double beta, RngStream& rng)
{
    if (agent.cash <= 0.0) {
        return 0.0;
    }
    const double cap = agent.cash < 1.0 ? agent.cash : std::pow(agent.cash, beta);
    return rng.uniform_real(0.0, cap);
}

FirmId choose_firm(Point home, std::span<const Firm> firms, int market_size, RngStream& rng)
{
    if (firms.empty()) {
        throw std::invalid_argument("choose_firm needs at least one firm");
    }
    std::vector<FirmId> sample(firms.size());
    std::iota(sample.begin(), sample.end(), FirmId{0});
    const auto k = std::min(sample.size(), static_cast<std::size_t>(std::max(market_size, 1)));
    rng.partial_shuffle(std::span<FirmId>(sample), k);

    std::size_t cheapest = 0, nearest = 0;
    double nearest_d     = distance(home, firms[sample[0]].location);
    for (std::size_t i = 1; i < k; ++i) {
        const Firm& f = firms[sample[i]];
        if (f.price < firms[sample[cheapest]].price) {
            cheapest = i;
        }
        double d = distance(home, f.location);
        if (d < nearest_d) {
            nearest   = i;
            nearest_d = d;
        }
    }
    return rng.coin() ? sample[cheapest] : sample[nearest];
}

SaleReceipt execute_sale(Agent& buyer, Firm& firm, double budget, double tax_rate, Region& region)
{
    SaleReceipt r;
    r.buyer_id        = buyer.id;
    r.firm_id         = firm.id;
    r.region_id       = region.region_id;
    r.budget          = budget;
    r.change_returned = budget;
    if (budget <= 0.0 || firm.inventory <= 0.0) {
        return r;
    }
    const double desired = budget / firm.price;
    if (desired <= firm.inventory) {
        r.quantity    = desired;
        r.gross_value = budget;
    }
    else {
        r.quantity    = firm.inventory;
        r.gross_value = firm.inventory * firm.price;
    }
    r.tax             = r.gross_value * tax_rate;
    r.net_to_firm     = r.gross_value - r.tax;
    r.change_returned = budget - r.gross_value;

    firm.inventory -= r.quantity;
    firm.balance += r.net_to_firm;
    firm.cumulative_sold_value += r.gross_value;
    region.month_treasury += r.tax;
    region.month_tax_collected += r.tax;
    buyer.cash -= r.gross_value;
    buyer.utility += r.gross_value;
    return r;
}

double run_goods_market(World& world, double beta, int market_size, double tax_rate, RngStream& rng,
                        const ReceiptObserver& observer)
{
    for (const auto& family : world.families) {
        equalize_family_funds(family, world.agents);
    }
    double gross = 0.0;
    for (auto& agent : world.agents) {
        if (agent.cash <= 0.0) {
            continue;
        }
        const double budget = draw_consumption_budget(agent, beta, rng);
        const auto& family  = world.families[agent.family_id];
        const Point home    = world.dwellings[family.dwelling.value()].location;
        const FirmId chosen = choose_firm(home, world.firms, market_size, rng);
        Firm& firm          = world.firms[chosen];
        SaleReceipt receipt =
            execute_sale(agent, firm, budget, tax_rate, world.regions[static_cast<std::size_t>(firm.region_id)]);
        gross += receipt.gross_value;
        if (observer) {
            observer(receipt);
        }
    }
    return gross;
}

} // namespace polisim
