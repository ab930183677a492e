#include "polisim/world.h"
#include "polisim/government.h"

#include <numeric>
#include <stdexcept>

namespace polisim
{

Point random_location(RngStream& rng)
{
    double x = rng.uniform_real(kSpaceMin, kSpaceMax);
    double y = rng.uniform_real(kSpaceMin, kSpaceMax);
    return {x, y};
}

World generate_world(const Params& params, const Partition& partition, RngStream& rng)
{
    const auto& sim  = params.sim;
    const auto& init = params.init;
    World world;
    world.partition = partition;

    world.regions.reserve(partition.size());
    for (const auto& geometry : partition) {
        Region region;
        region.region_id = geometry.region_id;
        region.geometry  = geometry;
        world.regions.push_back(region);
    }

    world.agents.resize(static_cast<std::size_t>(sim.num_agents));
    for (std::size_t i = 0; i < world.agents.size(); ++i) {
        auto& a         = world.agents[i];
        a.id            = i;
        a.age           = static_cast<int>(rng.uniform_int(init.age_min, init.age_max));
        a.qualification = static_cast<int>(rng.uniform_int(init.qualification_min, init.qualification_max));
        a.cash          = rng.uniform_real(init.cash_min, init.cash_max);
    }

    world.families.resize(static_cast<std::size_t>(sim.num_families));
    for (std::size_t i = 0; i < world.families.size(); ++i) {
        world.families[i].id = i;
    }

    world.dwellings.resize(static_cast<std::size_t>(sim.num_dwellings));
    for (std::size_t i = 0; i < world.dwellings.size(); ++i) {
        auto& d          = world.dwellings[i];
        d.id             = i;
        d.location       = random_location(rng);
        d.size           = static_cast<int>(rng.uniform_int(init.dwelling_size_min, init.dwelling_size_max));
        d.base_sqm_value = rng.uniform_real(init.sqm_value_min, init.sqm_value_max);
        d.price          = d.size * d.base_sqm_value;
        d.region_id      = locate(partition, d.location);
        d.quality        = d.size * world.regions[static_cast<std::size_t>(d.region_id)].qli;
    }

    world.firms.resize(static_cast<std::size_t>(sim.num_firms));
    for (std::size_t i = 0; i < world.firms.size(); ++i) {
        auto& f                 = world.firms[i];
        f.id                    = i;
        f.location              = random_location(rng);
        f.region_id             = locate(partition, f.location);
        f.balance               = rng.uniform_real(init.firm_capital_min, init.firm_capital_max);
        f.price                 = 1.0;
        f.inventory             = 0.0;
        f.quarterly_ref_balance = f.balance;
    }
    return world;
}

void allocate_agents_to_families(std::vector<Agent>& agents, std::vector<Family>& families, RngStream& rng)
{
    if (families.empty()) {
        throw std::invalid_argument("cannot allocate agents: there are no families");
    }
    for (auto& agent : agents) {
        const FamilyId f = rng.index(families.size());
        agent.family_id  = f;
        families[f].members.push_back(agent.id);
    }
}

void allocate_families_to_dwellings(std::vector<Family>& families, std::vector<Dwelling>& dwellings, RngStream& rng)
{
    if (dwellings.size() <= families.size()) {
        throw std::invalid_argument("cannot house families: dwellings must outnumber families");
    }
    std::vector<DwellingId> order(dwellings.size());
    std::iota(order.begin(), order.end(), DwellingId{0});
    rng.partial_shuffle(std::span<DwellingId>(order), families.size());
    for (std::size_t i = 0; i < families.size(); ++i) {
        families[i].dwelling         = order[i];
        dwellings[order[i]].occupant = families[i].id;
    }
}

World build_world(const Params& params, RngStream& rng)
{
    World world = generate_world(params, build_partition(params.sim.num_regions), rng);
    allocate_agents_to_families(world.agents, world.families, rng);
    allocate_families_to_dwellings(world.families, world.dwellings, rng);
    refresh_population(world);
    return world;
}

double family_cash(const World& world, const Family& family)
{
    double total = 0.0;
    for (AgentId id : family.members) {
        total += world.agents[id].cash;
    }
    return total;
}

} // namespace polisim
