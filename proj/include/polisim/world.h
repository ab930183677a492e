#ifndef POLISIM_WORLD_H
#define POLISIM_WORLD_H

#include "polisim/config.h"
#include "polisim/rng.h"
#include "polisim/space.h"

#include <cstddef>
#include <optional>
#include <vector>

namespace polisim
{

// Entity ids are positions in the owning World vector.
using AgentId    = std::size_t;
using FamilyId   = std::size_t;
using DwellingId = std::size_t;
using FirmId     = std::size_t;
using RegionId   = int;

/// Lower and upper age of the labor force, inclusive.
inline constexpr int kWorkingAgeMin = 17;
inline constexpr int kWorkingAgeMax = 70;

struct Agent {
    AgentId id = 0;
    int age = 0;
    int qualification = 1;
    double cash = 0.0;
    double utility = 0.0; ///< cumulative value consumed
    FamilyId family_id = 0;
    std::optional<FirmId> employer;

    bool working_age() const
    {
        return age >= kWorkingAgeMin && age <= kWorkingAgeMax;
    }
};

struct Family {
    FamilyId id = 0;
    std::vector<AgentId> members;
    std::optional<DwellingId> dwelling;
};

struct Dwelling {
    DwellingId id = 0;
    Point location;
    int size = 0;             ///< square meters
    double base_sqm_value = 0.0;
    double price = 0.0;
    double quality = 0.0;
    RegionId region_id = 0;
    std::optional<FamilyId> occupant;
};

struct Firm {
    FirmId id = 0;
    Point location;
    RegionId region_id = 0;
    double balance = 0.0;
    double price = 1.0;       ///< unit price of the single product
    double inventory = 0.0;
    std::vector<AgentId> employees; ///< in hiring order
    double quarterly_ref_balance = 0.0;
    double last_profit = 0.0;
    double cumulative_sold_value = 0.0;
};

struct Region {
    RegionId region_id = 0;
    RegionGeometry geometry;
    double qli = 1.0;
    double qli_prev = 1.0;          ///< value before the latest update
    double month_treasury = 0.0;    ///< taxes awaiting conversion into QLI
    double month_tax_collected = 0.0; ///< taxes credited during the current month
    int resident_population = 0;
};

struct World {
    Partition partition;
    std::vector<Agent> agents;
    std::vector<Family> families;
    std::vector<Dwelling> dwellings;
    std::vector<Firm> firms;
    std::vector<Region> regions;
};

/// Uniform random point in the simulation square.
Point random_location(RngStream& rng);

/**
 * Creates all entities. Families are left empty and unhoused; call the allocation functions next.
 * Draws per entity, in this order: agent (age, qualification, cash), dwelling (x, y, size, sqm value),
 * firm (x, y, capital).
 */
World generate_world(const Params& params, const Partition& partition, RngStream& rng);

/// Assigns every agent to a uniformly random family. Throws std::invalid_argument if there are no families.
void allocate_agents_to_families(std::vector<Agent>& agents, std::vector<Family>& families, RngStream& rng);

/// Houses every family in a distinct uniformly random dwelling. Throws std::invalid_argument if dwellings are
/// not more numerous than families.
void allocate_families_to_dwellings(std::vector<Family>& families, std::vector<Dwelling>& dwellings, RngStream& rng);

/// generate_world followed by both allocations and a population count.
World build_world(const Params& params, RngStream& rng);

/// Sum of members' cash.
double family_cash(const World& world, const Family& family);

} // namespace polisim

#endif // POLISIM_WORLD_H
