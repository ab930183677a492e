#include "polisim/government.h"

#include <stdexcept>
#include <string>

namespace polisim
{

double update_qli(Region& region)
{
    if (region.month_treasury < 0.0) {
        throw std::logic_error("region " + std::to_string(region.region_id) + " has a negative treasury");
    }
    region.qli_prev = region.qli;
    if (region.resident_population > 0) {
        region.qli += region.month_treasury / static_cast<double>(region.resident_population);
        region.month_treasury = 0.0;
    }
    return region.qli;
}

void refresh_population(World& world)
{
    for (auto& r : world.regions) {
        r.resident_population = 0;
    }
    for (const auto& f : world.families) {
        if (f.dwelling) {
            const auto region = world.dwellings[*f.dwelling].region_id;
            world.regions[static_cast<std::size_t>(region)].resident_population += static_cast<int>(f.members.size());
        }
    }
}

} // namespace polisim
