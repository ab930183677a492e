#ifndef POLISIM_TESTS_HELPERS_H
#define POLISIM_TESTS_HELPERS_H

#include "polisim/world.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace polisim::testing
{

/// A one-region world with no entities; tests add what they need.
inline World empty_world(int num_regions = 1)
{
    World w;
    w.partition = build_partition(num_regions);
    for (const auto& g : w.partition) {
        Region r;
        r.region_id = g.region_id;
        r.geometry  = g;
        w.regions.push_back(r);
    }
    return w;
}

inline AgentId add_agent(World& w, int age, int qualification, double cash = 0.0)
{
    Agent a;
    a.id            = w.agents.size();
    a.age           = age;
    a.qualification = qualification;
    a.cash          = cash;
    w.agents.push_back(a);
    return a.id;
}

inline DwellingId add_dwelling(World& w, Point at, int size, double price)
{
    Dwelling d;
    d.id             = w.dwellings.size();
    d.location       = at;
    d.size           = size;
    d.base_sqm_value = price / size;
    d.price          = price;
    d.region_id      = locate(w.partition, at);
    d.quality        = size * w.regions[static_cast<std::size_t>(d.region_id)].qli;
    w.dwellings.push_back(d);
    return d.id;
}

/// A family made of `members`, housed in `dwelling` when given.
inline FamilyId add_family(World& w, std::vector<AgentId> members, std::optional<DwellingId> dwelling = {})
{
    Family f;
    f.id       = w.families.size();
    f.members  = std::move(members);
    f.dwelling = dwelling;
    for (AgentId a : f.members) {
        w.agents[a].family_id = f.id;
    }
    if (dwelling) {
        w.dwellings[*dwelling].occupant = f.id;
    }
    w.families.push_back(f);
    return f.id;
}

inline FirmId add_firm(World& w, Point at, double balance = 100.0)
{
    Firm f;
    f.id                    = w.firms.size();
    f.location              = at;
    f.region_id             = locate(w.partition, at);
    f.balance               = balance;
    f.quarterly_ref_balance = balance;
    w.firms.push_back(f);
    return f.id;
}

inline std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Fresh, empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("polisim_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace polisim::testing

#endif // POLISIM_TESTS_HELPERS_H
