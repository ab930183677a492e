#include "polisim/labor_market.h"

#include <limits>
#include <stdexcept>

namespace polisim
{

std::vector<AgentId> register_candidates(const std::vector<Agent>& agents)
{
    std::vector<AgentId> out;
    for (const auto& a : agents) {
        if (!a.employer && a.working_age()) {
            out.push_back(a.id);
        }
    }
    return out;
}

namespace
{

Point home_of(const World& world, AgentId id)
{
    const auto& family = world.families[world.agents[id].family_id];
    if (!family.dwelling) {
        throw std::logic_error("candidate " + std::to_string(id) + " belongs to a family without a dwelling");
    }
    return world.dwellings[*family.dwelling].location;
}

std::size_t most_qualified(const World& world, const std::vector<AgentId>& candidates)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const auto& c = world.agents[candidates[i]];
        const auto& b = world.agents[candidates[best]];
        if (c.qualification > b.qualification || (c.qualification == b.qualification && c.id < b.id)) {
            best = i;
        }
    }
    return best;
}

std::size_t closest(const World& world, const std::vector<AgentId>& candidates, Point firm_location)
{
    std::size_t best = 0;
    double best_d    = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        double d = distance(home_of(world, candidates[i]), firm_location);
        if (d < best_d || (d == best_d && candidates[i] < candidates[best])) {
            best   = i;
            best_d = d;
        }
    }
    return best;
}

} // namespace

std::vector<Hire> run_matching(MatchingBoard board, World& world, RngStream& rng, MatchingCriterion criterion)
{
    std::vector<Hire> hires;
    auto& firms      = board.vacancies;
    auto& candidates = board.candidates;
    while (!firms.empty() && !candidates.empty()) {
        const std::size_t fpos = rng.index(firms.size());
        const FirmId firm_id   = firms[fpos];
        Firm& firm             = world.firms[firm_id];

        bool by_qualification = criterion == MatchingCriterion::qualification;
        if (criterion == MatchingCriterion::coin) {
            by_qualification = rng.coin();
        }
        const std::size_t cpos = by_qualification ? most_qualified(world, candidates)
                                                  : closest(world, candidates, firm.location);
        const AgentId agent_id = candidates[cpos];

        world.agents[agent_id].employer = firm_id;
        firm.employees.push_back(agent_id);
        hires.push_back({firm_id, agent_id, by_qualification});

        firms.erase(firms.begin() + static_cast<std::ptrdiff_t>(fpos));
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(cpos));
    }
    return hires;
}

} // namespace polisim
