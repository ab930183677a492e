#ifndef POLISIM_LABOR_MARKET_H
#define POLISIM_LABOR_MARKET_H

#include "polisim/rng.h"
#include "polisim/world.h"

#include <vector>

namespace polisim
{

/// Firms with an open post this round (one post each) and registered job seekers.
struct MatchingBoard {
    std::vector<FirmId> vacancies;
    std::vector<AgentId> candidates;
};

struct Hire {
    FirmId firm;
    AgentId agent;
    bool by_qualification; ///< which criterion the coin selected
};

/// Unemployed agents of working age, ordered by id.
std::vector<AgentId> register_candidates(const std::vector<Agent>& agents);

/// Which criterion the firm applies for a hire. `coin` flips a fair coin each round.
enum class MatchingCriterion { coin, qualification, proximity };

/**
 * Iterative matching: a uniformly random firm on the board takes either the most qualified candidate or the one
 * whose family lives closest, chosen by a fair coin. Both leave the board and the loop repeats until one side is
 * empty. Ties are broken by lower agent id. Each round draws one firm index and, in coin mode, one coin.
 *
 * Throws std::logic_error if a candidate's family has no dwelling.
 */
std::vector<Hire> run_matching(MatchingBoard board, World& world, RngStream& rng,
                               MatchingCriterion criterion = MatchingCriterion::coin);

} // namespace polisim

#endif // POLISIM_LABOR_MARKET_H
