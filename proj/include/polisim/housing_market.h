#ifndef POLISIM_HOUSING_MARKET_H
#define POLISIM_HOUSING_MARKET_H

#include "polisim/rng.h"
#include "polisim/world.h"

#include <vector>

namespace polisim
{

/**
 * Revalues every dwelling by its region's relative QLI change since the previous month and recomputes its
 * quality as size times the current QLI. Throws std::logic_error if a previous QLI is not positive.
 */
void update_dwelling_prices(std::vector<Dwelling>& dwellings, const std::vector<Region>& regions);

struct HousingRound {
    std::vector<FamilyId> entrants;   ///< in processing order
    std::vector<DwellingId> vacancies; ///< ascending id at round start; moves append vacated dwellings
    double median_resources = 0.0;
};

/// Median with the even-count convention (mean of the two middle values). Empty input gives 0.
double median(std::vector<double> values);

/// Samples the entrants, collects the vacant stock and the median family cash over all families.
HousingRound open_round(const World& world, double share, RngStream& rng);

enum class HousingMove { none, cheaper, better };

/**
 * One family's turn. Families below the median sell down to the cheapest vacancy when it is cheaper than their
 * home and pocket the difference. The others target the best-quality vacancy and move when home price plus cash
 * exceeds its price, paying or receiving the difference. Cash changes are spread equally over the members.
 */
HousingMove process_family(FamilyId family_id, HousingRound& round, World& world);

/// Price updates, a round, and every entrant's turn. Returns the number of moves.
int run_housing_market(World& world, double share, RngStream& rng);

} // namespace polisim

#endif // POLISIM_HOUSING_MARKET_H
