#ifndef POLISIM_GOVERNMENT_H
#define POLISIM_GOVERNMENT_H

#include "polisim/world.h"

namespace polisim
{

/**
 * Converts the region's treasury into QLI per resident. With no residents the treasury is kept for the next
 * month. `qli_prev` always receives the value before the update. Throws std::logic_error on a negative treasury.
 */
double update_qli(Region& region);

/// Recounts residents of every region from the families' current dwellings.
void refresh_population(World& world);

} // namespace polisim

#endif // POLISIM_GOVERNMENT_H
