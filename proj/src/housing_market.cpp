#include "polisim/housing_market.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace polisim
{

void update_dwelling_prices(std::vector<Dwelling>& dwellings, const std::vector<Region>& regions)
{
    for (auto& d : dwellings) {
        const Region& r = regions[static_cast<std::size_t>(d.region_id)];
        if (r.qli_prev <= 0.0) {
            throw std::logic_error("region " + std::to_string(r.region_id) + " has a non-positive QLI");
        }
        d.price *= 1.0 + (r.qli - r.qli_prev) / r.qli_prev;
        d.quality = d.size * r.qli;
    }
}

double median(std::vector<double> values)
{
    if (values.empty()) {
        return 0.0;
    }
    const std::size_t n   = values.size();
    const std::size_t mid = n / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (n % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return (lower + upper) / 2.0;
}

HousingRound open_round(const World& world, double share, RngStream& rng)
{
    HousingRound round;
    std::vector<FamilyId> ids(world.families.size());
    std::iota(ids.begin(), ids.end(), FamilyId{0});
    round.entrants = sample_fraction(rng, ids, share);

    for (const auto& d : world.dwellings) {
        if (!d.occupant) {
            round.vacancies.push_back(d.id);
        }
    }
    std::vector<double> resources;
    resources.reserve(world.families.size());
    for (const auto& f : world.families) {
        resources.push_back(family_cash(world, f));
    }
    round.median_resources = median(std::move(resources));
    return round;
}

namespace
{

void credit_equally(World& world, const Family& family, double amount)
{
    const double share = amount / static_cast<double>(family.members.size());
    for (AgentId id : family.members) {
        world.agents[id].cash += share;
    }
}

// Pools the family's cash after paying `amount`, so no member ends below zero.
void debit_pooled(World& world, const Family& family, double amount)
{
    const double remaining = family_cash(world, family) - amount;
    const double share     = std::max(remaining, 0.0) / static_cast<double>(family.members.size());
    for (AgentId id : family.members) {
        world.agents[id].cash = share;
    }
}

template <class Better>
std::size_t pick(const std::vector<DwellingId>& vacancies, Better better)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < vacancies.size(); ++i) {
        if (better(vacancies[i], vacancies[best])) {
            best = i;
        }
    }
    return best;
}

} // namespace

HousingMove process_family(FamilyId family_id, HousingRound& round, World& world)
{
    Family& family = world.families[family_id];
    if (family.members.empty() || round.vacancies.empty() || !family.dwelling) {
        return HousingMove::none;
    }
    auto& dwellings       = world.dwellings;
    const DwellingId home = *family.dwelling;
    const double current  = dwellings[home].price;
    const double cash     = family_cash(world, family);

    HousingMove kind = HousingMove::none;
    std::size_t pos  = 0;
    if (cash < round.median_resources) {
        pos = pick(round.vacancies, [&](DwellingId a, DwellingId b) {
            return dwellings[a].price < dwellings[b].price || (dwellings[a].price == dwellings[b].price && a < b);
        });
        const double target = dwellings[round.vacancies[pos]].price;
        if (current > target) {
            credit_equally(world, family, current - target);
            kind = HousingMove::cheaper;
        }
    }
    else {
        pos = pick(round.vacancies, [&](DwellingId a, DwellingId b) {
            return dwellings[a].quality > dwellings[b].quality ||
                   (dwellings[a].quality == dwellings[b].quality && a < b);
        });
        const double target = dwellings[round.vacancies[pos]].price;
        if (current + cash > target) {
            if (target > current) {
                debit_pooled(world, family, target - current);
            }
            else {
                credit_equally(world, family, current - target);
            }
            kind = HousingMove::better;
        }
    }
    if (kind == HousingMove::none) {
        return kind;
    }
    const DwellingId target_id = round.vacancies[pos];
    round.vacancies.erase(round.vacancies.begin() + static_cast<std::ptrdiff_t>(pos));
    round.vacancies.push_back(home);
    dwellings[home].occupant      = std::nullopt;
    dwellings[target_id].occupant = family_id;
    family.dwelling               = target_id;
    return kind;
}

int run_housing_market(World& world, double share, RngStream& rng)
{
    update_dwelling_prices(world.dwellings, world.regions);
    HousingRound round = open_round(world, share, rng);
    int moves          = 0;
    for (FamilyId id : round.entrants) {
        if (process_family(id, round, world) != HousingMove::none) {
            ++moves;
        }
    }
    return moves;
}

} // namespace polisim
