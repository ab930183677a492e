#include "polisim/space.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace polisim
{

bool in_square(Point p)
{
    return p.x >= kSpaceMin && p.x <= kSpaceMax && p.y >= kSpaceMin && p.y <= kSpaceMax;
}

double distance(Point a, Point b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

namespace
{
bool within(double v, double lo, double hi)
{
    return v >= lo && (v < hi || (hi == kSpaceMax && v == hi));
}
} // namespace

bool RegionGeometry::contains(Point p) const
{
    return within(p.x, rect.x_min, rect.x_max) && within(p.y, rect.y_min, rect.y_max);
}

Partition build_partition(int num_regions)
{
    constexpr double lo = kSpaceMin, hi = kSpaceMax, mid = 0.0;
    constexpr double sub_x = (mid + hi) / 2, sub_y = (lo + mid) / 2;
    switch (num_regions) {
    case 1:
        return {{0, {lo, hi, lo, hi}}};
    case 4:
        return {{0, {lo, mid, mid, hi}}, {1, {mid, hi, mid, hi}}, {2, {lo, mid, lo, mid}}, {3, {mid, hi, lo, mid}}};
    case 7:
        return {{0, {lo, mid, mid, hi}},        {1, {mid, hi, mid, hi}},        {2, {lo, mid, lo, mid}},
                {3, {mid, sub_x, sub_y, mid}},  {4, {sub_x, hi, sub_y, mid}},   {5, {mid, sub_x, lo, sub_y}},
                {6, {sub_x, hi, lo, sub_y}}};
    default:
        throw std::invalid_argument("number of regions must be 1, 4 or 7, got " + std::to_string(num_regions));
    }
}

int locate(const Partition& partition, Point p)
{
    if (!in_square(p)) {
        throw std::out_of_range("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                                ") lies outside the simulation square");
    }
    for (const auto& region : partition) {
        if (region.contains(p)) {
            return region.region_id;
        }
    }
    throw std::logic_error("partition does not cover the simulation square");
}

} // namespace polisim
