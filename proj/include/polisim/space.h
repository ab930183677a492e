#ifndef POLISIM_SPACE_H
#define POLISIM_SPACE_H

#include <vector>

namespace polisim
{

/// Bounds of the simulation square along both axes.
inline constexpr double kSpaceMin = -10.0;
inline constexpr double kSpaceMax = 10.0;

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

bool in_square(Point p);

/// Euclidean distance.
double distance(Point a, Point b);

struct Rect {
    double x_min;
    double x_max;
    double y_min;
    double y_max;

    double area() const
    {
        return (x_max - x_min) * (y_max - y_min);
    }
};

/**
 * One administrative region. Edges are half-open [min, max) except where they lie on the outer boundary of the
 * square, which is closed, so the regions of a design partition the square exactly.
 */
struct RegionGeometry {
    int region_id;
    Rect rect;

    bool contains(Point p) const;
};

using Partition = std::vector<RegionGeometry>;

/**
 * Regional designs:
 *  - 1 region: code 0 is the whole square.
 *  - 4 regions: quadrants split at the origin, 0 = NW, 1 = NE, 2 = SW, 3 = SE.
 *  - 7 regions: 0..2 as above; the SE quadrant is split at (5, -5) into 3 = NW, 4 = NE, 5 = SW, 6 = SE.
 * Throws std::invalid_argument for any other count.
 */
Partition build_partition(int num_regions);

/// Region containing `p`. Throws std::out_of_range if `p` lies outside the square.
int locate(const Partition& partition, Point p);

} // namespace polisim

#endif // POLISIM_SPACE_H
