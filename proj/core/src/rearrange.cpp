#include "fracground/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace fracground {

Field symmetric_decreasing_rearrangement(const Field& u) {
    const Grid& g = u.grid;
    const std::int64_t count = g.point_count();

    // Points ordered by (radius, linear index). Radii are exact functions of
    // the integer offsets, so equal radii compare equal and the index
    // tie-break is deterministic.
    std::vector<std::int64_t> order(static_cast<std::size_t>(count));
    std::iota(order.begin(), order.end(), std::int64_t{0});
    std::vector<double> radius(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) radius[static_cast<std::size_t>(i)] = g.radius(i);
    std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
        const double ra = radius[static_cast<std::size_t>(a)];
        const double rb = radius[static_cast<std::size_t>(b)];
        if (ra != rb) return ra < rb;
        return a < b;
    });

    std::vector<double> sorted(u.values.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) sorted[i] = std::fabs(u.values[i]);
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());

    Field result(g);
    for (std::size_t m = 0; m < sorted.size(); ++m)
        result.values[static_cast<std::size_t>(order[m])] = sorted[m];
    return result;
}

} // namespace fracground
