#ifndef FRACGROUND_REARRANGE_HPP
#define FRACGROUND_REARRANGE_HPP

#include "fracground/grid.hpp"

namespace fracground {

/** Symmetric-decreasing rearrangement of |u| on the grid.
 *
 * The output values are exactly the multiset {|u_j|}, placed so that they are
 * non-increasing in distance from the origin. Ties in radius are broken by
 * lexicographic (row-major linear) grid-index order.
 */
Field symmetric_decreasing_rearrangement(const Field& u);

} // namespace fracground

#endif
