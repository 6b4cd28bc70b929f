#ifndef FRACGROUND_SELFTEST_HPP
#define FRACGROUND_SELFTEST_HPP

#include <ostream>

namespace fracground {

/** Built-in consistency suite: eigenfunction exactness, self-adjointness,
 * dilation scaling laws, rearrangement invariants, gradient consistency, and
 * direct/spectral seminorm oracle equivalence. Prints one line per check and
 * returns the number of failures.
 */
int run_selftest(std::ostream& out);

} // namespace fracground

#endif
