#ifndef FRACGROUND_SNAPSHOT_HPP
#define FRACGROUND_SNAPSHOT_HPP

#include <cstdint>
#include <string>

#include "fracground/grid.hpp"

namespace fracground {

/** Binary field snapshot.
 *
 * Layout, all little-endian:
 *   magic "FRGD" (4 bytes), format version u32, dim u8, n u32,
 *   L float64, s float64, then n^dim float64 values in row-major order.
 */
inline constexpr std::uint32_t kSnapshotVersion = 1;

struct Snapshot {
    Field field;
    double s = 0.0;
    std::uint32_t version = kSnapshotVersion;
};

void save_snapshot(const std::string& path, const Field& u, double s);

Snapshot load_snapshot(const std::string& path);

} // namespace fracground

#endif
