#include "fracground/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

namespace fracground {

namespace {

// Explicit little-endian packing so snapshots are portable.
void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::vector<unsigned char>& out, double d) {
    std::uint64_t v;
    std::memcpy(&v, &d, 8);
    if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap64(v);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
}

double get_f64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap64(v);
    double d;
    std::memcpy(&d, &v, 8);
    return d;
}

} // namespace

void save_snapshot(const std::string& path, const Field& u, double s) {
    std::vector<unsigned char> buf;
    buf.reserve(25 + 8 * u.values.size());
    buf.push_back('F');
    buf.push_back('R');
    buf.push_back('G');
    buf.push_back('D');
    put_u32(buf, kSnapshotVersion);
    buf.push_back(static_cast<unsigned char>(u.grid.dim));
    put_u32(buf, static_cast<std::uint32_t>(u.grid.n));
    put_f64(buf, u.grid.half_length);
    put_f64(buf, s);
    for (double v : u.values) put_f64(buf, v);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("save_snapshot: cannot open " + path);
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw IoError("save_snapshot: write failed for " + path);
}

Snapshot load_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("load_snapshot: cannot open " + path);
    std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    if (buf.size() < 29) throw IoError("load_snapshot: truncated header in " + path);
    if (buf[0] != 'F' || buf[1] != 'R' || buf[2] != 'G' || buf[3] != 'D')
        throw IoError("load_snapshot: bad magic in " + path);
    std::size_t off = 4;
    const std::uint32_t version = get_u32(buf.data() + off);
    off += 4;
    if (version != kSnapshotVersion)
        throw IoError("load_snapshot: unsupported format version " + std::to_string(version));
    const int dim = buf[off];
    off += 1;
    const int n = static_cast<int>(get_u32(buf.data() + off));
    off += 4;
    const double L = get_f64(buf.data() + off);
    off += 8;
    const double s = get_f64(buf.data() + off);
    off += 8;

    Snapshot snap;
    snap.version = version;
    snap.s = s;
    snap.field = Field(make_grid(dim, n, L));
    const std::size_t count = snap.field.values.size();
    if (buf.size() != off + 8 * count)
        throw IoError("load_snapshot: size mismatch in " + path + " (expected " +
                      std::to_string(off + 8 * count) + " bytes, got " +
                      std::to_string(buf.size()) + ")");
    for (std::size_t i = 0; i < count; ++i) snap.field.values[i] = get_f64(buf.data() + off + 8 * i);
    return snap;
}

} // namespace fracground
