#include "fracground/grid.hpp"

#include <cmath>
#include <string>

namespace fracground {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

double Grid::radius(std::int64_t idx) const {
    auto x = point(idx);
    double r2 = 0.0;
    for (int d = 0; d < dim; ++d) r2 += x[d] * x[d];
    return std::sqrt(r2);
}

Grid make_grid(int dim, int n, double half_length) {
    if (dim < 1 || dim > 3)
        throw ParameterError("make_grid: dim must be 1, 2 or 3 (got " + std::to_string(dim) + ")");
    if (!is_power_of_two(n) || n < 16)
        throw ParameterError("make_grid: n must be a power of two >= 16 (got " + std::to_string(n) + ")");
    if (!(half_length > 0.0))
        throw ParameterError("make_grid: half_length must be positive");
    Grid g;
    g.dim = dim;
    g.n = n;
    g.half_length = half_length;
    g.spacing = 2.0 * half_length / n;
    return g;
}

double lp_norm(const Field& u, double p) {
    if (!(p >= 1.0)) throw ParameterError("lp_norm: p must be >= 1");
    const double hN = std::pow(u.grid.spacing, u.grid.dim);
    double acc = 0.0;
    if (p == 2.0) {
        for (double v : u.values) acc += v * v;
    } else if (p == 1.0) {
        for (double v : u.values) acc += std::fabs(v);
    } else {
        for (double v : u.values) acc += std::pow(std::fabs(v), p);
    }
    return std::pow(hN * acc, 1.0 / p);
}

double inner(const Field& u, const Field& v) {
    const double hN = std::pow(u.grid.spacing, u.grid.dim);
    double acc = 0.0;
    const std::size_t m = u.values.size();
    for (std::size_t i = 0; i < m; ++i) acc += u.values[i] * v.values[i];
    return hN * acc;
}

double l2_norm_sq(const Field& u) { return inner(u, u); }

double max_abs(const Field& u) {
    double m = 0.0;
    for (double v : u.values) m = std::max(m, std::fabs(v));
    return m;
}

double tail_mass_fraction(const Field& u) {
    const Grid& g = u.grid;
    const double half = 0.5 * g.half_length;
    double total = 0.0, tail = 0.0;
    const std::int64_t count = g.point_count();
    for (std::int64_t i = 0; i < count; ++i) {
        const double v = u.values[static_cast<std::size_t>(i)];
        const double m = v * v;
        total += m;
        auto x = g.point(i);
        double linf = 0.0;
        for (int d = 0; d < g.dim; ++d) linf = std::max(linf, std::fabs(x[d]));
        if (linf > half) tail += m;
    }
    if (total <= 0.0) return 0.0;
    return tail / total;
}

void check_finite(const Field& u, const char* what) {
    for (double v : u.values)
        if (!std::isfinite(v)) throw NumericError(std::string(what) + ": non-finite field value");
}

void axpy(double a, const Field& x, Field& y) {
    const std::size_t m = y.values.size();
    for (std::size_t i = 0; i < m; ++i) y.values[i] += a * x.values[i];
}

void scale(Field& u, double a) {
    for (double& v : u.values) v *= a;
}

} // namespace fracground
