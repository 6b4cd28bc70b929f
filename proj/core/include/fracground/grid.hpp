#ifndef FRACGROUND_GRID_HPP
#define FRACGROUND_GRID_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "fracground/errors.hpp"

namespace fracground {

/** Uniform periodic grid on the torus [-L, L)^dim.
 *
 * Points per axis are x_j = -L + j*h with h = 2L/n, and the discrete
 * frequencies per axis are pi*k/L for k in [-n/2, n/2).
 */
struct Grid {
    int dim = 0;          // spatial dimension, 1..3
    int n = 0;            // points per axis, power of two >= 16
    double half_length = 0.0;  // L
    double spacing = 0.0;      // h = 2L/n

    std::int64_t point_count() const {
        std::int64_t c = 1;
        for (int d = 0; d < dim; ++d) c *= n;
        return c;
    }

    /** Coordinate of index i along one axis. */
    double coord(int i) const { return -half_length + i * spacing; }

    /** Row-major linear index -> per-axis indices (first axis slowest). */
    std::array<int, 3> unravel(std::int64_t idx) const {
        std::array<int, 3> ix{0, 0, 0};
        for (int d = dim - 1; d >= 0; --d) {
            ix[d] = static_cast<int>(idx % n);
            idx /= n;
        }
        return ix;
    }

    /** Coordinates of the grid point with the given linear index. */
    std::array<double, 3> point(std::int64_t idx) const {
        auto ix = unravel(idx);
        std::array<double, 3> x{0.0, 0.0, 0.0};
        for (int d = 0; d < dim; ++d) x[d] = coord(ix[d]);
        return x;
    }

    /** Euclidean distance from the origin of the grid point idx. */
    double radius(std::int64_t idx) const;

    friend bool operator==(const Grid&, const Grid&) = default;
};

Grid make_grid(int dim, int n, double half_length);

/** Real-valued samples on a Grid, row-major axis order. */
struct Field {
    Grid grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(const Grid& g) : grid(g), values(static_cast<std::size_t>(g.point_count()), 0.0) {}

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
};

/** Sample f(x) at every grid point. F takes std::array<double,3>. */
template <typename F>
Field sample(const Grid& g, F&& f) {
    Field u(g);
    const std::int64_t count = g.point_count();
    for (std::int64_t i = 0; i < count; ++i) u.values[static_cast<std::size_t>(i)] = f(g.point(i));
    return u;
}

/** Riemann quadrature norm (h^N sum |u|^p)^(1/p). Requires p >= 1. */
double lp_norm(const Field& u, double p);

/** Discrete L2 inner product h^N sum u_j v_j. */
double inner(const Field& u, const Field& v);

/** h^N sum u_j^2. */
double l2_norm_sq(const Field& u);

double max_abs(const Field& u);

/** Fraction of the |u|^2 mass at points with |x|_inf > L/2. */
double tail_mass_fraction(const Field& u);

/** Throws NumericError if any value is not finite. */
void check_finite(const Field& u, const char* what);

/** y += a*x (grids must match). */
void axpy(double a, const Field& x, Field& y);

void scale(Field& u, double a);

} // namespace fracground

#endif
