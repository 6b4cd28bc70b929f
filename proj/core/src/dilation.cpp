#include "fracground/dilation.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace fracground {

namespace {

// Periodic band-limited interpolation kernel for even n on period 2L:
// D(d) = sin(n*theta/2) * cot(theta/2) / n with theta = pi*d/L.
// D(j*h) = delta_j0, and D(2L*m) = 1 for even n.
double interp_kernel(double d, int n, double L) {
    const double two_L = 2.0 * L;
    d = std::remainder(d, two_L);
    const double theta = std::numbers::pi * d / L;
    if (std::fabs(theta) < 1e-13) return 1.0;
    const double s = std::sin(0.5 * theta);
    return std::sin(0.5 * n * theta) * std::cos(0.5 * theta) / (n * s);
}

// Smooth rolloff from 1 at |y| <= L - delta to 0 at |y| >= L.
double edge_taper(double y, double L, double delta) {
    const double t = (L - std::fabs(y)) / delta; // 1 at the inner edge, 0 at the boundary
    if (t >= 1.0) return 1.0;
    if (t <= 0.0) return 0.0;
    const double c = 0.5 - 0.5 * std::cos(std::numbers::pi * t);
    return c;
}

// Resampling matrix R[i][j] = D(x_i/sigma - x_j): row i gives the value of the
// interpolant at x_i/sigma. One matrix serves every axis (isotropic grid).
// Evaluation points outside the fundamental domain read the field as zero: u
// is a decaying function, not its periodization, so a shrinking dilation must
// not replicate the support. The transition is tapered smoothly over L/8 so
// that boundary-level tails do not turn into a spectral cliff.
std::vector<double> resampling_matrix(const Grid& g, double sigma) {
    const int n = g.n;
    const double L = g.half_length;
    const double delta = L / 8.0;
    std::vector<double> R(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double y = g.coord(i) / sigma;
        const double w = edge_taper(y, L, delta);
        if (w == 0.0) continue;
        for (int j = 0; j < n; ++j)
            R[static_cast<std::size_t>(i) * n + j] = w * interp_kernel(y - g.coord(j), n, L);
    }
    return R;
}

// Apply the n x n matrix R along the given axis of the row-major field.
void apply_along_axis(const Grid& g, const std::vector<double>& R, int axis,
                      const std::vector<double>& in, std::vector<double>& out) {
    const int n = g.n;
    const int dim = g.dim;
    // stride between consecutive entries along `axis`; number of lines = total/n
    std::int64_t stride = 1;
    for (int d = dim - 1; d > axis; --d) stride *= n;
    const std::int64_t total = g.point_count();
    const std::int64_t block = stride * n; // contiguous block containing whole lines of this axis

    std::vector<double> line(n), res(n);
    for (std::int64_t base = 0; base < total; base += block) {
        for (std::int64_t off = 0; off < stride; ++off) {
            for (int j = 0; j < n; ++j) line[j] = in[static_cast<std::size_t>(base + off + j * stride)];
            for (int i = 0; i < n; ++i) {
                const double* row = R.data() + static_cast<std::size_t>(i) * n;
                double acc = 0.0;
                for (int j = 0; j < n; ++j) acc += row[j] * line[j];
                res[i] = acc;
            }
            for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(base + off + i * stride)] = res[i];
        }
    }
}

} // namespace

Field dilate(const Field& u, double sigma, DilationDiagnostics* diag, double tail_warn_threshold) {
    if (!(sigma > 0.0)) throw ParameterError("dilate: sigma must be positive");
    const Grid& g = u.grid;

    if (sigma == 1.0) {
        if (diag) {
            diag->tail_fraction_input = tail_mass_fraction(u);
            diag->tail_fraction_output = diag->tail_fraction_input;
            diag->truncation_warning = diag->tail_fraction_output > tail_warn_threshold;
        }
        return u;
    }

    const std::vector<double> R = resampling_matrix(g, sigma);
    Field result(g);
    if (g.dim == 1) {
        apply_along_axis(g, R, 0, u.values, result.values);
    } else {
        std::vector<double> tmp(u.values);
        std::vector<double> tmp2(u.values.size());
        for (int axis = 0; axis < g.dim; ++axis) {
            apply_along_axis(g, R, axis, tmp, tmp2);
            tmp.swap(tmp2);
        }
        result.values = std::move(tmp);
    }

    if (diag) {
        diag->tail_fraction_input = tail_mass_fraction(u);
        diag->tail_fraction_output = tail_mass_fraction(result);
        diag->truncation_warning = diag->tail_fraction_output > tail_warn_threshold;
    }
    return result;
}

} // namespace fracground
