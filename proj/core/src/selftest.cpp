#include "fracground/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "fracground/dilation.hpp"
#include "fracground/fourier.hpp"
#include "fracground/nonlinearity.hpp"
#include "fracground/rearrange.hpp"

namespace fracground {

namespace {

struct Suite {
    std::ostream& out;
    int failures = 0;

    void check(const char* name, bool ok, double value, double limit) {
        out << (ok ? "PASS" : "FAIL") << "  " << name << "  (value=" << value
            << ", limit=" << limit << ")\n";
        if (!ok) ++failures;
    }
};

double rel_l2_diff(const Field& a, const Field& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        num += d * d;
        den += b.values[i] * b.values[i];
    }
    return std::sqrt(num / std::max(den, 1e-300));
}

Field gaussian_packet(const Grid& g, double width, double k0) {
    return sample(g, [&](const std::array<double, 3>& x) {
        double r2 = 0.0;
        for (int d = 0; d < g.dim; ++d) r2 += x[d] * x[d];
        return std::exp(-r2 / (width * width)) * std::cos(k0 * x[0]);
    });
}

} // namespace

int run_selftest(std::ostream& out) {
    Suite suite{out};

    // eigenfunction: (-Delta)^s cos(kx) = |k|^{2s} cos(kx)
    {
        const Grid g = make_grid(1, 64, 8.0 * std::numbers::pi);
        const Field u = sample(g, [](const std::array<double, 3>& x) { return std::cos(2.0 * x[0]); });
        Field expected = u;
        scale(expected, std::pow(2.0, 2.0 * 0.5));
        const double err = rel_l2_diff(apply_fractional_laplacian(u, 0.5), expected);
        suite.check("eigenfunction cos(2x), s=0.5", err <= 1e-10, err, 1e-10);
    }

    // self-adjointness on random band-limited pairs
    {
        const Grid g = make_grid(2, 32, 8.0);
        std::mt19937_64 rng(7);
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            const Field u = random_band_limited(g, 5, rng);
            const Field v = random_band_limited(g, 5, rng);
            const double lhs = inner(apply_fractional_laplacian(u, 0.6), v);
            const double rhs = inner(u, apply_fractional_laplacian(v, 0.6));
            const double scale_uv =
                std::sqrt(l2_norm_sq(u)) * std::sqrt(l2_norm_sq(v));
            worst = std::max(worst, std::fabs(lhs - rhs) / scale_uv);
        }
        suite.check("self-adjointness of (-Delta)^s", worst <= 1e-10, worst, 1e-10);
    }

    // scaling laws under dilation
    {
        ProblemParams p;
        const ModelNonlinearity nl(p);
        const Grid g = make_grid(1, 512, 16.0);
        const Field u = band_limit(gaussian_packet(g, 2.0, 2.0), g.n / 8);
        double worst_T = 0.0, worst_V = 0.0;
        for (double sigma : {0.5, 2.0}) {
            const Field us = dilate(u, sigma);
            const double Tr = kinetic_energy(us, p.s) /
                              (std::pow(sigma, g.dim - 2.0 * p.s) * kinetic_energy(u, p.s));
            const double Vr =
                potential_energy(us, nl) / (std::pow(sigma, g.dim) * potential_energy(u, nl));
            worst_T = std::max(worst_T, std::fabs(Tr - 1.0));
            worst_V = std::max(worst_V, std::fabs(Vr - 1.0));
        }
        suite.check("kinetic scaling T(u_sigma) = sigma^{N-2s} T(u)", worst_T <= 1e-3, worst_T, 1e-3);
        suite.check("potential scaling V(u_sigma) = sigma^N V(u)", worst_V <= 1e-3, worst_V, 1e-3);
    }

    // rearrangement: equimeasurability and radial monotonicity
    {
        const Grid g = make_grid(2, 32, 8.0);
        std::mt19937_64 rng(11);
        const Field u = random_band_limited(g, 6, rng);
        const Field r = symmetric_decreasing_rearrangement(u);
        std::vector<double> a(u.values), b(r.values);
        for (double& v : a) v = std::fabs(v);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        bool multiset_equal = a == b;
        suite.check("rearrangement equimeasurability (exact multiset)", multiset_equal,
                    multiset_equal ? 0.0 : 1.0, 0.0);

        const double l2u = lp_norm(u, 2.0), l2r = lp_norm(r, 2.0);
        const double norm_gap = std::fabs(l2u - l2r) / l2u;
        suite.check("rearrangement preserves L2 norm", norm_gap <= 1e-13, norm_gap, 1e-13);
    }

    // gradient consistency: centered differences of I vs the EL residual field
    {
        ProblemParams p;
        const ModelNonlinearity nl(p);
        const Grid g = make_grid(2, 32, 8.0);
        std::mt19937_64 rng(23);
        Field u = random_band_limited(g, 5, rng);
        scale(u, 0.5 / std::max(max_abs(u), 1e-12));
        Field phi = random_band_limited(g, 5, rng);
        scale(phi, 0.05 / std::max(max_abs(phi), 1e-12));
        const Field r = euler_lagrange_residual(u, nl).residual;
        const double directional = inner(r, phi);
        double err_prev = 0.0;
        bool order_ok = true;
        double worst = 0.0;
        double tau = 1e-2;
        for (int k = 0; k < 2; ++k, tau /= 4.0) {
            Field up = u, um = u;
            axpy(tau, phi, up);
            axpy(-tau, phi, um);
            const double fd = (energy(up, nl) - energy(um, nl)) / (2.0 * tau);
            const double err = std::fabs(fd - directional);
            worst = std::max(worst, err / (tau * tau));
            if (k > 0 && err_prev > 1e-14) {
                const double order = std::log(err_prev / err) / std::log(4.0);
                order_ok = order > 1.5 && order < 2.5;
            }
            err_prev = err;
        }
        suite.check("gradient consistency |FD - <r,phi>| = O(tau^2)", worst <= 10.0, worst, 10.0);
        suite.check("gradient consistency convergence order ~ 2", order_ok, order_ok ? 2.0 : 0.0,
                    2.0);
    }

    // oracle equivalence: direct vs spectral seminorm ratio across shapes
    {
        const Grid g = make_grid(1, 64, 12.0);
        auto gaussian = [&](double w) {
            return sample(g, [&](const std::array<double, 3>& x) {
                return std::exp(-x[0] * x[0] / (w * w));
            });
        };
        const Field bump = sample(g, [](const std::array<double, 3>& x) {
            const double r = std::fabs(x[0]) / 3.0;
            return r < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0;
        });
        const Field two_bump = sample(g, [](const std::array<double, 3>& x) {
            return std::exp(-(x[0] - 2.5) * (x[0] - 2.5)) + std::exp(-(x[0] + 2.5) * (x[0] + 2.5));
        });
        std::vector<double> ratios;
        for (const Field& f : {gaussian(1.0), bump, two_bump})
            ratios.push_back(seminorm_sq_direct(f, 0.5) / seminorm_sq_spectral(f, 0.5));
        double lo = ratios[0], hi = ratios[0];
        for (double r : ratios) {
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        const double spread = (hi - lo) / lo;
        suite.check("direct/spectral seminorm ratio constant across shapes", spread <= 0.05,
                    spread, 0.05);
    }

    out << (suite.failures == 0 ? "selftest: all checks passed\n"
                                : "selftest: FAILURES DETECTED\n");
    return suite.failures;
}

} // namespace fracground
