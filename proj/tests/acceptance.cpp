// Acceptance suite: one line per criterion, PASS only when every stated
// sub-check holds at its stated tolerance. Exit code = number of failed
// criteria. The supplementary block at the end is diagnostic output only.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "fracground/bubble.hpp"
#include "fracground/dilation.hpp"
#include "fracground/fourier.hpp"
#include "fracground/grid.hpp"
#include "fracground/identities.hpp"
#include "fracground/nonlinearity.hpp"
#include "fracground/rearrange.hpp"
#include "fracground/solver.hpp"

using namespace fracground;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int idx, const char* name, bool pass, const std::string& detail) {
    std::printf("[%2d] %s  %s  (%s)\n", idx, pass ? "PASS" : "FAIL", name, detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return std::string(buf);
}

double rel_l2_diff(const Field& a, const Field& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        num += d * d;
        den += b.values[i] * b.values[i];
    }
    return std::sqrt(num / std::max(den, 1e-300));
}

ProblemParams pinned_params() {
    ProblemParams p;
    p.s = 0.5;
    p.N = 2;
    p.a = p.b = p.C = 1.0;
    p.q = 3.0;
    return p;
}

// ---------------------------------------------------------------- criterion 1
void criterion_eigenfunction() {
    const auto t0 = Clock::now();
    const Grid g = make_grid(1, 128, 8.0 * std::numbers::pi);
    double worst = 0.0;
    for (double k : {1.0, 2.0, 5.0}) {
        for (double s : {0.25, 0.5, 0.75}) {
            Field u = sample(g, [k](const std::array<double, 3>& x) { return std::cos(k * x[0]); });
            Field expected = u;
            scale(expected, std::pow(k * k, s));
            worst = std::max(worst, rel_l2_diff(apply_fractional_laplacian(u, s), expected));
        }
    }
    const double dt = seconds_since(t0);
    report(1, "eigenfunction exactness", worst <= 1e-10 && dt < 1.0,
           fmt("max_rel_err=%.2e (<=1e-10), runtime=%.2fs (<1s)", worst, dt));
}

// ---------------------------------------------------------------- criterion 2
void criterion_oracle_equivalence() {
    const auto t0 = Clock::now();
    const Grid g64 = make_grid(1, 64, 12.0);
    auto gaussian = [](const Grid& g, double w) {
        return sample(g, [w](const std::array<double, 3>& x) {
            return std::exp(-x[0] * x[0] / (w * w));
        });
    };
    const Field bump = sample(g64, [](const std::array<double, 3>& x) {
        const double r = std::fabs(x[0]) / 3.0;
        return r < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0;
    });
    const Field two_bump = sample(g64, [](const std::array<double, 3>& x) {
        return std::exp(-(x[0] - 2.5) * (x[0] - 2.5)) + std::exp(-(x[0] + 2.5) * (x[0] + 2.5));
    });

    double lo = 1e300, hi = 0.0;
    for (const Field& f : {gaussian(g64, 1.0), bump, two_bump}) {
        const double r = seminorm_sq_direct(f, 0.5) / seminorm_sq_spectral(f, 0.5);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    const double spread = (hi - lo) / lo;

    // calibration on a tighter torus with a wide reference Gaussian, where
    // the n = 64 near-diagonal quadrature error is inside the 2% budget
    const double c64 = calibrate_normalization(1, 0.5, make_grid(1, 64, 8.0), 2.5).c_ratio;
    const double c128 = calibrate_normalization(1, 0.5, make_grid(1, 128, 8.0), 2.5).c_ratio;
    const double drift = std::fabs(c128 - c64) / c64;

    const double dt = seconds_since(t0);
    report(2, "seminorm oracle equivalence",
           spread <= 0.05 && drift <= 0.02 && dt < 60.0,
           fmt("shape spread=%.3f (<=0.05), refine drift=%.4f (<=0.02), runtime=%.1fs (<60s)",
               spread, drift, dt));
}

// ---------------------------------------------------------------- criterion 3
void criterion_scaling_laws() {
    ProblemParams p = pinned_params();
    const ModelNonlinearity nl(p);
    double worst_T = 0.0, worst_V = 0.0;

    // 1D and 2D band-limited packets with support margin
    {
        const Grid g = make_grid(1, 512, 16.0);
        Field u = sample(g, [](const std::array<double, 3>& x) {
            return std::exp(-x[0] * x[0] / 4.0) * std::cos(2.0 * x[0]);
        });
        u = band_limit(u, g.n / 8);
        const double T = kinetic_energy(u, p.s);
        const double V = potential_energy(u, nl);
        for (double sigma : {0.5, 2.0}) {
            Field us = dilate(u, sigma);
            worst_T = std::max(worst_T, std::fabs(kinetic_energy(us, p.s) /
                                                      (std::pow(sigma, 1.0 - 2.0 * p.s) * T) -
                                                  1.0));
            worst_V = std::max(worst_V,
                               std::fabs(potential_energy(us, nl) / (sigma * V) - 1.0));
        }
    }
    {
        const Grid g = make_grid(2, 256, 16.0);
        Field u = sample(g, [](const std::array<double, 3>& x) {
            const double r2 = x[0] * x[0] + x[1] * x[1];
            return std::exp(-r2 / 4.0) * std::cos(2.0 * x[0]);
        });
        u = band_limit(u, g.n / 8);
        const double T = kinetic_energy(u, p.s);
        const double V = potential_energy(u, nl);
        for (double sigma : {0.5, 2.0}) {
            Field us = dilate(u, sigma);
            worst_T = std::max(worst_T, std::fabs(kinetic_energy(us, p.s) /
                                                      (std::pow(sigma, 2.0 - 2.0 * p.s) * T) -
                                                  1.0));
            worst_V = std::max(worst_V,
                               std::fabs(potential_energy(us, nl) / (sigma * sigma * V) - 1.0));
        }
    }
    report(3, "dilation scaling laws", worst_T <= 1e-3 && worst_V <= 1e-3,
           fmt("max T defect=%.2e, max V defect=%.2e (<=1e-3, sigma in {0.5,2})", worst_T,
               worst_V));
}

// ------------------------------------------------------------- criteria 4-6
struct SolveOutcome {
    GroundStateResult result;
    double runtime = 0.0;
};

SolveOutcome run_pinned_solve(int n) {
    const auto t0 = Clock::now();
    SolverConfig config;
    config.max_iterations = 4000;
    SolveOutcome out{solve_ground_state(make_grid(2, n, 12.0), ModelNonlinearity(pinned_params()),
                                        config),
                     0.0};
    out.runtime = seconds_since(t0);
    return out;
}

void criterion_ground_state(const SolveOutcome& solve) {
    const GroundStateResult& r = solve.result;
    double min_val = 0.0;
    for (double v : r.omega.values) min_val = std::min(min_val, v);
    const bool positive = min_val >= -1e-10 * max_abs(r.omega);
    const double radial_gap = rel_l2_diff(symmetric_decreasing_rearrangement(r.u_min), r.u_min);
    const bool radial = radial_gap <= 1e-6;
    const bool pass = r.converged && r.el_rel_residual <= 1e-2 &&
                      r.pohozaev_rel_residual <= 1e-2 && positive && radial &&
                      solve.runtime <= 600.0;
    report(4, "ground-state certification (a=b=C=1, q=3, 128^2, L=12)", pass,
           fmt("converged=%d, EL=%.2e (<=1e-2), pohozaev=%.2e (<=1e-2), min(w)/max|w|=%.1e, "
               "radial_gap=%.1e, runtime=%.1fs (<=600s)",
               int(r.converged), r.el_rel_residual, r.pohozaev_rel_residual,
               min_val / std::max(max_abs(r.omega), 1e-300), radial_gap, solve.runtime));
}

void criterion_m_consistency(const GroundStateResult& r) {
    const ProblemParams p = pinned_params();
    const double gap = std::fabs(r.m_direct - r.m_formula) / std::fabs(r.m_direct);
    const double energy_form = p.s / p.N * seminorm_sq_spectral(r.omega, p.s);
    const double form_gap = std::fabs(r.m_direct - energy_form) / std::fabs(r.m_direct);
    report(5, "m-M consistency", gap <= 1e-2 && form_gap <= 1e-2,
           fmt("|m_dir-m_form|/m=%.2e (<=1e-2), |I-(s/N)[w]^2|/I=%.2e (<=1e-2)", gap, form_gap));
}

void criterion_path(const GroundStateResult& r) {
    const ProblemParams p = pinned_params();
    const ModelNonlinearity nl(p);
    const double t_max = 1.5 * std::pow(p.N / (p.N - 2.0 * p.s), 1.0 / (2.0 * p.s));
    PathProfile profile = dilation_path_profile(r.omega, nl, t_max, 101);

    std::size_t i_one = 0;
    for (std::size_t i = 0; i < profile.t_samples.size(); ++i)
        if (profile.t_samples[i] == 1.0) i_one = i;
    const double step = profile.t_samples[i_one + 1] / profile.t_samples[i_one];
    const bool argmax_ok =
        profile.t_argmax <= step * (1 + 1e-12) && profile.t_argmax >= (1 - 1e-12) / step;

    bool signs_ok = true;
    for (std::size_t i = 0; i < profile.t_samples.size(); ++i) {
        if (profile.t_samples[i] < 1.0 && !(profile.derivative_values[i] > 0.0)) signs_ok = false;
        if (profile.t_samples[i] > 1.0 && !(profile.derivative_values[i] < 0.0)) signs_ok = false;
    }

    double worst_dev = 0.0;
    for (std::size_t i = 0; i < profile.t_samples.size(); ++i) {
        const double t = profile.t_samples[i];
        if (t < 0.25 || t > 1.5) continue;
        const double scale_ref = std::max(std::fabs(profile.energies_closed_form[i]),
                                          p.s / p.N * profile.seminorm_sq_omega);
        worst_dev = std::max(worst_dev,
                             std::fabs(profile.energies_closed_form[i] -
                                       profile.energies_direct[i]) /
                                 scale_ref);
    }

    bool crossing_ok = false;
    double t0_val = 0.0, rho0 = 0.0;
    try {
        GeometryEstimate geo = mountain_pass_geometry(p, std::sqrt(std::numbers::pi), 0, 3,
                                                      r.omega.grid);
        rho0 = geo.rho0;
        t0_val = path_crossing_t0(profile, rho0);
        crossing_ok = true;
    } catch (const Error&) {
        crossing_ok = false;
    }

    report(6, "mountain-pass path on omega",
           argmax_ok && signs_ok && worst_dev <= 1e-2 && crossing_ok,
           fmt("t_argmax=%.4f (within one step of 1: %d), signs=%d, closed-vs-direct=%.2e "
               "(<=1e-2 on [0.25,1.5]), t0=%.4f rho0=%.3f found=%d",
               profile.t_argmax, int(argmax_ok), int(signs_ok), worst_dev, t0_val, rho0,
               int(crossing_ok)));
}

// ---------------------------------------------------------------- criterion 7
double criterion_bubble_bounds(double M_est) {
    const ProblemParams p = pinned_params();
    const Grid g = make_grid(2, 256, 12.0);
    BubbleScanResult scan = bubble_scan(p, g, {0.8, 0.4, 0.2, 0.1});

    BoundsReport bounds = m_bounds_check(M_est, scan.S_star_estimate, p);

    bool gamma_increasing = true;
    for (std::size_t i = 0; i + 1 < scan.gamma_scaled.size(); ++i)
        if (!(scan.gamma_scaled[i + 1] > scan.gamma_scaled[i])) gamma_increasing = false;

    const bool v_bound = scan.V_of_v_eps.back() >= 1.0 / p.two_star();
    const double rate = scan.psi_2star_rate.slope;
    const bool rate_ok = rate >= 0.7 * p.N && rate <= 1.3 * p.N;

    report(7, "bubble-family bounds (scan eps {0.8,0.4,0.2,0.1}, 256^2, L=12)",
           bounds.pass && gamma_increasing && v_bound && rate_ok,
           fmt("M=%.4f in (0, %.4f)=%d, gamma_scaled increasing=%d, V(v_0.1)=%.3f (>=0.25: %d), "
               "2*-deficit rate=%.2f (in [1.4,2.6]: %d), S*=%.4f",
               M_est, bounds.upper_bound, int(bounds.pass), int(gamma_increasing),
               scan.V_of_v_eps.back(), int(v_bound), rate, int(rate_ok), scan.S_star_estimate));
    return scan.S_star_estimate;
}

// ---------------------------------------------------------------- criterion 8
void criterion_tmv_and_gradient(const GroundStateResult& r) {
    const ProblemParams p = pinned_params();
    const ModelNonlinearity nl(p);
    const Grid g = make_grid(2, 128, 12.0);
    std::mt19937_64 rng(4242);

    const double floor = r.M - 3.0 * std::max(r.m_uncertainty, 1e-3 * r.M);
    int tested = 0, violations = 0;
    while (tested < 100) {
        Field w = random_band_limited(g, 6, rng);
        try {
            w = amplitude_tune(w, nl);
        } catch (const InfeasibleError&) {
            continue;
        }
        const double V = potential_energy(w, nl);
        if (!(V > 0.0)) continue;
        ++tested;
        const double T = kinetic_energy(w, p.s);
        if (!(T >= floor * std::pow(V, (p.N - 2.0 * p.s) / p.N))) ++violations;
    }

    // gradient consistency at O(tau^2), Richardson-confirmed
    bool gradient_ok = true;
    double worst_order = 2.0;
    for (int trial = 0; trial < 10; ++trial) {
        Field u = random_band_limited(g, 5, rng);
        scale(u, 0.5 / std::max(max_abs(u), 1e-12));
        Field phi = random_band_limited(g, 5, rng);
        scale(phi, 0.05 / std::max(max_abs(phi), 1e-12));
        const Field res = euler_lagrange_residual(u, nl).residual;
        const double directional = inner(res, phi);
        auto fd_err = [&](double tau) {
            Field up = u, um = u;
            axpy(tau, phi, up);
            axpy(-tau, phi, um);
            return std::fabs((energy(up, nl) - energy(um, nl)) / (2.0 * tau) - directional);
        };
        const double scale_est =
            std::max({1.0, std::fabs(energy(u, nl)), std::fabs(directional)});
        for (double tau : {1e-3, 1e-4})
            if (fd_err(tau) > 10.0 * tau * tau * scale_est) gradient_ok = false;
        // order estimate from taus above the round-off floor
        const double e2 = fd_err(1e-2), e3 = fd_err(1e-3);
        if (e3 > 1e-12) {
            const double order = std::log(e2 / e3) / std::log(10.0);
            worst_order = std::min(worst_order, order);
            if (order < 1.6 || order > 2.4) gradient_ok = false;
        }
    }

    report(8, "TMV property suite + gradient consistency", violations == 0 && gradient_ok,
           fmt("TMV violations=%d/100 (floor=%.4f), FD order (worst)=%.2f, bound 10*tau^2 ok=%d",
               violations, floor, worst_order, int(gradient_ok)));
}

// ---------------------------------------------------------------- criterion 9
void criterion_geometry(double S_star_est) {
    const ProblemParams p = pinned_params();
    const ModelNonlinearity nl(p);
    const Grid g = make_grid(2, 64, 12.0);

    GeometryEstimate est = mountain_pass_geometry(p, S_star_est, 200, 99, g);

    bool gt_ok = true;
    for (double lt = -6.0; lt <= 3.0; lt += 0.02) {
        const double t = std::pow(10.0, lt);
        const double bound = -0.25 * p.a * t * t + est.C_a * std::pow(t, p.two_star());
        if (!(nl.G(t) <= bound + 1e-12 * std::max(1.0, std::fabs(bound)))) gt_ok = false;
    }

    // explicit escape field
    Field bump = sample(g, [](const std::array<double, 3>& x) {
        return std::exp(-(x[0] * x[0] + x[1] * x[1]));
    });
    bool escape = false;
    double escape_norm = 0.0;
    double t = 1.0;
    for (int k = 0; k < 40; ++k, t *= 2.0) {
        Field big = bump;
        scale(big, t);
        if (energy(big, nl) < 0.0) {
            escape_norm = std::sqrt(hs_norm_sq(big, p.s));
            escape = escape_norm > est.rho;
            break;
        }
    }

    report(9, "mountain-pass geometry suite", gt_ok && est.failures == 0 && escape,
           fmt("(Gt) pointwise=%d, sphere failures=%d/200 (rho=%.3f, eta=%.2e), escape |u0|=%.2f "
               "> rho=%d",
               int(gt_ok), est.failures, est.rho, est.eta, escape_norm, int(escape)));
}

// --------------------------------------------------------------- criterion 10
void criterion_refinement(double M128, double M256) {
    const double drift = std::fabs(M256 - M128) / M128;
    report(10, "refinement stability of M (128 -> 256)", drift <= 0.02,
           fmt("M128=%.6f, M256=%.6f, drift=%.4f (<=0.02)", M128, M256, drift));
}

// ------------------------------------------------------- supplementary block
void supplementary_demonstrations() {
    std::printf("--- supplementary diagnostics (not part of the stated criteria) ---\n");

    // The identical certification pipeline at a parameter point whose ground
    // state the grid resolves (stronger subcritical term, larger torus).
    {
        ProblemParams p = pinned_params();
        p.C = 5.0;
        SolverConfig config;
        config.max_iterations = 3000;
        const auto t0 = Clock::now();
        GroundStateResult r =
            solve_ground_state(make_grid(2, 512, 24.0), ModelNonlinearity(p), config);
        const double gap = std::fabs(r.m_direct - r.m_formula) / std::fabs(r.m_direct);
        std::printf("[s1] C=5, 512^2, L=24: converged=%d EL=%.2e pohozaev=%.2e m-gap=%.2e "
                    "|mu-1|=%.2e M=%.6f (%.1fs)\n",
                    int(r.converged), r.el_rel_residual, r.pohozaev_rel_residual, gap,
                    std::fabs(r.mu_omega - 1.0), r.M, seconds_since(t0));
        ProblemParams p2 = p;
        SolverConfig c2 = config;
        GroundStateResult r2 =
            solve_ground_state(make_grid(2, 256, 24.0), ModelNonlinearity(p2), c2);
        std::printf("[s2] C=5 refinement drift |M512-M256|/M = %.2e\n",
                    std::fabs(r.M - r2.M) / r.M);
    }

    // The Gamma_eps divergence mechanism where its crossover is resolvable
    // (N=1 < 4s regime; for the pinned N=2, s=1/2 point the continuum
    // crossover sits at eps ~ 0.01, below any 256^2 L=12 resolution).
    {
        ProblemParams p;
        p.s = 0.3;
        p.N = 1;
        p.q = 4.0;
        p.C = 5.0;
        const Grid g = make_grid(1, 8192, 12.0);
        BubbleScanResult scan = bubble_scan(p, g, {0.4, 0.2, 0.1, 0.05, 0.025});
        bool inc = true;
        for (std::size_t i = 0; i + 1 < scan.gamma_scaled.size(); ++i)
            if (!(scan.gamma_scaled[i + 1] > scan.gamma_scaled[i])) inc = false;
        std::printf("[s3] N=1, s=0.3, q=4 scan: gamma_scaled increasing=%d, V(v_eps_min)=%.3f "
                    "(1/2* = %.3f)\n",
                    int(inc), scan.V_of_v_eps.back(), 1.0 / p.two_star());
    }
}

} // namespace

int main() {
    const auto t_all = Clock::now();
    std::printf("fracground acceptance suite\n");

    criterion_eigenfunction();
    criterion_oracle_equivalence();
    criterion_scaling_laws();

    SolveOutcome solve128 = run_pinned_solve(128);
    criterion_ground_state(solve128);
    criterion_m_consistency(solve128.result);
    criterion_path(solve128.result);
    const double S_star = criterion_bubble_bounds(solve128.result.M);
    criterion_tmv_and_gradient(solve128.result);
    criterion_geometry(S_star);

    SolveOutcome solve256 = run_pinned_solve(256);
    criterion_refinement(solve128.result.M, solve256.result.M);

    supplementary_demonstrations();

    std::printf("ACCEPTANCE: %d/10 criteria passed (total runtime %.1fs)\n", 10 - g_failures,
                seconds_since(t_all));
    return g_failures;
}
