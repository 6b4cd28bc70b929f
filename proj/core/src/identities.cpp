#include "fracground/identities.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "fracground/dilation.hpp"
#include "fracground/fourier.hpp"

namespace fracground {

double pohozaev_residual(const Field& u, const ModelNonlinearity& nl) {
    const ProblemParams& p = nl.params();
    const double semi = seminorm_sq_spectral(u, p.s);
    const double lhs = 0.5 * (p.N - 2.0 * p.s) * semi;
    const double rhs = p.N * potential_energy(u, nl);
    if (lhs == 0.0 && rhs == 0.0) return 0.0;
    return std::fabs(lhs - rhs) / std::max(lhs, std::numeric_limits<double>::min());
}

double J_functional(const Field& u, const ModelNonlinearity& nl) {
    const ProblemParams& p = nl.params();
    return 0.5 * seminorm_sq_spectral(u, p.s) -
           p.N / (p.N - 2.0 * p.s) * potential_energy(u, nl);
}

double H_functional(const Field& u, const ModelNonlinearity& nl) {
    const ProblemParams& p = nl.params();
    return 0.5 * (p.N - 2.0 * p.s) * seminorm_sq_spectral(u, p.s) -
           p.N * potential_energy(u, nl);
}

double least_energy_from_M(double M, const ProblemParams& params) {
    if (!(M > 0.0)) throw ParameterError("least_energy_from_M: M must be positive");
    const double s = params.s;
    const double N = params.N;
    return s / N * std::pow((N - 2.0 * s) / (2.0 * N), (N - 2.0 * s) / (2.0 * s)) *
           std::pow(2.0 * M, N / (2.0 * s));
}

PathProfile dilation_path_profile(const Field& omega, const ModelNonlinearity& nl, double t_max,
                                  int num_samples) {
    if (!(t_max > 1.0)) throw ParameterError("dilation_path_profile: t_max must exceed 1");
    if (num_samples < 3) throw ParameterError("dilation_path_profile: need at least 3 samples");

    const ProblemParams& p = nl.params();
    const double s = p.s;
    const double N = p.N;

    PathProfile profile;
    profile.seminorm_sq_omega = seminorm_sq_spectral(omega, s);
    profile.l2_sq_omega = l2_norm_sq(omega);
    profile.potential_omega = potential_energy(omega, nl);

    const double semi = profile.seminorm_sq_omega;
    const double Vw = profile.potential_omega;
    const double l2 = profile.l2_sq_omega;

    // geometric sample grid on (0, t_max], with the sample nearest 1 snapped
    // to exactly 1 (the derivative factor 1 - t^{2s} has its root there)
    const double t_min = std::min(0.05, t_max / 100.0);
    const double ratio = std::pow(t_max / t_min, 1.0 / (num_samples - 1));
    std::vector<double> ts(static_cast<std::size_t>(num_samples));
    {
        double t = t_min;
        for (int i = 0; i < num_samples; ++i, t *= ratio) ts[static_cast<std::size_t>(i)] = t;
        ts.back() = t_max;
        std::size_t nearest = 0;
        for (std::size_t i = 1; i < ts.size(); ++i)
            if (std::fabs(std::log(ts[i])) < std::fabs(std::log(ts[nearest]))) nearest = i;
        ts[nearest] = 1.0;
    }
    for (int i = 0; i < num_samples; ++i) {
        const double t = ts[static_cast<std::size_t>(i)];
        profile.t_samples.push_back(t);
        const double tn2s = std::pow(t, N - 2.0 * s);
        const double tn = std::pow(t, N);
        profile.energies_closed_form.push_back(0.5 * tn2s * semi - tn * Vw);
        profile.derivative_values.push_back(std::pow(t, N - 2.0 * s - 1.0) *
                                            (1.0 - std::pow(t, 2.0 * s)) * 0.5 * (N - 2.0 * s) *
                                            semi);
        profile.h_values.push_back(0.5 * (N - 2.0 * s) * tn2s * semi - N * tn * Vw);
        profile.hs_norms.push_back(std::sqrt(tn2s * semi + tn * l2));

        DilationDiagnostics diag;
        Field gamma_t = dilate(omega, t, &diag);
        profile.energies_direct.push_back(energy(gamma_t, nl));
        profile.truncated.push_back(diag.truncation_warning);
    }

    std::size_t argmax = 0;
    for (std::size_t i = 1; i < profile.energies_direct.size(); ++i)
        if (profile.energies_direct[i] > profile.energies_direct[argmax]) argmax = i;
    profile.t_argmax = profile.t_samples[argmax];

    // interpolated root of the closed-form H between adjacent samples
    profile.t_zero_H = 0.0;
    for (std::size_t i = 0; i + 1 < profile.h_values.size(); ++i) {
        const double h0 = profile.h_values[i], h1 = profile.h_values[i + 1];
        if (h0 == 0.0) {
            profile.t_zero_H = profile.t_samples[i];
            break;
        }
        if (h0 * h1 < 0.0) {
            const double t0 = profile.t_samples[i], t1 = profile.t_samples[i + 1];
            profile.t_zero_H = t0 + (t1 - t0) * h0 / (h0 - h1);
            break;
        }
    }
    return profile;
}

GeometryEstimate mountain_pass_geometry(const ProblemParams& params, double S_star_est,
                                        int sample_count, std::uint64_t seed, const Grid& grid) {
    validate_params(params);
    if (!(S_star_est > 0.0))
        throw ParameterError("mountain_pass_geometry: S_star_est must be positive");
    const ModelNonlinearity nl(params);
    const double two_star = params.two_star();
    const double a = params.a;

    // C_a = sup_t (G(t) + (a/4) t^2) / |t|^{2*}. The ratio tends to b/2* at
    // infinity and to -inf at 0, with a single interior maximum: coarse
    // log-grid bracket, then golden-section refinement.
    auto ratio = [&](double t) { return (nl.G(t) + 0.25 * a * t * t) / std::pow(t, two_star); };
    double t_best = 1.0, r_best = -std::numeric_limits<double>::infinity();
    for (double lt = -6.0; lt <= 6.0; lt += 0.01) {
        const double t = std::pow(10.0, lt);
        const double r = ratio(t);
        if (r > r_best) {
            r_best = r;
            t_best = t;
        }
    }
    double lo = t_best / 1.05, hi = t_best * 1.05;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
    double f1 = ratio(x1), f2 = ratio(x2);
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = ratio(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = ratio(x1);
        }
    }
    GeometryEstimate est;
    // tiny inflation so the fitted constant majorizes the ratio pointwise
    est.C_a = std::max({r_best, f1, f2}) * (1.0 + 1e-12);

    // rho maximizes phi(r) = min{1/2, a/4} r^2 - C_a S_m^{2*/2} r^{2*}.
    // S_star_est is the quotient-convention constant (inf [u]^2/||u||^2);
    // the multiplicative constant of the embedding is its reciprocal.
    const double s_mult = 1.0 / S_star_est;
    const double mcoef = std::min(0.5, 0.25 * a);
    const double ccoef = est.C_a * std::pow(s_mult, 0.5 * two_star);
    est.rho = std::pow(2.0 * mcoef / (two_star * ccoef), 1.0 / (two_star - 2.0));
    const double phi_rho = mcoef * est.rho * est.rho - ccoef * std::pow(est.rho, two_star);
    if (!(phi_rho > 0.0))
        throw GeometryError("mountain_pass_geometry: lower bound has no positive maximum; "
                            "S_star estimate looks inconsistent");
    est.eta = 0.5 * phi_rho;

    // same recipe for H: min{(N-2s)/2, aN/4} r^2 - N C_a S_m^{2*/2} r^{2*}
    const double mH = std::min(0.5 * (params.N - 2.0 * params.s), 0.25 * a * params.N);
    const double cH = params.N * ccoef;
    est.rho0 = std::pow(2.0 * mH / (two_star * cH), 1.0 / (two_star - 2.0));

    // random band-limited fields rescaled onto the rho-sphere
    est.sample_count = sample_count;
    est.min_I_on_sphere = std::numeric_limits<double>::infinity();
    std::mt19937_64 rng(seed);
    const int kmax = std::max(2, grid.n / 8);
    for (int i = 0; i < sample_count; ++i) {
        Field u = random_band_limited(grid, std::min(kmax, 6), rng);
        const double norm = std::sqrt(hs_norm_sq(u, params.s));
        if (!(norm > 0.0)) continue;
        scale(u, est.rho / norm);
        const double I = energy(u, nl);
        est.min_I_on_sphere = std::min(est.min_I_on_sphere, I);
        if (I < est.eta) ++est.failures;
    }
    return est;
}

double path_crossing_t0(const PathProfile& profile, double rho0) {
    const std::size_t m = profile.t_samples.size();
    if (m < 2 || profile.h_values.size() != m || profile.hs_norms.size() != m)
        throw ParameterError("path_crossing_t0: malformed profile");

    auto norm_at = [&](double t, std::size_t i) {
        // piecewise-linear interpolation of the sampled norms
        const double t0 = profile.t_samples[i], t1 = profile.t_samples[i + 1];
        const double w = (t - t0) / (t1 - t0);
        return (1.0 - w) * profile.hs_norms[i] + w * profile.hs_norms[i + 1];
    };

    double h_scale = 0.0;
    for (double h : profile.h_values) h_scale = std::max(h_scale, std::fabs(h));
    const double tol = 1e-8 * std::max(h_scale, std::numeric_limits<double>::min());

    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double h0 = profile.h_values[i], h1 = profile.h_values[i + 1];
        if (h0 == 0.0 && profile.hs_norms[i] > rho0) return profile.t_samples[i];
        if (!(h0 * h1 < 0.0)) continue;
        // bisection on the piecewise-linear interpolant of H
        double ta = profile.t_samples[i], tb = profile.t_samples[i + 1];
        double ha = h0, hb = h1;
        auto h_at = [&](double t) {
            const double w = (t - profile.t_samples[i]) / (profile.t_samples[i + 1] - profile.t_samples[i]);
            return (1.0 - w) * h0 + w * h1;
        };
        double tm = ta;
        for (int it = 0; it < 200; ++it) {
            tm = 0.5 * (ta + tb);
            const double hm = h_at(tm);
            if (std::fabs(hm) <= tol) break;
            if (ha * hm <= 0.0) {
                tb = tm;
                hb = hm;
            } else {
                ta = tm;
                ha = hm;
            }
        }
        (void)hb;
        // the paper's crossing lies beyond the small H-positive ball
        const double side_norm = std::max(norm_at(tm, i), profile.hs_norms[i + 1]);
        if (side_norm > rho0) return tm;
    }
    throw CrossingError("path_crossing_t0: no admissible sign change of H along the path");
}

} // namespace fracground
