#include "fracground/bubble.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracground/fourier.hpp"

namespace fracground {

namespace {

void require_bubble_args(double s, double eps, double kappa) {
    if (!(s > 0.0 && s < 1.0)) throw ParameterError("bubble: s must lie in (0,1)");
    if (!(eps > 0.0)) throw ParameterError("bubble: eps must be positive");
    if (!(kappa > 0.0)) throw ParameterError("bubble: kappa must be positive");
}

// Ordinary least squares y = slope*x + intercept with a ~2-sigma slope CI.
RateFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    RateFit fit;
    fit.points = static_cast<int>(x.size());
    if (x.size() < 2) return fit;
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    if (x.size() > 2) {
        double ss = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = y[i] - (fit.slope * x[i] + fit.intercept);
            ss += r * r;
        }
        const double var_slope = ss / (n - 2.0) * n / denom;
        fit.slope_ci = 2.0 * std::sqrt(std::max(var_slope, 0.0));
    }
    return fit;
}

} // namespace

Field talenti_bubble(const Grid& grid, double s, double eps, double kappa) {
    require_bubble_args(s, eps, kappa);
    const double p = 0.5 * (grid.dim - 2.0 * s);
    const double amp = kappa * std::pow(eps, p);
    return sample(grid, [&](const std::array<double, 3>& x) {
        double r2 = 0.0;
        for (int d = 0; d < grid.dim; ++d) r2 += x[d] * x[d];
        return amp / std::pow(eps * eps + r2, p);
    });
}

double bubble_cutoff_eta(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double rho = r - 1.0;
    return std::exp(1.0 - 1.0 / (1.0 - rho * rho));
}

Field cutoff_bubble(const Grid& grid, double s, double eps, double kappa) {
    require_bubble_args(s, eps, kappa);
    if (grid.half_length < 2.5)
        throw DomainTooSmallError("cutoff_bubble: torus half-length must be >= 2.5 (got " +
                                  std::to_string(grid.half_length) + ")");
    Field u = talenti_bubble(grid, s, eps, kappa);
    const std::int64_t count = grid.point_count();
    for (std::int64_t i = 0; i < count; ++i)
        u.values[static_cast<std::size_t>(i)] *= bubble_cutoff_eta(grid.radius(i));
    return u;
}

Field normalized_bubble(const Grid& grid, double s, double eps, double kappa, double two_star) {
    Field psi = cutoff_bubble(grid, s, eps, kappa);
    const double norm = lp_norm(psi, two_star);
    if (!(norm > 1e-300)) throw NumericError("normalized_bubble: psi_eps vanishes on this grid");
    scale(psi, 1.0 / norm);
    return psi;
}

double gamma_eps(const Field& v_eps, const ProblemParams& params) {
    const double lq = lp_norm(v_eps, params.q);
    const double l2 = lp_norm(v_eps, 2.0);
    return params.C / params.q * std::pow(lq, params.q) - 0.5 * params.a * l2 * l2;
}

BubbleScanResult bubble_scan(const ProblemParams& params, const Grid& grid,
                             std::vector<double> eps_list) {
    validate_params(params);
    if (params.N != grid.dim) throw ParameterError("bubble_scan: params.N must match grid dim");
    if (eps_list.size() < 2) throw ParameterError("bubble_scan: need at least two eps values");
    std::sort(eps_list.begin(), eps_list.end(), std::greater<double>());
    const double eps_min_admissible = grid.spacing;
    for (double e : eps_list) {
        if (e < eps_min_admissible) {
            std::ostringstream msg;
            msg << "bubble_scan: eps = " << e << " is under-resolved; minimum admissible eps on "
                << "this grid is h = " << eps_min_admissible << " (eps >= 4h = "
                << 4.0 * eps_min_admissible << " recommended)";
            throw ResolutionError(msg.str());
        }
    }

    const double s = params.s;
    const double two_star = params.two_star();
    const double kappa = 1.0;
    const ModelNonlinearity nl(params);

    BubbleScanResult scan;
    scan.epsilons = eps_list;
    for (double eps : eps_list) {
        Field psi = cutoff_bubble(grid, s, eps, kappa);
        const double psi_2star = std::pow(lp_norm(psi, two_star), two_star);
        const double psi_semi = seminorm_sq_spectral(psi, s);
        Field v = psi;
        scale(v, 1.0 / std::pow(psi_2star, 1.0 / two_star));
        const double gamma = gamma_eps(v, params);
        scan.psi_2star_norms.push_back(psi_2star);
        scan.psi_seminorms.push_back(psi_semi);
        scan.gamma_values.push_back(gamma);
        scan.gamma_scaled.push_back(gamma / std::pow(eps, grid.dim - 2.0 * s));
        scan.V_of_v_eps.push_back(potential_energy(v, nl));
    }

    // [v_eps]^2 = [psi]^2 / ||psi||_{2*}^2 -> S_star + O(eps^{N-2s});
    // Richardson-extrapolate the two smallest eps at that rate.
    const std::size_t m = eps_list.size();
    auto v_semi = [&](std::size_t i) {
        return scan.psi_seminorms[i] / std::pow(scan.psi_2star_norms[i], 2.0 / two_star);
    };
    const double p = grid.dim - 2.0 * s;
    const double e1 = eps_list[m - 2], e2 = eps_list[m - 1]; // e1 > e2
    const double f1 = v_semi(m - 2), f2 = v_semi(m - 1);
    scan.S_star_estimate =
        (f2 * std::pow(e1, p) - f1 * std::pow(e2, p)) / (std::pow(e1, p) - std::pow(e2, p));
    if (!(scan.S_star_estimate > 0.0))
        throw NumericError("bubble_scan: nonpositive S_star estimate");

    for (std::size_t i = 0; i < m; ++i) {
        if (scan.V_of_v_eps[i] >= 1.0 / two_star) {
            scan.first_eps_with_V_bound = eps_list[i];
            break;
        }
    }

    // Deficit rates from consecutive differences: f(e_i) - f(e_{i+1}) ~ c e_i^rate
    // for a geometric eps ladder, so the log-log slope estimates the rate.
    std::vector<double> lx, ly2star, lysemi;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double d2 = std::fabs(scan.psi_2star_norms[i] - scan.psi_2star_norms[i + 1]);
        const double dsm = std::fabs(v_semi(i) - v_semi(i + 1));
        if (d2 > 0.0 && dsm > 0.0) {
            lx.push_back(std::log(eps_list[i]));
            ly2star.push_back(std::log(d2));
            lysemi.push_back(std::log(dsm));
        }
    }
    scan.psi_2star_rate = fit_line(lx, ly2star);
    scan.psi_seminorm_rate = fit_line(lx, lysemi);
    return scan;
}

BoundsReport m_bounds_check(double M_est, double S_star_est, const ProblemParams& params) {
    if (!(S_star_est > 0.0)) throw ParameterError("m_bounds_check: S_star_est must be positive");
    BoundsReport report;
    const double two_star = params.two_star();
    report.upper_bound =
        0.5 * std::pow(two_star, (params.N - 2.0 * params.s) / params.N) * S_star_est;
    report.lower_margin = M_est;
    report.upper_margin = 1.0 - M_est / report.upper_bound;
    if (!(M_est > 0.0)) {
        report.pass = false;
        report.message = "lower bound violated: M_est <= 0";
    } else if (!(M_est < report.upper_bound)) {
        report.pass = false;
        std::ostringstream msg;
        msg << "upper bound violated: M_est = " << M_est << " >= " << report.upper_bound;
        report.message = msg.str();
    } else {
        report.pass = true;
        std::ostringstream msg;
        msg << "0 < M_est < (1/2)(2*)^((N-2s)/N) S_star: margin " << report.upper_margin * 100.0
            << "%";
        report.message = msg.str();
    }
    return report;
}

} // namespace fracground
