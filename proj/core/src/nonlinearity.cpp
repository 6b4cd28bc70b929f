#include "fracground/nonlinearity.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fracground/fourier.hpp"

namespace fracground {

namespace {

// |t|^p with a fast path for the small integer exponents that dominate the
// solver inner loop (2* - 2 = 2 and q - 2 = 1 for the default parameters).
inline double abs_pow(double t, double p) {
    const double at = std::fabs(t);
    if (p == 1.0) return at;
    if (p == 2.0) return at * at;
    if (p == 3.0) return at * at * at;
    if (p == 4.0) return at * at * at * at;
    return std::pow(at, p);
}

} // namespace

void validate_params(const ProblemParams& p) {
    std::ostringstream bad;
    if (!(p.s > 0.0 && p.s < 1.0)) bad << "s must lie in (0,1); ";
    if (p.N < 1 || p.N > 3) bad << "N must be 1, 2 or 3; ";
    if (p.N >= 1 && p.N <= 3 && p.s > 0.0 && p.s < 1.0 && !(p.N > 2.0 * p.s))
        bad << "N > 2s is required; ";
    if (!(p.a > 0.0)) bad << "a must be positive; ";
    if (!(p.b > 0.0)) bad << "b must be positive; ";
    if (!(p.C > 0.0)) bad << "C must be positive; ";
    if (p.s > 0.0 && p.s < 1.0 && p.N > 2.0 * p.s) {
        const double lo = p.q_lower_bound();
        const double hi = p.two_star();
        if (!(p.q > lo && p.q < hi))
            bad << "q must satisfy max{2, 4s/(N-2s)} = " << lo << " < q < 2N/(N-2s) = " << hi
                << " (got q = " << p.q << "); ";
    }
    const std::string msg = bad.str();
    if (!msg.empty()) throw ParameterError("invalid problem parameters: " + msg);
}

ModelNonlinearity::ModelNonlinearity(const ProblemParams& p) : params_(p) {
    validate_params(p);
    two_star_ = p.two_star();
}

double ModelNonlinearity::g(double t) const {
    if (t == 0.0) return 0.0;
    const double sign = t > 0.0 ? 1.0 : -1.0;
    return sign * (params_.b * abs_pow(t, two_star_ - 1.0) - params_.a * std::fabs(t) +
                   params_.C * abs_pow(t, params_.q - 1.0));
}

double ModelNonlinearity::G(double t) const {
    return params_.b / two_star_ * abs_pow(t, two_star_) - 0.5 * params_.a * t * t +
           params_.C / params_.q * abs_pow(t, params_.q);
}

double ModelNonlinearity::f(double t) const {
    if (t == 0.0) return 0.0;
    const double sign = t > 0.0 ? 1.0 : -1.0;
    return sign * params_.C * abs_pow(t, params_.q - 1.0);
}

double ModelNonlinearity::F(double t) const { return params_.C / params_.q * abs_pow(t, params_.q); }

Field apply_g(const Field& u, const ModelNonlinearity& nl) {
    Field out(u.grid);
    for (std::size_t i = 0; i < u.values.size(); ++i) out.values[i] = nl.g(u.values[i]);
    return out;
}

double potential_energy(const Field& u, const ModelNonlinearity& nl) {
    const double hN = std::pow(u.grid.spacing, u.grid.dim);
    double acc = 0.0;
    for (double v : u.values) acc += nl.G(v);
    return hN * acc;
}

double energy(const Field& u, const ModelNonlinearity& nl) {
    return kinetic_energy(u, nl.params().s) - potential_energy(u, nl);
}

ResidualInfo euler_lagrange_residual(const Field& u, const ModelNonlinearity& nl) {
    ResidualInfo info;
    info.residual = apply_fractional_laplacian(u, nl.params().s);
    double gu_sq = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double gv = nl.g(u.values[i]);
        info.residual.values[i] -= gv;
        gu_sq += gv * gv;
    }
    const double hN = std::pow(u.grid.spacing, u.grid.dim);
    const double gu_norm = std::sqrt(hN * gu_sq);
    const double res_norm = std::sqrt(l2_norm_sq(info.residual));
    info.rel_l2 = res_norm / std::max(gu_norm, std::numeric_limits<double>::min());
    return info;
}

} // namespace fracground
