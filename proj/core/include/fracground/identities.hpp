#ifndef FRACGROUND_IDENTITIES_HPP
#define FRACGROUND_IDENTITIES_HPP

#include <cstdint>
#include <vector>

#include "fracground/grid.hpp"
#include "fracground/nonlinearity.hpp"

namespace fracground {

/** Relative defect of ((N-2s)/2)[u]^2 = N integral G(u):
 * |lhs - rhs| / max(lhs, tiny); returns 0 for u == 0.
 */
double pohozaev_residual(const Field& u, const ModelNonlinearity& nl);

/** J(v) = 1/2 [v]^2 - (N/(N-2s)) integral G(v). Zeros of J form the
 * Nehari-Pohozaev set; least-energy solutions live there.
 */
double J_functional(const Field& u, const ModelNonlinearity& nl);

/** H(u) = ((N-2s)/2)[u]^2 - N integral G(u) = N I(u) - s [u]^2 = (N-2s) J(u). */
double H_functional(const Field& u, const ModelNonlinearity& nl);

/** Least energy from the constrained minimum:
 * m = (s/N) ((N-2s)/(2N))^((N-2s)/(2s)) (2M)^(N/(2s)). Requires M > 0.
 */
double least_energy_from_M(double M, const ProblemParams& params);

/** Samples along the dilation path gamma(t) = omega(./t). */
struct PathProfile {
    std::vector<double> t_samples;            // strictly increasing
    std::vector<double> energies_closed_form; // (t^(N-2s)/2)[w]^2 - t^N V(w)
    std::vector<double> energies_direct;      // I(dilate(w, t))
    std::vector<double> derivative_values;    // t^(N-2s-1)(1-t^(2s))((N-2s)/2)[w]^2
    std::vector<double> h_values;             // H(gamma(t)), closed form
    std::vector<double> hs_norms;             // ||gamma(t)||_{H^s}
    std::vector<bool> truncated;              // dilation truncation warnings
    double t_argmax = 0.0;                    // argmax of the direct energies
    double t_zero_H = 0.0;                    // interpolated root of H along the path
    double rho0 = 0.0;                        // geometry radius used for the crossing condition
    double seminorm_sq_omega = 0.0;
    double l2_sq_omega = 0.0;
    double potential_omega = 0.0;
};

PathProfile dilation_path_profile(const Field& omega, const ModelNonlinearity& nl, double t_max,
                                  int num_samples);

/** Mountain-pass geometry certificate of the energy I. */
struct GeometryEstimate {
    double rho = 0.0;       // radius of the uniform-positivity sphere
    double eta = 0.0;       // certified level: I >= eta on the rho-sphere
    double C_a = 0.0;       // fitted constant of G(t) <= -(a/4)t^2 + C_a |t|^{2*}
    double rho0 = 0.0;      // analogous radius for positivity of H
    int sample_count = 0;   // random fields tested on the rho-sphere
    int failures = 0;       // samples with I(u) < eta
    double min_I_on_sphere = 0.0;
};

/** Fit C_a by maximizing (G(t) + (a/4)t^2)/|t|^{2*} over t > 0; derive the
 * sphere radius rho and level eta from the resulting lower bound; test
 * sample_count random band-limited fields rescaled to the rho-sphere.
 */
GeometryEstimate mountain_pass_geometry(const ProblemParams& params, double S_star_est,
                                        int sample_count, std::uint64_t seed, const Grid& grid);

/** Root of H along the sampled path (piecewise-linear in t) subject to
 * ||gamma(t0)|| > rho0 on the far side of the crossing. Throws
 * CrossingError when no admissible sign change exists.
 */
double path_crossing_t0(const PathProfile& profile, double rho0);

} // namespace fracground

#endif
