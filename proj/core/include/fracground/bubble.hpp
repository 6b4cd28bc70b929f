#ifndef FRACGROUND_BUBBLE_HPP
#define FRACGROUND_BUBBLE_HPP

#include <string>
#include <vector>

#include "fracground/grid.hpp"
#include "fracground/nonlinearity.hpp"

namespace fracground {

/** U_eps(x) = kappa eps^((N-2s)/2) / (eps^2 + |x|^2)^((N-2s)/2), the extremal
 * profile of the fractional Sobolev inequality, concentrating as eps -> 0.
 */
Field talenti_bubble(const Grid& grid, double s, double eps, double kappa);

/** Radial cutoff: 1 on [0,1], smooth monotone decay on (1,2), 0 on [2,inf). */
double bubble_cutoff_eta(double r);

/** psi_eps = eta(|x|) U_eps(x). Requires half_length >= 2.5. */
Field cutoff_bubble(const Grid& grid, double s, double eps, double kappa);

/** v_eps = psi_eps / ||psi_eps||_{L^{2*}}. */
Field normalized_bubble(const Grid& grid, double s, double eps, double kappa, double two_star);

/** Gamma_eps = (C/q) ||v||_q^q - (a/2) ||v||_2^2. */
double gamma_eps(const Field& v_eps, const ProblemParams& params);

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_ci = 0.0;  // ~2 sigma half-width; 0 when under-determined
    int points = 0;
};

struct BubbleScanResult {
    std::vector<double> epsilons;         // strictly decreasing
    std::vector<double> psi_2star_norms;  // ||psi_eps||^{2*}_{L^{2*}}
    std::vector<double> psi_seminorms;    // [psi_eps]^2
    std::vector<double> gamma_values;     // Gamma_eps
    std::vector<double> gamma_scaled;     // Gamma_eps / eps^{N-2s}
    std::vector<double> V_of_v_eps;       // V(v_eps)
    double S_star_estimate = 0.0;         // Richardson limit of [v_eps]^2
    RateFit psi_2star_rate;               // log-log deficit slope, expected ~ N
    RateFit psi_seminorm_rate;            // log-log deficit slope, expected ~ N-2s
    // largest scanned eps with V(v_eps) >= 1/2*, or 0 when none qualifies;
    // an empirical stand-in for the threshold below which the potential
    // constraint becomes reachable along the bubble family
    double first_eps_with_V_bound = 0.0;
};

/** Sweep the bubble family over eps_list (sorted into decreasing order).
 * Every eps must be resolvable: eps >= h. kappa is taken as 1; all scanned
 * quantities are either kappa-homogeneous of degree 0 or normalized.
 */
BubbleScanResult bubble_scan(const ProblemParams& params, const Grid& grid,
                             std::vector<double> eps_list);

struct BoundsReport {
    bool pass = false;
    double upper_bound = 0.0;   // (1/2) (2*)^((N-2s)/N) S_star
    double lower_margin = 0.0;  // M_est (distance above 0)
    double upper_margin = 0.0;  // 1 - M_est / upper_bound
    std::string message;
};

/** Check 0 < M_est < (1/2)(2*)^((N-2s)/N) S_star_est. */
BoundsReport m_bounds_check(double M_est, double S_star_est, const ProblemParams& params);

} // namespace fracground

#endif
