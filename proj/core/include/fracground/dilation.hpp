#ifndef FRACGROUND_DILATION_HPP
#define FRACGROUND_DILATION_HPP

#include "fracground/grid.hpp"

namespace fracground {

struct DilationDiagnostics {
    double tail_fraction_input = 0.0;   // |u|^2 fraction outside |x|_inf <= L/2 before dilation
    double tail_fraction_output = 0.0;  // same, after dilation
    bool truncation_warning = false;
};

/** u_sigma(x) = u(x/sigma) via band-limited (trigonometric) resampling on the
 * same grid. sigma = 1 returns u exactly. If the output's tail mass beyond
 * L/2 exceeds tail_warn_threshold, diag->truncation_warning is set.
 */
Field dilate(const Field& u, double sigma, DilationDiagnostics* diag = nullptr,
             double tail_warn_threshold = 1e-6);

} // namespace fracground

#endif
