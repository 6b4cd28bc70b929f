#ifndef FRACGROUND_FOURIER_HPP
#define FRACGROUND_FOURIER_HPP

#include <random>

#include "fracground/grid.hpp"

namespace fracground {

/** Apply (-Delta)^s through the Fourier multiplier |xi|^(2s).
 *
 * The multiplier is exactly 0 at xi = 0, so constants are annihilated. The
 * operator is linear and self-adjoint for the discrete L2 inner product.
 * Requires 0 < s < 1.
 */
Field apply_fractional_laplacian(const Field& u, double s);

/** Squared H^s seminorm in the spectral convention:
 * [u]^2 = (h^N / n^N) sum_k |xi_k|^(2s) |FFT(u)_k|^2,
 * which equals inner(apply_fractional_laplacian(u, s), u).
 */
double seminorm_sq_spectral(const Field& u, double s);

/** Squared Gagliardo seminorm by direct double quadrature:
 * h^(2N) sum_{j != k} (u_j - u_k)^2 / dist(x_j, x_k)^(N + 2s)
 * with the minimal-image torus distance and the diagonal excluded.
 * O(n^(2N)); guarded to n^N <= 4096 points.
 */
double seminorm_sq_direct(const Field& u, double s);

/** Ratio of the direct-quadrature seminorm to the spectral one on a
 * reference Gaussian; links the two conventions numerically.
 */
struct NormalizationCalibration {
    int dim = 0;
    double s = 0.0;
    double c_ratio = 0.0;
};

NormalizationCalibration calibrate_normalization(int dim, double s, const Grid& grid,
                                                 double gaussian_width = 1.5);

/** ((-Delta)^s + shift)^(-1) u through the multiplier 1/(|xi|^(2s) + shift).
 * Requires shift > 0.
 */
Field apply_shifted_inverse(const Field& u, double s, double shift);

/** T(u) = 1/2 [u]^2 in the spectral convention. */
double kinetic_energy(const Field& u, double s);

/** [u]^2 + ||u||_2^2, the squared H^s norm. */
double hs_norm_sq(const Field& u, double s);

/** Zero all Fourier modes with any axis index |k| > kmax. */
Field band_limit(const Field& u, int kmax);

/** Deterministic band-limited random field: Gaussian coefficients on modes
 * with |k|_inf <= kmax, damped by 1/(1 + |k|^2). Mean zero (no DC mode).
 */
Field random_band_limited(const Grid& grid, int kmax, std::mt19937_64& rng);

} // namespace fracground

#endif
