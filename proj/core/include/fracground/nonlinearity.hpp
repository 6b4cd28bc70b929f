#ifndef FRACGROUND_NONLINEARITY_HPP
#define FRACGROUND_NONLINEARITY_HPP

#include <algorithm>

#include "fracground/grid.hpp"

namespace fracground {

/** Physical and analytic parameters of the problem (-Delta)^s u = g(u). */
struct ProblemParams {
    double s = 0.5;  // fractional order, in (0,1)
    int N = 2;       // spatial dimension, must exceed 2s
    double a = 1.0;  // mass coefficient (g'(0) = -a)
    double b = 1.0;  // critical coefficient
    double C = 1.0;  // subcritical coefficient
    double q = 3.0;  // subcritical exponent

    /** Critical exponent 2N/(N - 2s). */
    double two_star() const { return 2.0 * N / (N - 2.0 * s); }

    /** Lower admissible bound for q: max{2, 4s/(N-2s)}. */
    double q_lower_bound() const { return std::max(2.0, 4.0 * s / (N - 2.0 * s)); }
};

/** Throws ParameterError with a description of every violated constraint. */
void validate_params(const ProblemParams& p);

/** The model nonlinearity
 *   g(t) = b|t|^(2*-2) t - a t + C|t|^(q-2) t,
 * the minimal odd function with critical growth b at infinity, slope -a at
 * zero, and the subcritical lower-bound term with equality. G is its even
 * primitive with G(0) = 0; f and F isolate the subcritical part:
 * f(t) = C|t|^(q-2) t, F(t) = (C/q)|t|^q.
 */
class ModelNonlinearity {
  public:
    explicit ModelNonlinearity(const ProblemParams& p);

    double g(double t) const;
    double G(double t) const;
    double f(double t) const;
    double F(double t) const;

    const ProblemParams& params() const { return params_; }

  private:
    ProblemParams params_;
    double two_star_;
};

/** Pointwise image g(u). */
Field apply_g(const Field& u, const ModelNonlinearity& nl);

/** V(u) = h^N sum G(u_j). */
double potential_energy(const Field& u, const ModelNonlinearity& nl);

/** I(u) = T(u) - V(u) with T from the spectral seminorm at s = params.s. */
double energy(const Field& u, const ModelNonlinearity& nl);

struct ResidualInfo {
    Field residual;     // (-Delta)^s u - g(u)
    double rel_l2 = 0;  // ||residual||_2 / max(||g(u)||_2, tiny)
};

ResidualInfo euler_lagrange_residual(const Field& u, const ModelNonlinearity& nl);

} // namespace fracground

#endif
