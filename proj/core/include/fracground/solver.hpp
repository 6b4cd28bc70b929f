#ifndef FRACGROUND_SOLVER_HPP
#define FRACGROUND_SOLVER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fracground/grid.hpp"
#include "fracground/nonlinearity.hpp"

namespace fracground {

enum class InitialGuess { Gaussian, Bubble, SnapshotFile };

struct StepRule {
    double initial_step = 0.0;          // 0 = auto (inverse of the largest multiplier + a)
    double shrink = 0.5;                // backtracking factor
    double growth = 1.5;                // step growth after an accepted step
    double sufficient_decrease = 1e-4;  // Armijo constant
    double min_step_factor = 1e-12;     // stall threshold relative to the auto step
};

struct SolverConfig {
    int max_iterations = 3000;
    double gradient_tolerance = 1e-2;  // relative EL residual of the post-Phi field
    StepRule step;
    int rearrangement_period = 10;  // 0 disables the rearrangement schedule
    int projection_period = 25;     // dilation re-projection cadence
    int residual_check_period = 10; // post-Phi residual evaluation cadence
    InitialGuess initial_guess = InitialGuess::Gaussian;
    double gaussian_width = 1.0;
    double bubble_eps = 0.25;
    std::string snapshot_path;
    std::uint64_t random_seed = 42;
    int multistart = 1;  // solves with jittered initial widths; lowest energy wins
};

struct RearrangementEvent {
    int iteration = 0;
    double T_before = 0.0;
    double T_after = 0.0;
    bool accepted = false;
};

struct MinimizeResult {
    Field u_min;
    double M = 0.0;
    int iterations = 0;
    bool converged = false;
    double mu_last = 0.0;            // Lagrange multiplier estimate at exit
    double el_rel_residual = 0.0;    // post-Phi EL residual at exit
    std::vector<double> T_history;   // recorded after each full cycle
    std::vector<RearrangementEvent> rearrangement_log;
};

struct GroundStateResult {
    Field u_min;
    double M = 0.0;
    Field omega;
    double m_direct = 0.0;   // I(omega)
    double m_formula = 0.0;  // least_energy_from_M(M)
    double tau = 0.0;
    double pohozaev_rel_residual = 0.0;
    double el_rel_residual = 0.0;
    double mu_omega = 0.0;  // <A omega, g(omega)> / ||g(omega)||^2, ~1 at a solution
    int iterations = 0;
    bool converged = false;
    double v_constraint_error = 0.0;  // |V(u_min) - 1|
    double tail_mass_u_min = 0.0;
    double tail_mass_omega = 0.0;
    // reported uncertainty of M: M * (el^2 + |V-1| + tail mass)
    double m_uncertainty = 0.0;
    std::vector<double> T_history;
    std::vector<RearrangementEvent> rearrangement_log;
};

/** Dilate u so that V = 1: sigma = V(u)^(-1/N), refined up to 3 times.
 * Throws InfeasibleError when V(u) <= 0.
 */
Field project_to_constraint(const Field& u, const ModelNonlinearity& nl);

/** Rescale u in amplitude so that V = 1 (scalar Newton, exact on the grid).
 * Returns false when no admissible amplitude is found.
 */
bool amplitude_project(Field& u, const ModelNonlinearity& nl);

/** Scale u by powers of two until V(t*u) > 0, then bisect t until
 * V is within [0.5, 2] so the subsequent dilation is mild.
 */
Field amplitude_tune(const Field& u, const ModelNonlinearity& nl);

/** Minimize T over {V = 1} by tangent-projected gradient descent:
 * d = -(A u - mu g(u)) with mu = <A u, g(u)> / ||g(u)||^2, backtracking line
 * search on T of the re-projected iterate, and a periodic
 * symmetric-decreasing rearrangement accepted only if T does not increase.
 */
MinimizeResult minimize_M(const Grid& grid, const ModelNonlinearity& nl, const SolverConfig& config);

struct PhiResult {
    Field omega;
    double tau = 0.0;
};

/** Phi(v) = v(./tau) with tau = ((N-2s)/(2N))^(1/(2s)) [v]^(1/s); maps the
 * constrained minimizer to a zero of J, where the EL equation holds with
 * unit coefficient.
 */
PhiResult phi_map(const Field& v, double s, int N);

/** minimize_M followed by phi_map and the identity diagnostics. */
GroundStateResult solve_ground_state(const Grid& grid, const ModelNonlinearity& nl,
                                     const SolverConfig& config);

} // namespace fracground

#endif
