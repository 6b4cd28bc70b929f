#ifndef FRACGROUND_TEST_FIXTURES_HPP
#define FRACGROUND_TEST_FIXTURES_HPP

// Shared converged solve used by the solver and identities test files. The
// parameter point has an O(1)-scale ground state that the grid resolves, so
// every dilation identity is certifiable on it.

#include "fracground/nonlinearity.hpp"
#include "fracground/solver.hpp"

namespace fixtures {

inline fracground::ProblemParams wellposed_params() {
    fracground::ProblemParams p;
    p.s = 0.5;
    p.N = 2;
    p.a = 1.0;
    p.b = 1.0;
    p.C = 5.0;
    p.q = 3.0;
    return p;
}

inline fracground::Grid wellposed_grid() { return fracground::make_grid(2, 512, 24.0); }

inline const fracground::GroundStateResult& converged_solve() {
    static const fracground::GroundStateResult result = [] {
        fracground::SolverConfig config;
        config.max_iterations = 3000;
        return fracground::solve_ground_state(wellposed_grid(),
                                              fracground::ModelNonlinearity(wellposed_params()),
                                              config);
    }();
    return result;
}

} // namespace fixtures

#endif
