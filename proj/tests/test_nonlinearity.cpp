#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "fracground/dilation.hpp"
#include "fracground/fourier.hpp"
#include "fracground/identities.hpp"
#include "fracground/nonlinearity.hpp"

using namespace fracground;

namespace {

ProblemParams standard_params() {
    ProblemParams p;
    p.s = 0.5;
    p.N = 2;
    p.a = p.b = p.C = 1.0;
    p.q = 3.0;
    return p;
}

} // namespace

TEST_CASE("validate_params window") {
    ProblemParams p = standard_params();
    CHECK_NOTHROW(validate_params(p)); // two_star = 4, window (2, 4)
    CHECK(p.two_star() == doctest::Approx(4.0));
    CHECK(p.q_lower_bound() == doctest::Approx(2.0));

    p.q = 2.0;
    CHECK_THROWS_AS(validate_params(p), ParameterError); // boundary excluded

    // s = 0.75, N = 3: two_star = 6/1.5 = 4, lower bound max{2, 3/1.5} = 2
    ProblemParams r;
    r.s = 0.75;
    r.N = 3;
    r.q = 3.9;
    CHECK(r.two_star() == doctest::Approx(4.0));
    CHECK_NOTHROW(validate_params(r));

    ProblemParams bad = standard_params();
    bad.a = -1.0;
    CHECK_THROWS_AS(validate_params(bad), ParameterError);
    bad = standard_params();
    bad.s = 1.5;
    CHECK_THROWS_AS(validate_params(bad), ParameterError);
    bad = standard_params();
    bad.N = 1;
    bad.s = 0.6; // N < 2s
    CHECK_THROWS_AS(validate_params(bad), ParameterError);
}

TEST_CASE("g and G evaluators") {
    ModelNonlinearity nl(standard_params());
    CHECK(nl.g(0.0) == 0.0);
    CHECK(nl.G(0.0) == 0.0);
    // G(1) = 1/4 - 1/2 + 1/3 = 1/12
    CHECK(nl.G(1.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int i = 0; i < 50; ++i) {
        const double t = dist(rng);
        CHECK(nl.g(-t) == -nl.g(t)); // exact oddness
        CHECK(nl.G(-t) == nl.G(t));  // exact evenness
    }
}

TEST_CASE("G' = g by central differences") {
    ModelNonlinearity nl(standard_params());
    for (double t : {0.3, 1.0, 2.5}) {
        const double h = 1e-6;
        const double fd = (nl.G(t + h) - nl.G(t - h)) / (2.0 * h);
        CHECK(fd == doctest::Approx(nl.g(t)).epsilon(1e-8));
    }
}

TEST_CASE("f and F isolate the subcritical part") {
    ProblemParams p = standard_params();
    ModelNonlinearity nl(p);
    CHECK(nl.f(1.0) == doctest::Approx(1.0));        // C t^{q-1} at t = 1
    CHECK(nl.F(2.0) == doctest::Approx(8.0 / 3.0));  // (C/q) t^q

    // model identity: f(t) = g(t) - b t^{2*-1} + a t, exact to round-off
    for (double t : {0.1, 0.7, 1.3, 4.0}) {
        const double lhs = nl.g(t) - p.b * std::pow(t, p.two_star() - 1.0) + p.a * t;
        CHECK(lhs == doctest::Approx(nl.f(t)).epsilon(1e-13));
        CHECK(nl.f(t) == doctest::Approx(p.C * std::pow(t, p.q - 1.0)).epsilon(1e-14));
    }

    // F(t)/t^2 -> 0 at zero and F(t)/t^{2*} -> 0 at infinity (both ~ C t^{q-2}
    // in the respective limits for the model)
    CHECK(nl.F(1e-6) / 1e-12 == doctest::Approx(1e-6 / 3.0).epsilon(1e-10));
    CHECK(nl.F(1e6) / std::pow(1e6, 4.0) == doctest::Approx(1e-6 / 3.0).epsilon(1e-10));
}

TEST_CASE("potential energy") {
    ModelNonlinearity nl(standard_params());
    Grid g = make_grid(2, 64, 12.0);
    Field zero(g);
    CHECK(potential_energy(zero, nl) == 0.0);

    // small amplitudes: the -a/2 t^2 term dominates, V < 0
    Field small = sample(g, [](const std::array<double, 3>& x) {
        return 0.01 * std::exp(-(x[0] * x[0] + x[1] * x[1]));
    });
    CHECK(potential_energy(small, nl) < 0.0);
}

TEST_CASE("potential scaling under dilation") {
    ModelNonlinearity nl(standard_params());
    Grid g = make_grid(2, 128, 12.0);
    Field u = sample(g, [](const std::array<double, 3>& x) {
        const double r2 = x[0] * x[0] + x[1] * x[1];
        return 1.2 * std::exp(-r2);
    });
    u = band_limit(u, g.n / 8);
    const double V = potential_energy(u, nl);
    for (double sigma : {0.5, 2.0}) {
        const double Vs = potential_energy(dilate(u, sigma), nl);
        CHECK(Vs / V == doctest::Approx(sigma * sigma).epsilon(1e-3));
    }
}

TEST_CASE("projection example from the dilation law") {
    // V(u) = 0.5 in 2D: dilating by sigma = 0.5^{-1/2} gives V = 1
    ModelNonlinearity nl(standard_params());
    Grid g = make_grid(2, 128, 12.0);
    Field u = sample(g, [](const std::array<double, 3>& x) {
        const double r2 = x[0] * x[0] + x[1] * x[1];
        return 2.0 * std::exp(-r2);
    });
    // amplitude-tune to V = 0.5 by bisection in the amplitude
    double lo = 0.5, hi = 1.5;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        Field w = u;
        scale(w, mid);
        (potential_energy(w, nl) < 0.5 ? lo : hi) = mid;
    }
    scale(u, 0.5 * (lo + hi));
    CHECK(potential_energy(u, nl) == doctest::Approx(0.5).epsilon(1e-6));

    Field v = dilate(u, std::pow(0.5, -0.5));
    CHECK(potential_energy(v, nl) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("energy and residual on the zero field") {
    ModelNonlinearity nl(standard_params());
    Grid g = make_grid(2, 32, 8.0);
    Field zero(g);
    CHECK(energy(zero, nl) == 0.0);
    ResidualInfo info = euler_lagrange_residual(zero, nl);
    CHECK(max_abs(info.residual) == 0.0);
}

TEST_CASE("gradient consistency with Richardson order check") {
    ModelNonlinearity nl(standard_params());
    Grid g = make_grid(2, 32, 8.0);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 3; ++trial) {
        Field u = random_band_limited(g, 5, rng);
        scale(u, 0.5 / std::max(max_abs(u), 1e-12));
        Field phi = random_band_limited(g, 5, rng);
        scale(phi, 0.05 / std::max(max_abs(phi), 1e-12));

        const Field r = euler_lagrange_residual(u, nl).residual;
        const double directional = inner(r, phi);

        // error bound at the stated tau values
        for (double tau : {1e-3, 1e-4}) {
            Field up = u, um = u;
            axpy(tau, phi, up);
            axpy(-tau, phi, um);
            const double fd = (energy(up, nl) - energy(um, nl)) / (2.0 * tau);
            const double err = std::fabs(fd - directional);
            const double scale_est = std::max({1.0, std::fabs(energy(u, nl)),
                                               std::fabs(directional)});
            CHECK(err <= 10.0 * tau * tau * scale_est);
        }
        // Richardson order from larger taus, where the tau^2 term clears the
        // round-off floor of the energy differences
        double err2 = 0.0, err3 = 0.0;
        for (double tau : {1e-2, 1e-3}) {
            Field up = u, um = u;
            axpy(tau, phi, up);
            axpy(-tau, phi, um);
            const double fd = (energy(up, nl) - energy(um, nl)) / (2.0 * tau);
            (tau == 1e-2 ? err2 : err3) = std::fabs(fd - directional);
        }
        if (err3 > 1e-12) {
            const double order = std::log(err2 / err3) / std::log(10.0);
            CHECK(order > 1.6);
            CHECK(order < 2.4);
        }
    }
}

TEST_CASE("(g4) lower bound holds with equality for the model") {
    ProblemParams p = standard_params();
    ModelNonlinearity nl(p);
    for (double lt = -6.0; lt <= 3.0; lt += 0.1) {
        const double t = std::pow(10.0, lt);
        const double lhs = nl.g(t) - p.b * std::pow(t, p.two_star() - 1.0) + p.a * t;
        const double rhs = p.C * std::pow(t, p.q - 1.0);
        // cancellation floor: lhs subtracts terms of size a*t and b*t^{2*-1}
        const double floor_abs =
            8.0 * std::numeric_limits<double>::epsilon() *
            (p.a * t + p.b * std::pow(t, p.two_star() - 1.0) + std::fabs(nl.g(t)));
        CHECK(lhs >= rhs - 1e-12 * rhs - floor_abs);
        CHECK(lhs <= rhs + 1e-12 * rhs + floor_abs);
    }
}

TEST_CASE("(Gt) bound with the fitted constant") {
    ProblemParams p = standard_params();
    ModelNonlinearity nl(p);
    Grid g = make_grid(2, 32, 8.0);
    GeometryEstimate est = mountain_pass_geometry(p, 1.7, 0, 11, g);
    for (double lt = -6.0; lt <= 3.0; lt += 0.05) {
        const double t = std::pow(10.0, lt);
        const double bound = -0.25 * p.a * t * t + est.C_a * std::pow(t, p.two_star());
        CHECK(nl.G(t) <= bound + 1e-12 * std::max(1.0, std::fabs(bound)));
    }
}
