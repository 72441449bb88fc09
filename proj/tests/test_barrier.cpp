#include "swell/barrier.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace swell;

TEST_CASE("unit disk barrier matches the closed form r^2/4 - r^4/16 - 3/16") {
    const double h = 0.05;
    const Grid grid = build_grid(Disk{{0.0, 0.0}, 1.0}, h);
    const BarrierResult res = solve_barrier(grid, ZeroBoundary{}, 1.0);

    CHECK(res.bound == 2.0 * res.sup_abs_phi);
    CHECK(res.sup_abs_phi == doctest::Approx(3.0 / 16.0).epsilon(0.02));
    CHECK(std::abs(res.sup_abs_phi - 3.0 / 16.0) < 10.0 * h * h);

    const int kc = grid.node_at(20, 20); // the origin
    REQUIRE(kc >= 0);
    CHECK(std::abs(res.phi[kc] - (-0.1875)) < 10.0 * h * h);

    // nodewise closed form
    double worst = 0.0;
    for (int k = 0; k < grid.interior_count(); ++k) {
        const GridNode& n = grid.node(k);
        const double r2 = n.x * n.x + n.y * n.y;
        worst = std::max(worst,
                         std::abs(res.phi[k] - (r2 / 4.0 - r2 * r2 / 16.0 - 3.0 / 16.0)));
    }
    CHECK(worst < 10.0 * h * h);
}

TEST_CASE("zero right-hand side returns the harmonic extension") {
    const Grid grid = build_grid(Disk{{0.0, 0.0}, 1.0}, 0.1);
    const Field zero = solve_poisson(grid, ZeroBoundary{}, [](double, double) { return 0.0; });
    CHECK(max_abs(zero) < 1e-11);

    // constant data: the harmonic extension is that constant, at every level.
    // The slack is the 1e-10 relative Krylov tolerance times the boundary
    // load scale (theta h^2 denominators), not machine epsilon.
    for (double h : {0.1, 0.05, 0.025}) {
        const Grid g = build_grid(Disk{{0.0, 0.0}, 1.0}, h);
        const Field c =
            solve_poisson(g, ConstantBoundary{2.5}, [](double, double) { return 0.0; });
        double worst = 0.0;
        for (int k = 0; k < g.interior_count(); ++k)
            worst = std::max(worst, std::abs(c[k] - 2.5));
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("barrier scales linearly in eps^-2") {
    const Grid grid = build_grid(Disk{{0.0, 0.0}, 1.0}, 0.1);
    const BarrierResult one = solve_barrier(grid, ZeroBoundary{}, 1.0);
    const BarrierResult half = solve_barrier(grid, ZeroBoundary{}, 0.5);
    for (int k = 0; k < grid.interior_count(); ++k)
        CHECK(half.phi[k] == doctest::Approx(4.0 * one.phi[k]).epsilon(1e-7));
    CHECK(half.sup_abs_phi == doctest::Approx(4.0 * one.sup_abs_phi).epsilon(1e-7));
}

TEST_CASE("maximum principle: one-signed right-hand side flips the field sign") {
    // rhs = 1 - r^2 >= 0 in the unit disk, g = 0 -> phi <= 0 everywhere
    const Grid grid = build_grid(Disk{{0.0, 0.0}, 1.0}, 0.1);
    const BarrierResult res = solve_barrier(grid, ZeroBoundary{}, 1.0);
    for (int k = 0; k < grid.interior_count(); ++k) CHECK(res.phi[k] <= 1e-13);
}

TEST_CASE("sup includes boundary data") {
    const Grid grid = build_grid(Disk{{0.0, 0.0}, 1.0}, 0.1);
    const BarrierResult res = solve_barrier(grid, ConstantBoundary{5.0}, 1.0);
    CHECK(res.sup_abs_phi >= 5.0);
}

TEST_CASE("check_lemma1 verdicts") {
    const Grid grid = build_grid(Disk{{0.0, 0.0}, 1.0}, 0.1);
    const BarrierResult barrier = solve_barrier(grid, ZeroBoundary{}, 1.0);

    const CheckVerdict ok = check_lemma1(Field(grid, 0.0), barrier, 0.1);
    CHECK(ok.pass);
    CHECK(ok.lhs == 0.0);
    CHECK(ok.rhs == barrier.bound);
    CHECK(ok.pass == (ok.lhs <= ok.rhs + ok.margin));

    const CheckVerdict bad =
        check_lemma1(Field(grid, 10.0 * (barrier.bound + 1.0)), barrier, 0.1);
    CHECK_FALSE(bad.pass);

    const Grid other = build_grid(Disk{{0.0, 0.0}, 1.0}, 0.2);
    CHECK(error_code_of([&] { check_lemma1(Field(other, 0.0), barrier, 0.1); }) ==
          ErrorCode::grid_mismatch);
}

TEST_CASE("default discretization tolerance is 10 h^2 / eps^2") {
    CHECK(default_tol_disc(1.0, 0.1) == doctest::Approx(0.1));
    CHECK(default_tol_disc(0.5, 0.1) == doctest::Approx(0.4));
    CHECK(default_tol_disc(2.0, 0.05) == doctest::Approx(0.00625));
}
