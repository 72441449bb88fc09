#include "swell/sparse.hpp"

#include "swell/dense.hpp"
#include "swell/krylov.hpp"
#include "swell/semilinear.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace swell;

namespace {

double norm_inf_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

double norm_inf(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

SparseMatrix identity(int n) {
    std::vector<Triplet> trips;
    for (int i = 0; i < n; ++i) trips.push_back({i, i, 1.0});
    return SparseMatrix::from_triplets(n, std::move(trips));
}

// Random strictly diagonally dominant system; symmetric ones are SPD.
SparseMatrix random_dominant(int n, bool symmetric, std::mt19937& rng) {
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<Triplet> trips;
    std::vector<double> rowsum(n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int e = 0; e < 3; ++e) {
            const int j = pick(rng);
            if (j == i) continue;
            const double v = 0.5 * val(rng);
            trips.push_back({i, j, v});
            rowsum[i] += std::abs(v);
            if (symmetric) {
                trips.push_back({j, i, v});
                rowsum[j] += std::abs(v);
            }
        }
    }
    for (int i = 0; i < n; ++i)
        trips.push_back({i, i, rowsum[i] + 1.0 + 0.5 * val(rng)});
    return SparseMatrix::from_triplets(n, std::move(trips));
}

// 5-point Laplacian on an m x m grid of unknowns, negated so it is SPD.
SparseMatrix neg_laplacian_block(int m) {
    std::vector<Triplet> trips;
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) {
            const int k = j * m + i;
            trips.push_back({k, k, 4.0});
            if (i > 0) trips.push_back({k, k - 1, -1.0});
            if (i + 1 < m) trips.push_back({k, k + 1, -1.0});
            if (j > 0) trips.push_back({k, k - m, -1.0});
            if (j + 1 < m) trips.push_back({k, k + m, -1.0});
        }
    return SparseMatrix::from_triplets(m * m, std::move(trips));
}

} // namespace

TEST_CASE("from_triplets sorts, deduplicates, and validates") {
    const SparseMatrix a = SparseMatrix::from_triplets(
        3, {{2, 1, 4.0}, {0, 0, 1.0}, {2, 1, -1.5}, {1, 2, 2.0}, {0, 2, 3.0}});
    CHECK(a.size() == 3);
    CHECK(a.row_offsets() == std::vector<int>{0, 2, 3, 4});
    CHECK(a.col_indices() == std::vector<int>{0, 2, 2, 1});
    CHECK(a.values() == std::vector<double>{1.0, 3.0, 2.0, 2.5});

    CHECK(error_code_of([] { SparseMatrix::from_triplets(2, {{2, 0, 1.0}}); }) ==
          ErrorCode::dimension_mismatch);
    CHECK(error_code_of([] { SparseMatrix::from_triplets(2, {{0, -1, 1.0}}); }) ==
          ErrorCode::dimension_mismatch);
}

TEST_CASE("spmv basics") {
    // identity
    const std::vector<double> x{3.0, -1.0, 0.5};
    CHECK(spmv(identity(3), x) == x);

    // [[4,1],[1,3]] * [1,1] = [5,4]
    const SparseMatrix a =
        SparseMatrix::from_triplets(2, {{0, 0, 4.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 3.0}});
    CHECK(spmv(a, std::vector<double>{1.0, 1.0}) == std::vector<double>{5.0, 4.0});

    std::vector<double> wrong(3, 0.0);
    CHECK(error_code_of([&] { spmv(a, wrong); }) == ErrorCode::dimension_mismatch);
}

TEST_CASE("spmv agrees with the dense product on a random 50x50") {
    std::mt19937 rng(123u);
    const int n = 50;
    const SparseMatrix a = random_dominant(n, false, rng);
    const std::vector<double> dense = a.to_dense();
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::vector<double> x(n);
    for (double& v : x) v = val(rng);

    const std::vector<double> y = spmv(a, x);
    double scale = 0.0;
    for (double v : y) scale = std::max(scale, std::abs(v));
    for (int i = 0; i < n; ++i) {
        double want = 0.0;
        for (int j = 0; j < n; ++j) want += dense[i * n + j] * x[j];
        CHECK(std::abs(y[i] - want) <= 1e-14 * std::max(scale, 1.0));
    }
}

TEST_CASE("CG on the identity converges in one iteration") {
    const std::vector<double> b{2.0, -3.0, 0.25, 7.0};
    const LinearSolveResult res = solve_cg(identity(4), b, 1e-12, 10, Preconditioner::none);
    CHECK(res.x == b);
    CHECK(res.stats.iterations <= 1);
}

TEST_CASE("CG solves [[4,1],[1,3]] x = [1,2]") {
    const SparseMatrix a =
        SparseMatrix::from_triplets(2, {{0, 0, 4.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 3.0}});
    const LinearSolveResult res =
        solve_cg(a, std::vector<double>{1.0, 2.0}, 1e-12, 50, Preconditioner::none);
    CHECK(res.x[0] == doctest::Approx(1.0 / 11.0).epsilon(1e-10));
    CHECK(res.x[1] == doctest::Approx(7.0 / 11.0).epsilon(1e-10));
    CHECK(res.stats.iterations <= 2); // exact in n steps
    CHECK(res.stats.final_relative_residual <= 1e-12);
    CHECK(res.stats.residual_history.front() == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("CG matches dense LU on the 16x16 five-point Laplacian block") {
    const SparseMatrix a = neg_laplacian_block(16);
    const std::vector<double> b(a.size(), 1.0);
    const std::vector<double> x = solve_cg(a, b, 1e-12, 5000, Preconditioner::none).x;
    const std::vector<double> ref = dense_solve(a, b);
    CHECK(norm_inf_diff(x, ref) <= 1e-10 * std::max(1.0, norm_inf(ref)));
}

TEST_CASE("BiCGSTAB basics") {
    const std::vector<double> b{1.5, 0.0, -2.0};
    CHECK(solve_bicgstab(identity(3), b, 1e-12, 10, Preconditioner::none).x == b);

    const SparseMatrix a =
        SparseMatrix::from_triplets(2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 1, 1.0}});
    const LinearSolveResult res =
        solve_bicgstab(a, std::vector<double>{3.0, 1.0}, 1e-12, 50, Preconditioner::none);
    CHECK(res.x[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(res.x[1] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("BiCGSTAB matches dense LU on a Shortley-Weller Jacobian") {
    const Grid grid = build_grid(Disk{{0.0, 0.0}, 1.0}, 0.1);
    const Stencil lap = assemble_laplacian(grid);
    Field u(grid);
    for (int k = 0; k < grid.interior_count(); ++k)
        u[k] = -0.1 - 0.05 * std::sin(3.0 * grid.node(k).x);
    SparseMatrix jac = jacobian(lap, u, 1.0, 1.0);

    std::vector<double> b(grid.interior_count());
    for (std::size_t k = 0; k < b.size(); ++k) b[k] = std::sin(0.37 * double(k));
    const std::vector<double> x =
        solve_bicgstab(jac, b, 1e-12, 20 * jac.size(), Preconditioner::jacobi).x;
    const std::vector<double> ref = dense_solve(jac, b);
    CHECK(norm_inf_diff(x, ref) <= 1e-8 * std::max(1.0, norm_inf(ref)));
}

TEST_CASE("Krylov solutions match dense LU on random dominant systems") {
    std::mt19937 rng(777u);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    for (const bool symmetric : {true, false}) {
        const int n = 160;
        const SparseMatrix a = random_dominant(n, symmetric, rng);
        std::vector<double> b(n);
        for (double& v : b) v = val(rng);

        const std::vector<double> x =
            symmetric ? solve_cg(a, b, 1e-12, 20 * n, Preconditioner::jacobi).x
                      : solve_bicgstab(a, b, 1e-12, 20 * n, Preconditioner::jacobi).x;
        const std::vector<double> ref = dense_solve(a, b);
        CHECK(norm_inf_diff(x, ref) <= 1e-9 * std::max(1.0, norm_inf(ref)));
    }
}

TEST_CASE("CG decreases the error A-norm; the recorded history matches a replica") {
    // The residual 2-norm is not monotone for CG (the 12x12 Laplacian with a
    // generic rhs already shows bumps): CG minimizes the error A-norm.
    // Track that norm in a replica against the dense solution and pin the
    // recorded residual history to the replica's.
    std::mt19937 rng(31u);
    const SparseMatrix a = random_dominant(90, true, rng);
    const int n = a.size();
    std::vector<double> b(n);
    for (int k = 0; k < n; ++k) b[k] = std::sin(1.7 * k) + 0.2;
    const std::vector<double> xstar = dense_solve(a, b);

    const auto dot = [](const std::vector<double>& u, const std::vector<double>& v) {
        double s = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) s += u[k] * v[k];
        return s;
    };
    const auto err_a_norm = [&](const std::vector<double>& x) {
        std::vector<double> e(n);
        for (int k = 0; k < n; ++k) e[k] = x[k] - xstar[k];
        return std::sqrt(dot(e, spmv(a, e)));
    };

    const double tol = 1e-11;
    std::vector<double> x(n, 0.0), r = b, p = b;
    double rr = dot(r, r);
    const double bnorm = std::sqrt(rr);
    std::vector<double> rhist{bnorm}, ehist{err_a_norm(x)};
    while (std::sqrt(rr) > tol * bnorm) {
        const std::vector<double> ap = spmv(a, p);
        const double alpha = rr / dot(p, ap);
        for (int k = 0; k < n; ++k) x[k] += alpha * p[k];
        for (int k = 0; k < n; ++k) r[k] -= alpha * ap[k];
        const double rr_next = dot(r, r);
        rhist.push_back(std::sqrt(rr_next));
        ehist.push_back(err_a_norm(x));
        const double beta = rr_next / rr;
        rr = rr_next;
        for (int k = 0; k < n; ++k) p[k] = r[k] + beta * p[k];
    }
    REQUIRE(ehist.size() >= 3);
    for (std::size_t k = 1; k < ehist.size(); ++k)
        if (ehist[k - 1] > 1e-9 * ehist[0]) // above the rounding floor
            CHECK(ehist[k] <= ehist[k - 1] * (1.0 + 1e-6));

    const auto hist = solve_cg(a, b, tol, 5000, Preconditioner::none).stats.residual_history;
    REQUIRE(hist.size() == rhist.size());
    for (std::size_t k = 0; k < hist.size(); ++k)
        CHECK(hist[k] == doctest::Approx(rhist[k]).epsilon(1e-8));
}

TEST_CASE("CG history brackets the run on general SPD systems") {
    std::mt19937 rng(31u);
    const SparseMatrix a = random_dominant(90, true, rng);
    std::vector<double> b(a.size());
    for (int k = 0; k < a.size(); ++k) b[k] = std::sin(1.7 * k) + 0.2;
    double bnorm2 = 0.0;
    for (double v : b) bnorm2 += v * v;
    const double bnorm = std::sqrt(bnorm2);

    const LinearSolveResult res = solve_cg(a, b, 1e-11, 5000, Preconditioner::none);
    const auto& hist = res.stats.residual_history;
    REQUIRE(hist.size() >= 2);
    CHECK(hist.front() == doctest::Approx(bnorm).epsilon(1e-14));
    CHECK(hist.back() <= 1e-11 * bnorm);
    CHECK(res.stats.iterations + 1 == static_cast<int>(hist.size()));
    for (double v : hist) CHECK(std::isfinite(v));
    CHECK(res.stats.final_relative_residual <= 1e-10);
}

TEST_CASE("Jacobi preconditioning changes iterations, not the solution") {
    std::mt19937 rng(9u);
    const SparseMatrix a = random_dominant(80, true, rng);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::vector<double> b(80);
    for (double& v : b) v = val(rng);

    const double tol = 1e-11;
    const LinearSolveResult plain = solve_cg(a, b, tol, 2000, Preconditioner::none);
    const LinearSolveResult jac = solve_cg(a, b, tol, 2000, Preconditioner::jacobi);
    CHECK(norm_inf_diff(plain.x, jac.x) <=
          10.0 * tol * std::max(1.0, norm_inf(plain.x)));
    CHECK(plain.stats.final_relative_residual <= tol);
    CHECK(jac.stats.final_relative_residual <= tol);
}

TEST_CASE("CG reports indefinite matrices") {
    const SparseMatrix a =
        SparseMatrix::from_triplets(2, {{0, 0, 1.0}, {1, 1, -1.0}});
    CHECK(error_code_of([&] {
              solve_cg(a, std::vector<double>{1.0, 1.0}, 1e-10, 50, Preconditioner::none);
          }) == ErrorCode::indefinite_breakdown);
}

TEST_CASE("solvers report non-convergence at the iteration cap") {
    std::mt19937 rng(5u);
    const SparseMatrix a = random_dominant(60, true, rng);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::vector<double> b(60);
    for (double& v : b) v = val(rng);
    CHECK(error_code_of([&] { solve_cg(a, b, 1e-14, 1, Preconditioner::none); }) ==
          ErrorCode::not_converged);
    CHECK(error_code_of([&] { solve_bicgstab(a, b, 1e-14, 1, Preconditioner::none); }) ==
          ErrorCode::not_converged);
}

TEST_CASE("zero right-hand side returns the zero solution immediately") {
    const SparseMatrix a = SparseMatrix::from_triplets(2, {{0, 0, 2.0}, {1, 1, 2.0}});
    const std::vector<double> b{0.0, 0.0};
    for (const auto& res :
         {solve_cg(a, b, 1e-10, 10, Preconditioner::none),
          solve_bicgstab(a, b, 1e-10, 10, Preconditioner::jacobi)}) {
        CHECK(res.x == std::vector<double>{0.0, 0.0});
        CHECK(res.stats.iterations == 0);
    }
}

TEST_CASE("Krylov runs are deterministic") {
    std::mt19937 rng(42u);
    const SparseMatrix a = random_dominant(100, true, rng);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::vector<double> b(100);
    for (double& v : b) v = val(rng);

    const LinearSolveResult r1 = solve_cg(a, b, 1e-11, 2000, Preconditioner::jacobi);
    const LinearSolveResult r2 = solve_cg(a, b, 1e-11, 2000, Preconditioner::jacobi);
    CHECK(r1.x == r2.x);
    CHECK(r1.stats.iterations == r2.stats.iterations);
    CHECK(r1.stats.residual_history == r2.stats.residual_history);
}

TEST_CASE("dense LU pivots and flags singular systems") {
    // needs a row swap: zero pivot in the (0,0) slot
    const std::vector<double> a{0.0, 1.0, 1.0, 0.0};
    const std::vector<double> x = dense_solve(a, {3.0, 5.0});
    CHECK(x[0] == doctest::Approx(5.0));
    CHECK(x[1] == doctest::Approx(3.0));

    CHECK(error_code_of([] { dense_solve({1.0, 2.0, 2.0, 4.0}, {1.0, 1.0}); }) ==
          ErrorCode::breakdown);
}
