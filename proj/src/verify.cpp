#include "swell/verify.hpp"

#include "swell/barrier.hpp"
#include "swell/dense.hpp"
#include "swell/diagnostics.hpp"
#include "swell/error.hpp"
#include "swell/krylov.hpp"
#include "swell/newton.hpp"
#include "swell/radial.hpp"
#include "swell/semilinear.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>

namespace swell {

namespace {

struct Solved {
    std::string tag;
    std::shared_ptr<Grid> grid;
    Field u;
    SolveReport report;
    BoundarySpec g;
    double eps;
    double h;
};

Solved solve_on(std::string tag, const DomainSpec& dom, double h, const BoundarySpec& g,
                double eps) {
    auto grid = std::make_shared<Grid>(build_grid(dom, h));
    SolverConfig cfg;
    cfg.epsilon = eps;
    cfg.boundary = g;
    auto [u, rep] = continuation_solve(*grid, cfg);
    return {std::move(tag), std::move(grid), std::move(u), std::move(rep), g, eps, h};
}

double max_error_vs_log_r(const Field& u) {
    double err = 0.0;
    for (int k = 0; k < u.grid().interior_count(); ++k) {
        const GridNode& node = u.grid().node(k);
        err = std::max(err, std::abs(u[k] - 0.5 * std::log(node.x * node.x + node.y * node.y)));
    }
    return err;
}

struct Ctx {
    std::vector<Solved> solves;
    std::shared_ptr<Grid> disk_grid_h05;
    std::map<double, BarrierResult> disk_barriers; // by eps
};

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(4) << v;
    return os.str();
}

// ---- criterion 1: exact-solution convergence on the annulus -------------

CriterionResult criterion1(Ctx& ctx) {
    const Annulus dom{{0.0, 0.0}, 1.0, 2.0};
    const LogRBoundary g;
    std::vector<double> errs;
    for (double h : {0.1, 0.05, 0.025}) {
        Solved s = solve_on("annulus_logr_h" + fmt(h), dom, h, g, 1.0);
        errs.push_back(max_error_vs_log_r(s.u));
        if (h == 0.025) ctx.solves.push_back(std::move(s));
    }
    const double p1 = std::log2(errs[0] / errs[1]);
    const double p2 = std::log2(errs[1] / errs[2]);
    const bool pass = p1 >= 1.7 && p1 <= 2.3 && p2 >= 1.7 && p2 <= 2.3 && errs[2] < 5e-4;

    std::ostringstream os;
    os << "errors " << fmt(errs[0]) << "/" << fmt(errs[1]) << "/" << fmt(errs[2])
       << ", orders " << fmt(p1) << "/" << fmt(p2) << " (need [1.7,2.3], err<5e-4)";
    return {1, "exact_convergence", pass, os.str(), 0.0};
}

// ---- criterion 2: Lemma 1 barrier bound ----------------------------------

CriterionResult criterion2(Ctx& ctx) {
    const Disk dom{{0.0, 0.0}, 1.0};
    const double h = 0.05;
    ctx.disk_grid_h05 = std::make_shared<Grid>(build_grid(dom, h));

    bool pass = true;
    std::ostringstream os;
    for (double eps : {1.0, 0.5}) {
        SolverConfig cfg;
        cfg.epsilon = eps;
        auto [u, rep] = continuation_solve(*ctx.disk_grid_h05, cfg);
        BarrierResult barrier = solve_barrier(*ctx.disk_grid_h05, ZeroBoundary{}, eps);

        const double tol = default_tol_disc(eps, h);
        const double closed_form = 3.0 / (16.0 * eps * eps);
        const double sup_err = std::abs(barrier.sup_abs_phi - closed_form);
        const CheckVerdict lemma1 = check_lemma1(u, barrier, tol);
        pass = pass && sup_err <= tol && lemma1.pass;

        os << "eps=" << fmt(eps) << ": sup|phi|-3/(16e^2)=" << fmt(sup_err)
           << " (tol " << fmt(tol) << "), sup|u|=" << fmt(lemma1.lhs)
           << " <= " << fmt(lemma1.rhs + tol) << "; ";

        ctx.solves.push_back(Solved{"disk_g0_eps" + fmt(eps), ctx.disk_grid_h05, std::move(u),
                                    std::move(rep), ZeroBoundary{}, eps, h});
        ctx.disk_barriers.emplace(eps, std::move(barrier));
    }
    return {2, "lemma1_barrier", pass, os.str(), 0.0};
}

// ---- criterion 3: homotopy a-priori bound at every visited sigma ---------

CriterionResult criterion3(Ctx& ctx) {
    bool pass = true;
    double worst = -1e300;
    int steps = 0;
    for (const Solved& s : ctx.solves) {
        if (s.tag.rfind("disk_g0_eps", 0) != 0) continue;
        const BarrierResult& barrier = ctx.disk_barriers.at(s.eps);
        const double tol = default_tol_disc(s.eps, s.h);
        for (const ContinuationStep& step : s.report.steps) {
            const double bound = 2.0 * step.sigma * barrier.sup_abs_phi + tol;
            worst = std::max(worst, step.sup_abs_u - bound);
            pass = pass && step.sup_abs_u <= bound;
            ++steps;
        }
    }
    std::ostringstream os;
    os << steps << " continuation steps, worst sup|u_sigma| - (2 sigma sup|phi| + tol) = "
       << fmt(worst);
    return {3, "homotopy_bound", pass && steps > 0, os.str(), 0.0};
}

// ---- criterion 4: uniqueness surrogate ------------------------------------

CriterionResult criterion4(Ctx& ctx) {
    const Grid& grid = *ctx.disk_grid_h05;
    SolverConfig cfg; // eps = 1

    auto [ua, ra] = newton_solve(grid, cfg, 1.0, Field(grid, 0.0));
    auto [ub, rb] = newton_solve(grid, cfg, 1.0, ctx.disk_barriers.at(1.0).phi);

    double diff = 0.0;
    for (int k = 0; k < grid.interior_count(); ++k)
        diff = std::max(diff, std::abs(ua[k] - ub[k]));
    const double tol = 10.0 * cfg.tol_abs_at(1.0); // 1e-9
    const bool pass = diff <= tol;

    std::ostringstream os;
    os << "max|u(0) - u(phi)| = " << fmt(diff) << " (tol " << fmt(tol) << "), "
       << ra.total_newton_iterations() << "/" << rb.total_newton_iterations() << " iterations";
    return {4, "uniqueness_surrogate", pass, os.str(), 0.0};
}

// ---- criterion 5: radial symmetry -----------------------------------------

CriterionResult criterion5(Ctx& ctx) {
    const Solved* coarse = nullptr;
    for (const Solved& s : ctx.solves)
        if (s.tag == "disk_g0_eps1") coarse = &s;

    Solved fine = solve_on("disk_g0_eps1_h0.025", Disk{{0.0, 0.0}, 1.0}, 0.025,
                           ZeroBoundary{}, 1.0);

    const double a_coarse = angular_asymmetry(coarse->u, {0.0, 0.0}, 64);
    const double a_fine = angular_asymmetry(fine.u, {0.0, 0.0}, 64);
    const double ratio = a_coarse / a_fine;
    bool pass = ratio >= 3.0 && ratio <= 5.0;

    const double tol = default_tol_disc(1.0, coarse->h);
    std::ostringstream os;
    os << "asym " << fmt(a_coarse) << " -> " << fmt(a_fine) << ", ratio " << fmt(ratio)
       << " (need [3,5]); moving plane:";
    for (double lambda : {0.0, 0.1, 0.25}) {
        const CheckVerdict mp = moving_plane_check(coarse->u, lambda, tol);
        pass = pass && mp.pass;
        os << " l=" << fmt(lambda) << (mp.pass ? " ok" : " FAIL");
    }
    ctx.solves.push_back(std::move(fine));
    return {5, "radial_symmetry", pass, os.str(), 0.0};
}

// ---- criterion 6: monotonicity in the theorem's regime --------------------

CriterionResult criterion6(Ctx& ctx) {
    bool pass = true;
    std::ostringstream os;
    for (const auto& [radius, h] : std::vector<std::pair<double, double>>{{5.0, 0.1}, {10.0, 0.2}}) {
        const Disk dom{{0.0, 0.0}, radius};
        Solved s = solve_on("disk_logr_R" + fmt(radius), dom, h, LogRBoundary{}, 1.0);

        const CheckVerdict mono = radial_monotonicity_2d(s.u, {0.0, 0.0}, 10.0 * h * h);

        RadialProblem rp;
        rp.r_out = radius;
        rp.u_out = std::log(radius);
        RadialProfile oracle = radial_solve(rp);
        double profile_err = 0.0;
        for (int i = 0; i < rp.n; ++i)
            if (oracle.r[i] >= radius / 2.0)
                profile_err = std::max(profile_err,
                                       std::abs(oracle.u[i] - std::log(oracle.r[i])));

        // Richardson bound on the 2-D discretization error from an h/2 pair,
        // safety factor 2: |u_h - u| <= (4/3)|u_h - u_{h/2}| for O(h^2).
        Solved fine = solve_on(s.tag + "_fine", dom, h / 2.0, LogRBoundary{}, 1.0);
        double pair_diff = 0.0;
        for (int k = 0; k < s.grid->interior_count(); ++k) {
            const GridNode& node = s.grid->node(k);
            const int kf = fine.grid->node_at(2 * node.i, 2 * node.j);
            if (kf >= 0) pair_diff = std::max(pair_diff, std::abs(s.u[k] - fine.u[kf]));
        }
        const double ray_tol = std::max(1e-3, 2.0 * (4.0 / 3.0) * pair_diff);
        double ray_err = 0.0;
        for (int k = 0; k < s.grid->interior_count(); ++k) {
            const GridNode& node = s.grid->node(k);
            const double r = std::hypot(node.x, node.y);
            ray_err = std::max(ray_err, std::abs(s.u[k] - interpolate_radial(oracle, r)));
        }

        const bool ok = mono.pass && profile_err <= 0.01 && ray_err <= ray_tol;
        pass = pass && ok;
        os << "R=" << fmt(radius) << ": min du/dr margin " << fmt(-mono.lhs)
           << ", |oracle-log r|=" << fmt(profile_err) << " (<=0.01)"
           << ", ray err " << fmt(ray_err) << " (tol " << fmt(ray_tol) << "); ";
        ctx.solves.push_back(std::move(s));
    }
    return {6, "monotonicity_regime", pass, os.str(), 0.0};
}

// ---- criterion 7: Lemma 2 inequality on every cached solve -----------------

CriterionResult criterion7(Ctx& ctx) {
    bool pass = true;
    int interior = 0, boundary = 0;
    std::ostringstream os;
    for (const Solved& s : ctx.solves) {
        const CheckVerdict v =
            gradient_bound_check(s.u, s.eps, default_tol_disc(s.eps, s.h), &s.g);
        const bool is_boundary = v.details.rfind("BOUNDARY_MAX", 0) == 0;
        (is_boundary ? boundary : interior) += 1;
        if (!v.pass) {
            pass = false;
            os << s.tag << " FAIL (" << fmt(v.lhs) << " > " << fmt(v.rhs + v.margin) << "); ";
        }
    }
    os << ctx.solves.size() << " solves: " << interior << " interior-max, " << boundary
       << " boundary-max, no interior violation" << (pass ? "" : " EXPECTED");
    return {7, "lemma2_gradient_bound", pass && !ctx.solves.empty(), os.str(), 0.0};
}

// ---- criterion 8: Jacobian vs finite differences ---------------------------

CriterionResult criterion8(Ctx&) {
    std::mt19937 rng(20250815u);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);

    // Arms below 1e-3 blow the residual scale up to ~1/(theta h^2), leaving
    // the delta=1e-6 difference quotient with no signal above rounding; such
    // slivers are covered by the operator exactness tests, so resample them.
    const auto draw_grid = [&](int t) {
        for (;;) {
            DomainSpec dom;
            double h;
            switch (t % 4) {
            case 0: {
                const double w = 0.6 + 0.6 * unit(rng), v = 0.6 + 0.6 * unit(rng);
                dom = Rectangle{0.0, w, 0.0, v};
                h = std::min(w, v) / (5 + t % 5);
                break;
            }
            case 1: {
                const double r = 0.4 + 0.6 * unit(rng);
                dom = Disk{{0.2 * sym(rng), 0.2 * sym(rng)}, r};
                h = r / (3 + t % 4);
                break;
            }
            case 2: {
                const double ri = 0.25 + 0.25 * unit(rng);
                const double ro = ri + 0.35 + 0.4 * unit(rng);
                dom = Annulus{{0.0, 0.0}, ri, ro};
                h = (ro - ri) / 4.0;
                break;
            }
            default: {
                const double a = 0.5 + 0.4 * unit(rng), b = 0.3 + 0.3 * unit(rng);
                dom = Implicit{[a, b](double x, double y) {
                                   return (x / a) * (x / a) + (y / b) * (y / b) - 1.0;
                               },
                               Rectangle{-a - 0.05, a + 0.05, -b - 0.05, b + 0.05}};
                h = std::min(a, b) / 3.0;
                break;
            }
            }
            Grid grid = build_grid(dom, h);
            double min_theta = 1.0;
            for (int k = 0; k < grid.interior_count(); ++k)
                for (int d = 0; d < 4; ++d)
                    min_theta = std::min(min_theta, grid.node(k).theta[d]);
            if (min_theta >= 1e-3) return grid;
        }
    };

    bool pass = true;
    double worst_lo = 1e300, worst_hi = -1e300;
    std::ostringstream os;
    for (int t = 0; t < 20; ++t) {
        const Grid grid = draw_grid(t);
        const Stencil lap = assemble_laplacian(grid);
        const int n = grid.interior_count();
        const double eps = 0.5 + 1.5 * unit(rng);
        const double sigma = 0.3 + 0.7 * unit(rng);

        Field u(grid);
        std::vector<double> v(n);
        for (int k = 0; k < n; ++k) u[k] = sym(rng);
        for (int k = 0; k < n; ++k) v[k] = sym(rng);
        const std::vector<double> bvals(grid.boundary_points().size(), 0.0);

        const SparseMatrix jac = jacobian(lap, u, eps, sigma);
        for (int r = 0; r < n; ++r) {
            for (int k = jac.row_offsets()[r]; k < jac.row_offsets()[r + 1]; ++k) {
                const bool diag = jac.col_indices()[k] == r;
                if ((diag && !(jac.values()[k] < 0.0)) || (!diag && !(jac.values()[k] >= 0.0)))
                    return {8, "jacobian_fd", false,
                            "sign structure violated on grid " + std::to_string(t), 0.0};
            }
        }

        const std::vector<double> jv = spmv(jac, v);
        const Field r0 = residual(lap, u, bvals, eps, sigma);
        const double resid_scale = std::max(1.0, max_abs(r0));
        std::array<double, 3> err{};
        const std::array<double, 3> deltas{1e-4, 1e-5, 1e-6};
        for (int d = 0; d < 3; ++d) {
            Field up(grid);
            for (int k = 0; k < n; ++k) up[k] = u[k] + deltas[d] * v[k];
            const Field r1 = residual(lap, up, bvals, eps, sigma);
            for (int k = 0; k < n; ++k)
                err[d] = std::max(err[d],
                                  std::abs((r1[k] - r0[k]) / deltas[d] - jv[k]));
        }
        // Each decade must either show the linear decay or sit at the
        // difference quotient's rounding floor ~ eps_mach ||R|| / delta.
        bool grid_ok = true;
        for (int d = 0; d < 2; ++d) {
            const double ratio = err[d] / err[d + 1];
            const double floor_next =
                128.0 * std::numeric_limits<double>::epsilon() * resid_scale / deltas[d + 1];
            worst_lo = std::min(worst_lo, ratio);
            worst_hi = std::max(worst_hi, ratio);
            if (!((ratio >= 5.0 && ratio <= 20.0) || err[d + 1] <= floor_next))
                grid_ok = false;
        }
        if (!grid_ok) {
            pass = false;
            os << "grid " << t << " (n=" << n << "): errors " << fmt(err[0]) << "/"
               << fmt(err[1]) << "/" << fmt(err[2]) << ", scale " << fmt(resid_scale)
               << "; ";
        }
    }
    os << "20 grids, decade ratios within [" << fmt(worst_lo) << ", " << fmt(worst_hi)
       << "], rounding floor credited where ratio unobservable";
    return {8, "jacobian_fd", pass, os.str(), 0.0};
}

// ---- criterion 9: Krylov vs dense LU ---------------------------------------

CriterionResult criterion9(Ctx&) {
    std::mt19937 rng(6180339u);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);

    bool pass = true;
    double worst = 0.0;
    std::ostringstream os;
    for (int t = 0; t < 10; ++t) {
        const int n = 50 + 35 * t;
        const bool symmetric = t < 5;

        std::vector<Triplet> trips;
        std::vector<double> rowsum(n, 0.0);
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int i = 0; i < n; ++i) {
            for (int e = 0; e < 3; ++e) {
                const int j = pick(rng);
                if (j == i) continue;
                const double v = 0.5 * sym(rng);
                trips.push_back({i, j, v});
                rowsum[i] += std::abs(v);
                if (symmetric) {
                    trips.push_back({j, i, v});
                    rowsum[j] += std::abs(v);
                }
            }
        }
        for (int i = 0; i < n; ++i)
            trips.push_back({i, i, rowsum[i] + 0.5 + unit(rng)});
        const SparseMatrix a = SparseMatrix::from_triplets(n, std::move(trips));

        std::vector<double> b(n);
        for (double& x : b) x = sym(rng);

        const std::vector<double> x_krylov =
            symmetric ? solve_cg(a, b, 1e-10, 20 * n, Preconditioner::jacobi).x
                      : solve_bicgstab(a, b, 1e-10, 20 * n, Preconditioner::jacobi).x;
        const std::vector<double> x_lu = dense_solve(a, b);

        double num = 0.0, den = 0.0;
        for (int k = 0; k < n; ++k) {
            num = std::max(num, std::abs(x_krylov[k] - x_lu[k]));
            den = std::max(den, std::abs(x_lu[k]));
        }
        const double rel = num / den;
        worst = std::max(worst, rel);
        if (!(rel <= 1e-8)) {
            pass = false;
            os << (symmetric ? "CG" : "BiCGSTAB") << " n=" << n << " rel err " << fmt(rel)
               << "; ";
        }
    }
    os << "10 systems (5 CG, 5 BiCGSTAB) vs dense LU, worst rel err " << fmt(worst)
       << " (tol 1e-8)";
    return {9, "linear_oracle", pass, os.str(), 0.0};
}

// ---- criterion 10: stiff regime with automatic epsilon continuation --------

CriterionResult criterion10(Ctx&) {
    const double h = 0.02, eps = 0.1;
    const Grid grid = build_grid(Disk{{0.0, 0.0}, 1.0}, h);

    SolverConfig cfg;
    cfg.epsilon = eps;
    auto [u, rep] = continuation_solve(grid, cfg);
    const BarrierResult barrier = solve_barrier(grid, ZeroBoundary{}, eps);
    const CheckVerdict lemma1 = check_lemma1(u, barrier, default_tol_disc(eps, h));

    const bool pass = rep.converged && lemma1.pass;
    std::ostringstream os;
    os << "epsilon ladder " << rep.steps.size() << " steps ("
       << rep.total_newton_iterations() << " Newton iterations), sup|u|=" << fmt(lemma1.lhs)
       << " <= " << fmt(lemma1.rhs + lemma1.margin) << ", wall " << fmt(rep.wall_seconds)
       << "s (budget 60s informational)";
    return {10, "stiff_regime", pass, os.str(), 0.0};
}

using CriterionFn = CriterionResult (*)(Ctx&);

} // namespace

std::vector<CriterionResult> run_acceptance() {
    Ctx ctx;
    const std::array<CriterionFn, 10> fns{criterion1, criterion2, criterion3, criterion4,
                                          criterion5, criterion6, criterion7, criterion8,
                                          criterion9, criterion10};
    std::vector<CriterionResult> results;
    for (std::size_t i = 0; i < fns.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r{static_cast<int>(i) + 1, "criterion", false, "", 0.0};
        try {
            r = fns[i](ctx);
        } catch (const std::exception& e) {
            r.details = std::string("unexpected error: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        results.push_back(std::move(r));
    }
    return results;
}

void print_acceptance(const std::vector<CriterionResult>& results, std::ostream& os) {
    int failed = 0;
    for (const CriterionResult& r : results) {
        os << "[" << std::setw(2) << r.id << "] " << (r.pass ? "PASS" : "FAIL") << " "
           << std::left << std::setw(24) << r.name << std::right << " (" << std::fixed
           << std::setprecision(1) << r.seconds << "s) " << r.details << "\n";
        os.unsetf(std::ios::floatfield);
        if (!r.pass) ++failed;
    }
    os << (failed == 0 ? "all criteria passed"
                       : std::to_string(failed) + " criteria FAILED")
       << "\n";
}

int acceptance_exit_code(const std::vector<CriterionResult>& results) {
    for (const CriterionResult& r : results)
        if (!r.pass) return 3;
    return 0;
}

} // namespace swell
