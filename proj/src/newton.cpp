#include "swell/newton.hpp"

#include "swell/diagnostics.hpp"
#include "swell/error.hpp"
#include "swell/krylov.hpp"
#include "swell/semilinear.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace swell {

void SolverConfig::validate() const {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        fail(ErrorCode::invalid_config, "epsilon must be positive");
    swell::validate(boundary);
    if (newton_tol_abs && !(*newton_tol_abs > 0.0))
        fail(ErrorCode::invalid_config, "newton_tol_abs must be positive");
    if (!(newton_tol_rel > 0.0))
        fail(ErrorCode::invalid_config, "newton_tol_rel must be positive");
    if (max_newton < 1 || max_backtracks < 1)
        fail(ErrorCode::invalid_config, "iteration limits must be >= 1");
    if (sigma_schedule.empty() || sigma_schedule.back() != 1.0)
        fail(ErrorCode::invalid_config, "sigma_schedule must end at 1");
    for (std::size_t k = 0; k < sigma_schedule.size(); ++k) {
        if (sigma_schedule[k] < 0.0 || sigma_schedule[k] > 1.0)
            fail(ErrorCode::invalid_config, "sigma_schedule entries must lie in [0,1]");
        if (k > 0 && sigma_schedule[k] <= sigma_schedule[k - 1])
            fail(ErrorCode::invalid_config, "sigma_schedule must be strictly increasing");
    }
    if (!epsilon_schedule.empty()) {
        if (epsilon_schedule.back() != epsilon)
            fail(ErrorCode::invalid_config, "epsilon_schedule must end at epsilon");
        for (std::size_t k = 0; k < epsilon_schedule.size(); ++k) {
            if (!(epsilon_schedule[k] > 0.0))
                fail(ErrorCode::invalid_config, "epsilon_schedule entries must be positive");
            if (k > 0 && epsilon_schedule[k] >= epsilon_schedule[k - 1])
                fail(ErrorCode::invalid_config, "epsilon_schedule must be strictly decreasing");
        }
    }
    if (!(linear_tol > 0.0))
        fail(ErrorCode::invalid_config, "linear_tol must be positive");
    if (linear_max_iter < 0)
        fail(ErrorCode::invalid_config, "linear_max_iter must be >= 0");
}

std::vector<double> effective_epsilon_schedule(const SolverConfig& cfg) {
    if (!cfg.epsilon_schedule.empty()) return cfg.epsilon_schedule;
    if (cfg.epsilon >= 0.2) return {cfg.epsilon};
    std::vector<double> sched;
    for (double e = 1.0; e > cfg.epsilon; e *= 0.5) sched.push_back(e);
    sched.push_back(cfg.epsilon);
    return sched;
}

namespace {

double inf_norm(const Field& f) { return max_abs(f); }

// Newton linear solve on -J du = R; CG on symmetric (grid-aligned) systems
// with BiCGSTAB fallback on indefiniteness, BiCGSTAB otherwise.
std::vector<double> newton_direction(const SparseMatrix& jac, const std::vector<double>& rhs,
                                     bool aligned, double tol, int max_iter) {
    SparseMatrix neg = jac;
    {
        std::vector<double> v = jac.values();
        for (double& x : v) x = -x;
        neg = SparseMatrix(jac.size(), jac.row_offsets(), jac.col_indices(), std::move(v));
    }
    try {
        if (aligned) {
            try {
                return solve_cg(neg, rhs, tol, max_iter, Preconditioner::jacobi).x;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::indefinite_breakdown) throw;
                return solve_bicgstab(neg, rhs, tol, max_iter, Preconditioner::jacobi).x;
            }
        }
        return solve_bicgstab(neg, rhs, tol, max_iter, Preconditioner::jacobi).x;
    } catch (const Error& e) {
        fail(ErrorCode::linear_failure, std::string("inner solve failed: ") + e.what());
    }
}

// Damped Newton at fixed (sigma, eps), updating u in place.
ContinuationStep newton_core(const Stencil& lap, const SolverConfig& cfg,
                             double sigma, double eps,
                             const std::vector<double>& bvals, Field& u) {
    const Grid& grid = lap.grid();
    const int n = grid.interior_count();
    const int lin_max = cfg.linear_max_iter > 0 ? cfg.linear_max_iter : 20 * n;

    ContinuationStep step;
    step.sigma = sigma;
    step.epsilon = eps;

    Field r = residual(lap, u, bvals, eps, sigma);
    double rnorm = inf_norm(r);
    step.residual_history.push_back(rnorm);
    const double tol = std::max(cfg.tol_abs_at(eps), cfg.newton_tol_rel * rnorm);

    while (rnorm > tol) {
        if (step.newton_iterations >= cfg.max_newton)
            fail(ErrorCode::newton_max_iter,
                 "no convergence in " + std::to_string(cfg.max_newton) +
                     " Newton iterations at sigma=" + std::to_string(sigma) +
                     ", eps=" + std::to_string(eps));

        const SparseMatrix jac = jacobian(lap, u, eps, sigma);
        const std::vector<double> du =
            newton_direction(jac, r.values(), grid.grid_aligned(), cfg.linear_tol, lin_max);

        // Halve alpha until the residual strictly decreases; trial iterates
        // beyond the exp guard count as failures rather than hard errors.
        double alpha = 1.0;
        bool accepted = false;
        Field trial(grid);
        for (int bt = 0; bt <= cfg.max_backtracks; ++bt, alpha *= 0.5) {
            bool guarded = true;
            for (int k = 0; k < n; ++k) {
                trial[k] = u[k] + alpha * du[k];
                if (std::abs(trial[k]) > kExpArgGuard) {
                    guarded = false;
                    break;
                }
            }
            if (!guarded) continue;
            Field rt = residual(lap, trial, bvals, eps, sigma);
            const double rtn = inf_norm(rt);
            if (rtn < rnorm) {
                u = trial;
                r = std::move(rt);
                rnorm = rtn;
                accepted = true;
                break;
            }
        }
        if (!accepted)
            fail(ErrorCode::newton_stalled,
                 "line search found no decrease from residual " + std::to_string(rnorm) +
                     " at sigma=" + std::to_string(sigma) + ", eps=" + std::to_string(eps));

        ++step.newton_iterations;
        step.residual_history.push_back(rnorm);
    }

    step.final_residual = rnorm;
    step.sup_abs_u = max_abs(u);
    return step;
}

bool is_step_failure(const Error& e) {
    return e.code() == ErrorCode::newton_stalled || e.code() == ErrorCode::newton_max_iter;
}

void finalize_report(SolveReport& report, Field& u, const Grid& grid,
                     const BoundarySpec& g,
                     std::chrono::steady_clock::time_point t0) {
    report.converged = true;
    report.final_residual = report.steps.empty() ? 0.0 : report.steps.back().final_residual;
    report.sup_abs_u = max_abs(u);
    u.set_boundary_trace(boundary_values(grid, g, 1.0));
    report.sup_abs_grad_u = sup_abs_gradient(u);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

std::pair<Field, SolveReport> newton_solve(const Grid& grid, const SolverConfig& cfg,
                                           double sigma, const Field& u0) {
    cfg.validate();
    if (sigma < 0.0 || sigma > 1.0)
        fail(ErrorCode::invalid_config, "sigma must lie in [0,1]");
    if (&u0.grid() != &grid || u0.size() != grid.interior_count())
        fail(ErrorCode::grid_mismatch, "initial guess lives on a different grid");
    if (!all_finite(u0))
        fail(ErrorCode::invalid_config, "initial guess contains non-finite values");

    const auto t0 = std::chrono::steady_clock::now();
    const Stencil lap = assemble_laplacian(grid);
    const std::vector<double> bvals = boundary_values(grid, cfg.boundary, sigma);

    Field u = u0;
    SolveReport report;
    report.steps.push_back(newton_core(lap, cfg, sigma, cfg.epsilon, bvals, u));

    report.converged = true;
    report.final_residual = report.steps.back().final_residual;
    report.sup_abs_u = max_abs(u);
    u.set_boundary_trace(bvals);
    report.sup_abs_grad_u = sup_abs_gradient(u);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {std::move(u), std::move(report)};
}

std::pair<Field, SolveReport> continuation_solve(const Grid& grid, const SolverConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const Stencil lap = assemble_laplacian(grid);
    const std::vector<double> eps_sched = effective_epsilon_schedule(cfg);
    const double eps0 = eps_sched.front();

    Field u(grid, 0.0); // the sigma = 0 solution for any g
    SolveReport report;
    double sigma_good = 0.0, eps_good = eps0;

    // sigma walk at the first epsilon
    for (double target : cfg.sigma_schedule) {
        std::vector<double> pending{target};
        int inserted = 0;
        while (!pending.empty()) {
            const double s = pending.back();
            const std::vector<double> bvals = boundary_values(grid, cfg.boundary, s);
            try {
                report.steps.push_back(newton_core(lap, cfg, s, eps0, bvals, u));
            } catch (const Error& e) {
                if (!is_step_failure(e)) throw;
                const double mid = 0.5 * (sigma_good + s);
                if (++inserted > 8 || mid <= sigma_good || mid >= s)
                    throw ContinuationError(
                        std::string("sigma step stalled (") + e.what() + ")", sigma_good,
                        eps_good);
                pending.push_back(mid);
                continue;
            }
            pending.pop_back();
            sigma_good = s;
        }
    }

    // epsilon walk at sigma = 1
    const std::vector<double> bvals = boundary_values(grid, cfg.boundary, 1.0);
    for (std::size_t k = 1; k < eps_sched.size(); ++k) {
        std::vector<double> pending{eps_sched[k]};
        int inserted = 0;
        while (!pending.empty()) {
            const double e_target = pending.back();
            try {
                report.steps.push_back(newton_core(lap, cfg, 1.0, e_target, bvals, u));
            } catch (const Error& e) {
                if (!is_step_failure(e)) throw;
                const double mid = 0.5 * (eps_good + e_target);
                if (++inserted > 8 || mid >= eps_good || mid <= e_target)
                    throw ContinuationError(
                        std::string("epsilon step stalled (") + e.what() + ")", sigma_good,
                        eps_good);
                pending.push_back(mid);
                continue;
            }
            pending.pop_back();
            eps_good = e_target;
        }
    }

    finalize_report(report, u, grid, cfg.boundary, t0);
    return {std::move(u), std::move(report)};
}

} // namespace swell
