#pragma once

#include "swell/domain.hpp"
#include "swell/field.hpp"
#include "swell/grid.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace swell {

struct SolverConfig {
    double epsilon = 1.0;
    BoundarySpec boundary = ZeroBoundary{};

    // Absolute tolerance defaults to 1e-10/eps^2 (the residual carries the
    // eps^-2 scale); the relative term keeps fine grids terminating above the
    // rounding floor of the stencil.
    std::optional<double> newton_tol_abs;
    double newton_tol_rel = 1e-12;
    int max_newton = 50;
    int max_backtracks = 30;

    std::vector<double> sigma_schedule{0.0, 0.25, 0.5, 0.75, 1.0};
    // Optional decreasing list ending at epsilon; empty means automatic:
    // factor-1/2 steps from 1 when epsilon < 0.2, otherwise direct.
    std::vector<double> epsilon_schedule;

    double linear_tol = 1e-10;
    int linear_max_iter = 0; // 0 -> 20 n

    double tol_abs_at(double eps) const {
        return newton_tol_abs ? *newton_tol_abs : 1e-10 / (eps * eps);
    }
    void validate() const;
};

struct ContinuationStep {
    double sigma;
    double epsilon;
    int newton_iterations = 0;
    double final_residual = 0.0;
    double sup_abs_u = 0.0;
    std::vector<double> residual_history; // inf-norms, first entry at the warm start
};

struct SolveReport {
    bool converged = false;
    std::vector<ContinuationStep> steps;
    double final_residual = 0.0;
    double sup_abs_u = 0.0;
    double sup_abs_grad_u = 0.0;
    double wall_seconds = 0.0;

    int total_newton_iterations() const {
        int n = 0;
        for (const ContinuationStep& s : steps) n += s.newton_iterations;
        return n;
    }
};

// One damped Newton run at fixed sigma (and cfg.epsilon), from u0.
std::pair<Field, SolveReport> newton_solve(const Grid& grid, const SolverConfig& cfg,
                                           double sigma, const Field& u0);

// Walks sigma_schedule at the first epsilon, then the epsilon schedule at
// sigma = 1, warm-starting every step; stalled steps are bisected (up to 8
// insertions per schedule interval).
std::pair<Field, SolveReport> continuation_solve(const Grid& grid, const SolverConfig& cfg);

// The epsilon ladder continuation_solve will use (exposed for reports).
std::vector<double> effective_epsilon_schedule(const SolverConfig& cfg);

} // namespace swell
