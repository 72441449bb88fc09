#pragma once

#include "swell/sparse.hpp"

#include <span>
#include <string>
#include <vector>

namespace swell {

enum class KrylovMethod { cg, bicgstab };
enum class Preconditioner { none, jacobi };

struct LinearSolveStats {
    KrylovMethod method;
    int iterations = 0;
    double final_relative_residual = 0.0;
    std::vector<double> residual_history; // 2-norms, starting from ||b|| (x0 = 0)
};

struct LinearSolveResult {
    std::vector<double> x;
    LinearSolveStats stats;
};

// Both solvers start from x0 = 0 and stop when ||r||_2 <= tol * ||b||_2.
// CG throws IndefiniteBreakdown when p'Ap <= 0 (matrix not SPD); BiCGSTAB
// throws Breakdown when rho ~ 0; both throw NotConverged at max_iter.
LinearSolveResult solve_cg(const SparseMatrix& a, std::span<const double> b,
                           double tol, int max_iter, Preconditioner precond);

LinearSolveResult solve_bicgstab(const SparseMatrix& a, std::span<const double> b,
                                 double tol, int max_iter, Preconditioner precond);

const char* method_name(KrylovMethod m);

} // namespace swell
