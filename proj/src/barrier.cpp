#include "swell/barrier.hpp"

#include "swell/error.hpp"
#include "swell/krylov.hpp"
#include "swell/semilinear.hpp"
#include "swell/stencil.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace swell {

Field solve_poisson(const Grid& grid, const BoundarySpec& g,
                    const std::function<double(double, double)>& rhs,
                    double linear_tol, int linear_max_iter) {
    const Stencil lap = assemble_laplacian(grid);
    const std::vector<double> bvals = boundary_values(grid, g, 1.0);
    const int n = grid.interior_count();
    const int max_iter = linear_max_iter > 0 ? linear_max_iter : 20 * n;

    // Lap phi = rhs  <=>  (-Lap_interior) phi = B g - rhs, solved in the
    // positive-definite orientation (sigma = 0 Jacobian is the Laplacian).
    Field zero(grid);
    const SparseMatrix lap_mat = jacobian(lap, zero, 1.0, 0.0);
    std::vector<double> neg_vals = lap_mat.values();
    for (double& v : neg_vals) v = -v;
    const SparseMatrix a(n, lap_mat.row_offsets(), lap_mat.col_indices(), std::move(neg_vals));

    // b = B g - rhs: apply the stencil to the zero field to isolate the
    // boundary contribution.
    const Field bg = apply_laplacian(lap, zero, bvals);
    std::vector<double> b(n);
    for (int k = 0; k < n; ++k) {
        const GridNode& node = grid.node(k);
        b[k] = bg[k] - rhs(node.x, node.y);
    }

    std::vector<double> x;
    try {
        if (grid.grid_aligned()) {
            try {
                x = solve_cg(a, b, linear_tol, max_iter, Preconditioner::jacobi).x;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::indefinite_breakdown) throw;
                x = solve_bicgstab(a, b, linear_tol, max_iter, Preconditioner::jacobi).x;
            }
        } else {
            x = solve_bicgstab(a, b, linear_tol, max_iter, Preconditioner::jacobi).x;
        }
    } catch (const Error& e) {
        fail(ErrorCode::linear_failure, std::string("poisson solve failed: ") + e.what());
    }

    Field phi(grid, std::move(x));
    phi.set_boundary_trace(bvals);
    return phi;
}

BarrierResult solve_barrier(const Grid& grid, const BoundarySpec& g, double eps,
                            double linear_tol, int linear_max_iter) {
    if (!(eps > 0.0))
        fail(ErrorCode::invalid_config, "epsilon must be positive");
    const double inv_eps2 = 1.0 / (eps * eps);

    BarrierResult result;
    result.phi = solve_poisson(
        grid, g,
        [inv_eps2](double x, double y) { return inv_eps2 * (1.0 - x * x - y * y); },
        linear_tol, linear_max_iter);

    double sup = max_abs(result.phi);
    for (double v : result.phi.boundary_trace()) sup = std::max(sup, std::abs(v));
    result.sup_abs_phi = sup;
    result.bound = 2.0 * sup;
    return result;
}

CheckVerdict check_lemma1(const Field& u, const BarrierResult& barrier, double tol_disc) {
    if (&u.grid() != &barrier.phi.grid())
        fail(ErrorCode::grid_mismatch, "candidate and barrier live on different grids");

    CheckVerdict verdict;
    verdict.name = "lemma1_barrier";
    verdict.lhs = max_abs(u);
    verdict.rhs = barrier.bound;
    verdict.margin = tol_disc;
    verdict.pass = verdict.lhs <= verdict.rhs + verdict.margin;
    std::ostringstream os;
    os << "sup|u|=" << verdict.lhs << " 2sup|phi|=" << verdict.rhs
       << " tol=" << tol_disc;
    verdict.details = os.str();
    return verdict;
}

} // namespace swell
