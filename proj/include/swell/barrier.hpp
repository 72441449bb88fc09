#pragma once

#include "swell/diagnostics.hpp"
#include "swell/field.hpp"
#include "swell/grid.hpp"

#include <functional>

namespace swell {

struct BarrierResult {
    Field phi;
    double sup_abs_phi = 0.0; // over nodes and boundary points
    double bound = 0.0;       // 2 * sup_abs_phi
};

// Linear solve of Lap_h phi = rhs(x,y) with Dirichlet data g.
Field solve_poisson(const Grid& grid, const BoundarySpec& g,
                    const std::function<double(double, double)>& rhs,
                    double linear_tol = 1e-10, int linear_max_iter = 0);

// The comparison problem Lap phi = eps^-2 (1 - x^2 - y^2), phi = g.
BarrierResult solve_barrier(const Grid& grid, const BoundarySpec& g, double eps,
                            double linear_tol = 1e-10, int linear_max_iter = 0);

// PASS iff sup|u| <= 2 sup|phi| + tol_disc.
CheckVerdict check_lemma1(const Field& u, const BarrierResult& barrier, double tol_disc);

} // namespace swell
