#pragma once

#include "swell/field.hpp"
#include "swell/sparse.hpp"
#include "swell/stencil.hpp"

#include <span>

namespace swell {

// exp overflows near |u| = 709; beyond this guard the solver is diverging.
inline constexpr double kExpArgGuard = 700.0;

// f(u; x, y) = eps^-2 (e^u - (x^2+y^2) e^-u)
double rhs_f(double u_val, double x, double y, double eps);

// df/du = eps^-2 (e^u + (x^2+y^2) e^-u) > 0
double rhs_fu(double u_val, double x, double y, double eps);

// R(u) = Lap_h u - sigma f(u), with the Dirichlet data sigma*g already folded
// into bvals (callers pass boundary_values(grid, g, sigma)).
Field residual(const Stencil& lap, const Field& u, std::span<const double> bvals,
               double eps, double sigma);

Field residual(const Stencil& lap, const Field& u, const BoundarySpec& g,
               double eps, double sigma);

// J = Lap_h - sigma diag(f_u(u))
SparseMatrix jacobian(const Stencil& lap, const Field& u, double eps, double sigma);

} // namespace swell
