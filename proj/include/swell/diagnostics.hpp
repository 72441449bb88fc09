#pragma once

#include "swell/domain.hpp"
#include "swell/field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace swell {

// pass == (lhs <= rhs + margin) for inequality checks; informational
// verdicts (the BOUNDARY_MAX branch of the gradient bound) always pass and
// say so in details.
struct CheckVerdict {
    std::string name;
    bool pass = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    std::string details;
};

// Per-node centered differences; at boundary-adjacent nodes one-sided toward
// the boundary point at distance theta*h, using the field's Dirichlet trace.
// Without a trace, falls back to one-sided differences into the interior.
struct Gradient {
    std::vector<double> gx, gy;
};

Gradient discrete_gradient(const Field& u);
double sup_abs_gradient(const Field& u);

// Bilinear interpolation on the lattice cell containing (x,y); nullopt when
// any of the four cell corners is not an interior node.
std::optional<double> interpolate_bilinear(const Field& u, double x, double y);

// Max over sampled circles (radii k*h about center) of the spread of u over
// n_rays equispaced angles; circles with any non-interpolable sample are
// skipped.  Zero means perfectly radial.
double angular_asymmetry(const Field& u, Point center, int n_rays);

// w(x,y) = u(2*lambda - x, y) - u(x, y) on nodes with x < lambda whose
// reflection interpolates; PASS iff min w >= -tol_disc, plus |w| <= tol_disc
// when lambda == 0.
CheckVerdict moving_plane_check(const Field& u, double lambda, double tol_disc);

// du/dr = (x ux + y uy)/r at nodes with r > h about center; PASS iff
// min >= -tol_mono.
CheckVerdict radial_monotonicity_2d(const Field& u, Point center, double tol_mono);

// Stationary-point inequality at the node of maximal |grad u|^2: when that
// node is interior (all arms full), PASS iff
// |grad u| <= 2 r e^-u / (e^u + r^2 e^-u) + tol_disc  with r about the origin.
// When it is boundary-adjacent the verdict reports the BOUNDARY_MAX branch
// (informational, never fails): lhs = sup|grad u|, rhs = sup|grad g| when the
// boundary data is supplied.
CheckVerdict gradient_bound_check(const Field& u, double eps, double tol_disc,
                                  const BoundarySpec* g = nullptr);

// Discretization slack used by the inequality checks: 10 * eps^-2 * h^2.
inline double default_tol_disc(double eps, double h) {
    return 10.0 * h * h / (eps * eps);
}

} // namespace swell
