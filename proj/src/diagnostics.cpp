#include "swell/diagnostics.hpp"

#include "swell/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace swell {

namespace {

// One axis component from the two arms (lo = negative direction, hi =
// positive).  Values at boundary arms come from the trace; centered when both
// neighbors are interior, one-sided toward the boundary otherwise.
double axis_component(const Field& u, int k, int d_hi, int d_lo) {
    const Grid& grid = u.grid();
    const GridNode& node = grid.node(k);
    const double h = grid.spacing();
    const bool traced = u.has_boundary_trace();

    const bool hi_interior = node.neighbor[d_hi] >= 0;
    const bool lo_interior = node.neighbor[d_lo] >= 0;

    if (hi_interior && lo_interior)
        return (u[node.neighbor[d_hi]] - u[node.neighbor[d_lo]]) / (2.0 * h);

    if (traced) {
        const double hi_val = hi_interior ? u[node.neighbor[d_hi]]
                                          : u.boundary_trace()[node.boundary[d_hi]];
        const double lo_val = lo_interior ? u[node.neighbor[d_lo]]
                                          : u.boundary_trace()[node.boundary[d_lo]];
        if (!hi_interior && !lo_interior)
            return (hi_val - lo_val) / ((node.theta[d_hi] + node.theta[d_lo]) * h);
        if (!hi_interior) return (hi_val - u[k]) / (node.theta[d_hi] * h);
        return (u[k] - lo_val) / (node.theta[d_lo] * h);
    }

    if (hi_interior) return (u[node.neighbor[d_hi]] - u[k]) / h;
    if (lo_interior) return (u[k] - u[node.neighbor[d_lo]]) / h;
    return 0.0;
}

} // namespace

Gradient discrete_gradient(const Field& u) {
    const int n = u.grid().interior_count();
    Gradient g;
    g.gx.resize(n);
    g.gy.resize(n);
    for (int k = 0; k < n; ++k) {
        g.gx[k] = axis_component(u, k, dir_e, dir_w);
        g.gy[k] = axis_component(u, k, dir_n, dir_s);
    }
    return g;
}

double sup_abs_gradient(const Field& u) {
    const Gradient g = discrete_gradient(u);
    double m = 0.0;
    for (std::size_t k = 0; k < g.gx.size(); ++k)
        m = std::max(m, std::hypot(g.gx[k], g.gy[k]));
    return m;
}

std::optional<double> interpolate_bilinear(const Field& u, double x, double y) {
    const Grid& grid = u.grid();
    const double h = grid.spacing();
    const int i0 = static_cast<int>(std::floor((x - grid.x_of(0)) / h));
    const int j0 = static_cast<int>(std::floor((y - grid.y_of(0)) / h));
    const int k00 = grid.node_at(i0, j0), k10 = grid.node_at(i0 + 1, j0);
    const int k01 = grid.node_at(i0, j0 + 1), k11 = grid.node_at(i0 + 1, j0 + 1);
    if (k00 < 0 || k10 < 0 || k01 < 0 || k11 < 0) return std::nullopt;
    const double tx = (x - grid.x_of(i0)) / h;
    const double ty = (y - grid.y_of(j0)) / h;
    return (1 - tx) * (1 - ty) * u[k00] + tx * (1 - ty) * u[k10] +
           (1 - tx) * ty * u[k01] + tx * ty * u[k11];
}

double angular_asymmetry(const Field& u, Point center, int n_rays) {
    if (n_rays < 2)
        fail(ErrorCode::invalid_config, "angular_asymmetry needs at least 2 rays");
    const Grid& grid = u.grid();
    const double h = grid.spacing();
    const double rx = std::max(std::abs(grid.x_of(0) - center.x),
                               std::abs(grid.x_of(grid.nx() - 1) - center.x));
    const double ry = std::max(std::abs(grid.y_of(0) - center.y),
                               std::abs(grid.y_of(grid.ny() - 1) - center.y));
    const double rmax = std::hypot(rx, ry);

    double asym = -1.0;
    for (double r = h; r <= rmax; r += h) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        bool full_circle = true;
        for (int l = 0; l < n_rays; ++l) {
            const double ang = 2.0 * std::numbers::pi * l / n_rays;
            const auto v = interpolate_bilinear(u, center.x + r * std::cos(ang),
                                                center.y + r * std::sin(ang));
            if (!v) {
                full_circle = false;
                break;
            }
            lo = std::min(lo, *v);
            hi = std::max(hi, *v);
        }
        if (full_circle) asym = std::max(asym, hi - lo);
    }
    if (asym < 0.0)
        fail(ErrorCode::center_outside_domain,
             "no sampling circle about the center lies in the domain");
    return asym;
}

CheckVerdict moving_plane_check(const Field& u, double lambda, double tol_disc) {
    if (lambda < 0.0)
        fail(ErrorCode::invalid_config, "moving-plane lambda must be >= 0");
    const Grid& grid = u.grid();

    double min_w = std::numeric_limits<double>::infinity();
    double max_abs_w = 0.0;
    int used = 0;
    for (int k = 0; k < grid.interior_count(); ++k) {
        const GridNode& node = grid.node(k);
        if (!(node.x < lambda)) continue;
        const auto v = interpolate_bilinear(u, 2.0 * lambda - node.x, node.y);
        if (!v) continue;
        const double w = *v - u[k];
        min_w = std::min(min_w, w);
        max_abs_w = std::max(max_abs_w, std::abs(w));
        ++used;
    }
    if (used == 0)
        fail(ErrorCode::empty_reflection_region,
             "no node left of lambda has an interpolable reflection");

    CheckVerdict verdict;
    verdict.name = "moving_plane";
    verdict.lhs = lambda == 0.0 ? max_abs_w : -min_w;
    verdict.rhs = 0.0;
    verdict.margin = tol_disc;
    verdict.pass = verdict.lhs <= verdict.rhs + verdict.margin;
    std::ostringstream os;
    os << "lambda=" << lambda << " nodes=" << used << " min_w=" << min_w
       << " max|w|=" << max_abs_w;
    verdict.details = os.str();
    return verdict;
}

CheckVerdict radial_monotonicity_2d(const Field& u, Point center, double tol_mono) {
    const Grid& grid = u.grid();
    const Gradient g = discrete_gradient(u);
    const double h = grid.spacing();

    double min_dur = std::numeric_limits<double>::infinity();
    int used = 0;
    for (int k = 0; k < grid.interior_count(); ++k) {
        const GridNode& node = grid.node(k);
        const double dx = node.x - center.x, dy = node.y - center.y;
        const double r = std::hypot(dx, dy);
        if (r <= h) continue;
        min_dur = std::min(min_dur, (dx * g.gx[k] + dy * g.gy[k]) / r);
        ++used;
    }
    if (used == 0)
        fail(ErrorCode::center_outside_domain,
             "no interior node lies at r > h from the center");

    CheckVerdict verdict;
    verdict.name = "radial_monotonicity";
    verdict.lhs = -min_dur;
    verdict.rhs = 0.0;
    verdict.margin = tol_mono;
    verdict.pass = verdict.lhs <= verdict.rhs + verdict.margin;
    std::ostringstream os;
    os << "min du/dr=" << min_dur << " nodes=" << used;
    verdict.details = os.str();
    return verdict;
}

CheckVerdict gradient_bound_check(const Field& u, double eps, double tol_disc,
                                  const BoundarySpec* g) {
    const Grid& grid = u.grid();
    const Gradient grad = discrete_gradient(u);

    int k_max = 0;
    double g2_max = -1.0;
    for (int k = 0; k < grid.interior_count(); ++k) {
        const double g2 = grad.gx[k] * grad.gx[k] + grad.gy[k] * grad.gy[k];
        if (g2 > g2_max) {
            g2_max = g2;
            k_max = k;
        }
    }
    const GridNode& node = grid.node(k_max);
    const double grad_max = std::sqrt(g2_max);
    const bool boundary_adjacent =
        node.neighbor[0] < 0 || node.neighbor[1] < 0 || node.neighbor[2] < 0 ||
        node.neighbor[3] < 0;

    CheckVerdict verdict;
    verdict.name = "gradient_bound";
    std::ostringstream os;
    if (boundary_adjacent) {
        // Lemma's boundary alternative; the discrete comparison is reported,
        // not gated (one-sided differences near the boundary are first-order).
        verdict.pass = true;
        verdict.lhs = grad_max;
        verdict.rhs = 0.0;
        if (g) {
            std::vector<Point> pts;
            pts.reserve(grid.boundary_points().size());
            for (const BoundaryPoint& bp : grid.boundary_points())
                pts.push_back(Point{bp.x, bp.y});
            verdict.rhs = max_boundary_gradient(*g, pts);
        }
        verdict.margin = tol_disc;
        os << "BOUNDARY_MAX (informational): sup|grad u|=" << grad_max
           << " at node (" << node.x << "," << node.y << "), sup|grad g|=" << verdict.rhs;
    } else {
        const double r = std::hypot(node.x, node.y);
        // 2 r e^-u / (e^u + r^2 e^-u) = 2 r / (e^2u + r^2)
        const double eu = std::exp(u[k_max]);
        const double bound = 2.0 * r / (eu * eu + r * r);
        verdict.lhs = grad_max;
        verdict.rhs = bound;
        verdict.margin = tol_disc;
        verdict.pass = verdict.lhs <= verdict.rhs + verdict.margin;
        os << "INTERIOR_MAX at node (" << node.x << "," << node.y << "), u=" << u[k_max]
           << ", r=" << r << ", eps=" << eps;
    }
    verdict.details = os.str();
    return verdict;
}

} // namespace swell
