#include "swell/semilinear.hpp"

#include "swell/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

namespace swell {

namespace {

void guard(double u_val, double eps) {
    if (!(eps > 0.0))
        fail(ErrorCode::invalid_config, "epsilon must be positive");
    if (!(std::abs(u_val) <= kExpArgGuard))
        fail(ErrorCode::overflow, "|u| = " + std::to_string(u_val) + " exceeds exp guard");
}

} // namespace

double rhs_f(double u_val, double x, double y, double eps) {
    guard(u_val, eps);
#ifdef SWELL_MUTATED_RHS_SIGN
    // mutation-test build only: wrong sign must trip the acceptance suite
    return (std::exp(u_val) + (x * x + y * y) * std::exp(-u_val)) / (eps * eps);
#else
    return (std::exp(u_val) - (x * x + y * y) * std::exp(-u_val)) / (eps * eps);
#endif
}

double rhs_fu(double u_val, double x, double y, double eps) {
    guard(u_val, eps);
    return (std::exp(u_val) + (x * x + y * y) * std::exp(-u_val)) / (eps * eps);
}

Field residual(const Stencil& lap, const Field& u, std::span<const double> bvals,
               double eps, double sigma) {
    Field r = apply_laplacian(lap, u, bvals);
    const Grid& grid = lap.grid();
    for (int k = 0; k < grid.interior_count(); ++k) {
        const GridNode& node = grid.node(k);
        r[k] -= sigma * rhs_f(u[k], node.x, node.y, eps);
    }
    return r;
}

Field residual(const Stencil& lap, const Field& u, const BoundarySpec& g,
               double eps, double sigma) {
    return residual(lap, u, boundary_values(lap.grid(), g, sigma), eps, sigma);
}

SparseMatrix jacobian(const Stencil& lap, const Field& u, double eps, double sigma) {
    const Grid& grid = lap.grid();
    if (&u.grid() != &grid)
        fail(ErrorCode::grid_mismatch, "field and stencil grids differ");

    const int n = grid.interior_count();
    std::vector<int> offsets(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> cols;
    std::vector<double> vals;
    cols.reserve(static_cast<std::size_t>(n) * 5);
    vals.reserve(static_cast<std::size_t>(n) * 5);

    std::array<std::pair<int, double>, 5> entries;
    for (int k = 0; k < n; ++k) {
        const GridNode& node = grid.node(k);
        const StencilRow& row = lap.row(k);
        int m = 0;
        entries[m++] = {k, row.center - sigma * rhs_fu(u[k], node.x, node.y, eps)};
        for (int d = 0; d < 4; ++d)
            if (node.neighbor[d] >= 0) entries[m++] = {node.neighbor[d], row.w[d]};
        std::sort(entries.begin(), entries.begin() + m);
        for (int e = 0; e < m; ++e) {
            cols.push_back(entries[e].first);
            vals.push_back(entries[e].second);
        }
        offsets[k + 1] = static_cast<int>(cols.size());
    }
    return SparseMatrix(n, std::move(offsets), std::move(cols), std::move(vals));
}

} // namespace swell
