#include "swell/stencil.hpp"

#include "swell/error.hpp"

namespace swell {

Stencil assemble_laplacian(const Grid& grid) {
    const double h = grid.spacing();
    std::vector<StencilRow> rows;
    rows.reserve(grid.nodes().size());
    for (const GridNode& node : grid.nodes()) {
        StencilRow row{0.0, {0.0, 0.0, 0.0, 0.0}};
        // d2/dx2 with arms (tw, te): 2/h^2 * [ u_W/(tw(tw+te)) - u_C/(tw te) + u_E/(te(tw+te)) ]
        const double te = node.theta[dir_e], tw = node.theta[dir_w];
        const double tn = node.theta[dir_n], ts = node.theta[dir_s];
        const double c = 2.0 / (h * h);
        row.w[dir_e] = c / (te * (te + tw));
        row.w[dir_w] = c / (tw * (te + tw));
        row.w[dir_n] = c / (tn * (tn + ts));
        row.w[dir_s] = c / (ts * (tn + ts));
        row.center = -c / (te * tw) - c / (tn * ts);
        rows.push_back(row);
    }
    return Stencil(grid, std::move(rows));
}

Field apply_laplacian(const Stencil& lap, const Field& u, std::span<const double> bvals) {
    const Grid& grid = lap.grid();
    if (&u.grid() != &grid)
        fail(ErrorCode::grid_mismatch, "field and stencil grids differ");
    if (bvals.size() != grid.boundary_points().size())
        fail(ErrorCode::dimension_mismatch, "boundary value count mismatch");

    Field out(grid);
    for (int k = 0; k < grid.interior_count(); ++k) {
        const GridNode& node = grid.node(k);
        const StencilRow& row = lap.row(k);
        double acc = row.center * u[k];
        for (int d = 0; d < 4; ++d) {
            const double v = node.neighbor[d] >= 0 ? u[node.neighbor[d]]
                                                   : bvals[node.boundary[d]];
            acc += row.w[d] * v;
        }
        out[k] = acc;
    }
    return out;
}

} // namespace swell
