#pragma once

#include "swell/field.hpp"
#include "swell/grid.hpp"

#include <array>
#include <span>
#include <vector>

namespace swell {

// One Shortley-Weller row: center weight plus one weight per direction.  The
// directional weight multiplies the interior neighbor value when the arm is
// full, or the Dirichlet value at the arm's boundary point otherwise.
struct StencilRow {
    double center;
    std::array<double, 4> w;
};

class Stencil {
public:
    Stencil(const Grid& grid, std::vector<StencilRow> rows)
        : grid_(&grid), rows_(std::move(rows)) {}

    const Grid& grid() const { return *grid_; }
    const std::vector<StencilRow>& rows() const { return rows_; }
    const StencilRow& row(int k) const { return rows_[k]; }

private:
    const Grid* grid_;
    std::vector<StencilRow> rows_;
};

Stencil assemble_laplacian(const Grid& grid);

// Discrete Laplacian of u with the given Dirichlet data on the grid's
// boundary points.
Field apply_laplacian(const Stencil& lap, const Field& u, std::span<const double> bvals);

} // namespace swell
