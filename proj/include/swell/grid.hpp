#pragma once

#include "swell/domain.hpp"

#include <array>
#include <vector>

namespace swell {

// Arms shorter than kThetaMin*h snap their node onto the boundary
// (degenerate-arm rule): the node leaves the unknown set and carries the
// Dirichlet value at its own position.
inline constexpr double kThetaMin = 1e-6;

enum Direction : int { dir_e = 0, dir_w = 1, dir_n = 2, dir_s = 3 };

inline constexpr std::array<std::array<int, 2>, 4> kDirOffset{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

struct BoundaryPoint {
    double x, y;
};

// Exactly one of neighbor[d] / boundary[d] is >= 0 per direction.
struct GridNode {
    int i, j;
    double x, y;
    std::array<double, 4> theta;    // arm fraction in (0,1], 1 toward interior neighbors
    std::array<int, 4> neighbor;    // interior node index or -1
    std::array<int, 4> boundary;    // boundary point index or -1
};

class Grid {
public:
    double spacing() const { return h_; }
    int interior_count() const { return static_cast<int>(nodes_.size()); }
    const std::vector<GridNode>& nodes() const { return nodes_; }
    const GridNode& node(int k) const { return nodes_[k]; }
    const std::vector<BoundaryPoint>& boundary_points() const { return bps_; }

    // True when every arm is full; such grids yield a symmetric Laplacian.
    bool grid_aligned() const { return grid_aligned_; }

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double x_of(int i) const { return x0_ + i * h_; }
    double y_of(int j) const { return y0_ + j * h_; }

    // Interior node index at lattice (i,j), or -1.
    int node_at(int i, int j) const {
        if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return -1;
        return index_[static_cast<std::size_t>(j) * nx_ + i];
    }

private:
    friend Grid build_grid(const DomainSpec& domain, double h);

    double h_ = 0.0;
    double x0_ = 0.0, y0_ = 0.0;
    int nx_ = 0, ny_ = 0;
    bool grid_aligned_ = true;
    std::vector<GridNode> nodes_;
    std::vector<BoundaryPoint> bps_;
    std::vector<int> index_;
};

Grid build_grid(const DomainSpec& domain, double h);

// Dirichlet data at every grid boundary point, scaled by sigma.
std::vector<double> boundary_values(const Grid& grid, const BoundarySpec& g, double sigma = 1.0);

} // namespace swell
