#pragma once

#include "swell/grid.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace swell {

// One value per interior node.  A field may additionally carry the Dirichlet
// trace it was solved with (one value per grid boundary point), which lets
// diagnostics take one-sided differences across short arms.
class Field {
public:
    Field() = default;
    explicit Field(const Grid& grid, double value = 0.0)
        : grid_(&grid), values_(grid.interior_count(), value) {}
    Field(const Grid& grid, std::vector<double> values)
        : grid_(&grid), values_(std::move(values)) {}

    const Grid& grid() const { return *grid_; }
    int size() const { return static_cast<int>(values_.size()); }
    double operator[](int k) const { return values_[k]; }
    double& operator[](int k) { return values_[k]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    bool has_boundary_trace() const { return !trace_.empty(); }
    const std::vector<double>& boundary_trace() const { return trace_; }
    void set_boundary_trace(std::vector<double> trace) { trace_ = std::move(trace); }

private:
    const Grid* grid_ = nullptr;
    std::vector<double> values_;
    std::vector<double> trace_;
};

inline double max_abs(const Field& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

inline bool all_finite(const Field& f) {
    for (double v : f.values())
        if (!std::isfinite(v)) return false;
    return true;
}

} // namespace swell
