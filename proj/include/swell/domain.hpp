#pragma once

#include <functional>
#include <variant>
#include <vector>

namespace swell {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct Rectangle {
    double x_min, x_max;
    double y_min, y_max;
};

struct Disk {
    Point center;
    double radius;
};

struct Annulus {
    Point center;
    double r_inner;
    double r_outer;
};

// Level-set domain: inside where sdf < 0.  The bounding box must contain the
// zero level set; geometry outside it is ignored.
struct Implicit {
    std::function<double(double, double)> sdf;
    Rectangle bounding_box;
};

using DomainSpec = std::variant<Rectangle, Disk, Annulus, Implicit>;

void validate(const DomainSpec& domain);
Rectangle bounding_box(const DomainSpec& domain);

// Negative strictly inside, positive strictly outside, zero on the boundary.
// Exact signed distance for the analytic shapes, raw sdf value for Implicit.
double signed_value(const DomainSpec& domain, double x, double y);

inline bool is_inside(const DomainSpec& domain, double x, double y) {
    return signed_value(domain, x, y) < 0.0;
}

// First boundary crossing along the ray p + t*(dx,dy), t in (0, h], divided
// by h.  Requires p strictly inside and p + h*(dx,dy) not strictly inside;
// (dx,dy) must be a unit axis direction.  Analytic shapes use closed forms,
// Implicit bisects to ~1e-15 relative.
double arm_fraction(const DomainSpec& domain, double px, double py,
                    double dx, double dy, double h);

struct ZeroBoundary {};
struct ConstantBoundary {
    double value;
};
// g(x,y) = log sqrt(x^2 + y^2); rejects evaluation at the origin.
struct LogRBoundary {};
// g(theta) = a0 + sum_k a[k-1] cos(k theta) + b[k-1] sin(k theta), theta = atan2(y,x).
struct FourierBoundary {
    double a0 = 0.0;
    std::vector<double> a;
    std::vector<double> b;
};

using BoundarySpec = std::variant<ZeroBoundary, ConstantBoundary, LogRBoundary, FourierBoundary>;

void validate(const BoundarySpec& boundary);
double eval_boundary(const BoundarySpec& boundary, double x, double y);

// sup over given points of |grad g| of the planar extension (log_r: 1/r,
// fourier: |g'(theta)|/r).  Used by the gradient-bound diagnostic.
double max_boundary_gradient(const BoundarySpec& boundary, const std::vector<Point>& points);

} // namespace swell
