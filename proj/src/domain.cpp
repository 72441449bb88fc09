#include "swell/domain.hpp"

#include "swell/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace swell {

namespace {

void check_box(const Rectangle& r, const char* what) {
    if (!(std::isfinite(r.x_min) && std::isfinite(r.x_max) &&
          std::isfinite(r.y_min) && std::isfinite(r.y_max)))
        fail(ErrorCode::invalid_config, std::string(what) + " has non-finite extents");
    if (!(r.x_min < r.x_max && r.y_min < r.y_max))
        fail(ErrorCode::invalid_config, std::string(what) + " has empty extent");
}

} // namespace

void validate(const DomainSpec& domain) {
    std::visit([](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Rectangle>) {
            check_box(d, "rectangle");
        } else if constexpr (std::is_same_v<T, Disk>) {
            if (!(std::isfinite(d.radius) && d.radius > 0.0))
                fail(ErrorCode::invalid_config, "disk radius must be positive");
        } else if constexpr (std::is_same_v<T, Annulus>) {
            if (!(std::isfinite(d.r_inner) && std::isfinite(d.r_outer) &&
                  0.0 < d.r_inner && d.r_inner < d.r_outer))
                fail(ErrorCode::invalid_config, "annulus requires 0 < r_inner < r_outer");
        } else if constexpr (std::is_same_v<T, Implicit>) {
            if (!d.sdf)
                fail(ErrorCode::invalid_config, "implicit domain has no sdf");
            check_box(d.bounding_box, "implicit bounding box");
        }
    }, domain);
}

Rectangle bounding_box(const DomainSpec& domain) {
    return std::visit([](const auto& d) -> Rectangle {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Rectangle>) {
            return d;
        } else if constexpr (std::is_same_v<T, Disk>) {
            return {d.center.x - d.radius, d.center.x + d.radius,
                    d.center.y - d.radius, d.center.y + d.radius};
        } else if constexpr (std::is_same_v<T, Annulus>) {
            return {d.center.x - d.r_outer, d.center.x + d.r_outer,
                    d.center.y - d.r_outer, d.center.y + d.r_outer};
        } else {
            return d.bounding_box;
        }
    }, domain);
}

double signed_value(const DomainSpec& domain, double x, double y) {
    return std::visit([&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Rectangle>) {
            return std::max({d.x_min - x, x - d.x_max, d.y_min - y, y - d.y_max});
        } else if constexpr (std::is_same_v<T, Disk>) {
            return std::hypot(x - d.center.x, y - d.center.y) - d.radius;
        } else if constexpr (std::is_same_v<T, Annulus>) {
            const double r = std::hypot(x - d.center.x, y - d.center.y);
            return std::max(d.r_inner - r, r - d.r_outer);
        } else {
            return d.sdf(x, y);
        }
    }, domain);
}

namespace {

// Smallest t > 0 with |p + t*d - c| = radius, or +inf if the ray misses.
// q = |p-c|^2 - radius^2; d is a unit vector.
double ray_circle(double px, double py, double dx, double dy,
                  Point c, double radius) {
    const double ex = px - c.x, ey = py - c.y;
    const double b = ex * dx + ey * dy;
    const double q = ex * ex + ey * ey - radius * radius;
    const double disc = b * b - q;
    if (disc < 0.0) return std::numeric_limits<double>::infinity();
    const double s = std::sqrt(disc);
    const double t1 = -b - s;
    if (t1 > 0.0) return t1;
    const double t2 = -b + s;
    if (t2 > 0.0) return t2;
    return std::numeric_limits<double>::infinity();
}

} // namespace

double arm_fraction(const DomainSpec& domain, double px, double py,
                    double dx, double dy, double h) {
    const double t = std::visit([&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Rectangle>) {
            if (dx > 0.0) return d.x_max - px;
            if (dx < 0.0) return px - d.x_min;
            if (dy > 0.0) return d.y_max - py;
            return py - d.y_min;
        } else if constexpr (std::is_same_v<T, Disk>) {
            return ray_circle(px, py, dx, dy, d.center, d.radius);
        } else if constexpr (std::is_same_v<T, Annulus>) {
            return std::min(ray_circle(px, py, dx, dy, d.center, d.r_inner),
                            ray_circle(px, py, dx, dy, d.center, d.r_outer));
        } else {
            // Bisection keeps sdf(lo) < 0 <= sdf(hi); 60 halvings of [0,h].
            double lo = 0.0, hi = h;
            if (d.sdf(px + h * dx, py + h * dy) < 0.0) return h;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (d.sdf(px + mid * dx, py + mid * dy) < 0.0) lo = mid;
                else hi = mid;
            }
            return 0.5 * (lo + hi);
        }
    }, domain);
    if (!(t > 0.0)) return 0.0;
    return std::min(t / h, 1.0);
}

void validate(const BoundarySpec& boundary) {
    std::visit([](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, ConstantBoundary>) {
            if (!std::isfinite(g.value))
                fail(ErrorCode::invalid_config, "constant boundary value must be finite");
        } else if constexpr (std::is_same_v<T, FourierBoundary>) {
            if (!std::isfinite(g.a0))
                fail(ErrorCode::invalid_config, "fourier a0 must be finite");
            for (double c : g.a)
                if (!std::isfinite(c))
                    fail(ErrorCode::invalid_config, "fourier cosine coefficient must be finite");
            for (double c : g.b)
                if (!std::isfinite(c))
                    fail(ErrorCode::invalid_config, "fourier sine coefficient must be finite");
        }
    }, boundary);
}

double eval_boundary(const BoundarySpec& boundary, double x, double y) {
    return std::visit([&](const auto& g) -> double {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, ZeroBoundary>) {
            return 0.0;
        } else if constexpr (std::is_same_v<T, ConstantBoundary>) {
            return g.value;
        } else if constexpr (std::is_same_v<T, LogRBoundary>) {
            const double r2 = x * x + y * y;
            if (r2 <= 0.0)
                fail(ErrorCode::log_at_origin, "log_r boundary data evaluated at the origin");
            return 0.5 * std::log(r2);
        } else {
            const double theta = std::atan2(y, x);
            double v = g.a0;
            for (std::size_t k = 0; k < g.a.size(); ++k)
                v += g.a[k] * std::cos(double(k + 1) * theta);
            for (std::size_t k = 0; k < g.b.size(); ++k)
                v += g.b[k] * std::sin(double(k + 1) * theta);
            return v;
        }
    }, boundary);
}

double max_boundary_gradient(const BoundarySpec& boundary, const std::vector<Point>& points) {
    return std::visit([&](const auto& g) -> double {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, ZeroBoundary> || std::is_same_v<T, ConstantBoundary>) {
            return 0.0;
        } else if constexpr (std::is_same_v<T, LogRBoundary>) {
            double m = 0.0;
            for (const Point& p : points) {
                const double r = std::hypot(p.x, p.y);
                if (r <= 0.0)
                    fail(ErrorCode::log_at_origin, "log_r boundary data evaluated at the origin");
                m = std::max(m, 1.0 / r);
            }
            return m;
        } else {
            double m = 0.0;
            for (const Point& p : points) {
                const double r = std::hypot(p.x, p.y);
                if (r <= 0.0) continue;
                const double theta = std::atan2(p.y, p.x);
                double dg = 0.0;
                for (std::size_t k = 0; k < g.a.size(); ++k)
                    dg -= double(k + 1) * g.a[k] * std::sin(double(k + 1) * theta);
                for (std::size_t k = 0; k < g.b.size(); ++k)
                    dg += double(k + 1) * g.b[k] * std::cos(double(k + 1) * theta);
                m = std::max(m, std::abs(dg) / r);
            }
            return m;
        }
    }, boundary);
}

} // namespace swell
