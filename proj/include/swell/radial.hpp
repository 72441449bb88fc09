#pragma once

#include <optional>
#include <vector>

namespace swell {

// u'' + u'/r = eps^-2 (e^u - r^2 e^-u) on [r_in, r_out]; u(r_out) = u_out,
// and either u(r_in) = u_in (r_in > 0) or the axis condition u'(0) = 0.
struct RadialProblem {
    double r_in = 0.0;
    double r_out = 1.0;
    double u_out = 0.0;
    std::optional<double> u_in;
    double epsilon = 1.0;
    int n = 4096; // nodes including both endpoints

    void validate() const;
};

struct RadialProfile {
    std::vector<double> r, u; // n entries each, endpoints included
    double dr = 0.0;
};

struct RadialReport {
    bool converged = false;
    int total_newton_iterations = 0;
    double final_residual = 0.0;
};

RadialProfile radial_solve(const RadialProblem& p, RadialReport* report = nullptr);

// Centered differences inside, second-order one-sided at the ends.
std::vector<double> radial_derivative(const std::vector<double>& profile, double dr);

// Linear interpolation of the profile at radius r (must lie within range).
double interpolate_radial(const RadialProfile& profile, double r);

// 10 dr^2 max|u''| (second differences), floored at 1e-8.
double monotonicity_tolerance(const RadialProfile& profile);

} // namespace swell
