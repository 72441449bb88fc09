#include "swell/radial.hpp"

#include "swell/error.hpp"
#include "swell/semilinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace swell {

void RadialProblem::validate() const {
    if (!(r_in >= 0.0) || !(r_out > r_in))
        fail(ErrorCode::invalid_config, "radial range requires 0 <= r_in < r_out");
    if (n < 16)
        fail(ErrorCode::invalid_config, "radial mesh needs n >= 16");
    if (!(epsilon > 0.0))
        fail(ErrorCode::invalid_config, "epsilon must be positive");
    if (!std::isfinite(u_out))
        fail(ErrorCode::invalid_config, "u_out must be finite");
    if (r_in > 0.0 && !u_in)
        fail(ErrorCode::invalid_config, "u_in required when r_in > 0");
    if (r_in == 0.0 && u_in)
        fail(ErrorCode::invalid_config, "u_in is meaningless at r_in = 0 (axis condition applies)");
    if (u_in && !std::isfinite(*u_in))
        fail(ErrorCode::invalid_config, "u_in must be finite");
}

namespace {

struct RadialSystem {
    const RadialProblem& p;
    double dr;
    bool axis;   // unknown at r = 0
    int m;       // unknown count
    // unknown k sits at grid index k + (axis ? 0 : 1)

    double radius(int k) const { return p.r_in + (k + (axis ? 0 : 1)) * dr; }

    // residual with boundary data scaled by sigma
    void residual(const std::vector<double>& u, double sigma, std::vector<double>& out) const {
        const double inv2 = 1.0 / (dr * dr);
        for (int k = 0; k < m; ++k) {
            const double r = radius(k);
            if (axis && k == 0) {
                out[k] = 4.0 * (u[1] - u[0]) * inv2 - sigma * rhs_f(u[0], 0.0, 0.0, p.epsilon);
                continue;
            }
            const double left = k > 0 ? u[k - 1] : sigma * *p.u_in;
            const double right = k < m - 1 ? u[k + 1] : sigma * p.u_out;
            out[k] = (left - 2.0 * u[k] + right) * inv2 +
                     (right - left) / (2.0 * dr * r) -
                     sigma * rhs_f(u[k], r, 0.0, p.epsilon);
        }
    }

    // tridiagonal -J (sub, diag, super)
    void neg_jacobian(const std::vector<double>& u, double sigma, std::vector<double>& sub,
                      std::vector<double>& diag, std::vector<double>& sup) const {
        const double inv2 = 1.0 / (dr * dr);
        for (int k = 0; k < m; ++k) {
            const double r = radius(k);
            if (axis && k == 0) {
                diag[k] = 4.0 * inv2 + sigma * rhs_fu(u[0], 0.0, 0.0, p.epsilon);
                sup[k] = -4.0 * inv2;
                sub[k] = 0.0;
                continue;
            }
            sub[k] = -(inv2 - 1.0 / (2.0 * dr * r));
            diag[k] = 2.0 * inv2 + sigma * rhs_fu(u[k], r, 0.0, p.epsilon);
            sup[k] = -(inv2 + 1.0 / (2.0 * dr * r));
        }
    }
};

// Thomas solve; the systems here are diagonally dominant, no pivoting.
void tridiag_solve(std::vector<double> sub, std::vector<double> diag, std::vector<double> sup,
                   std::vector<double>& rhs) {
    const int m = static_cast<int>(rhs.size());
    for (int k = 1; k < m; ++k) {
        const double w = sub[k] / diag[k - 1];
        diag[k] -= w * sup[k - 1];
        rhs[k] -= w * rhs[k - 1];
    }
    rhs[m - 1] /= diag[m - 1];
    for (int k = m - 2; k >= 0; --k) rhs[k] = (rhs[k] - sup[k] * rhs[k + 1]) / diag[k];
}

double inf_norm(const std::vector<double>& v) {
    double n = 0.0;
    for (double x : v) n = std::max(n, std::abs(x));
    return n;
}

// Damped Newton at one sigma; mirrors the 2-D rules (strict decrease, exp
// guard on trials, stop at max(1e-10 eps^-2, 1e-12 ||R0||, rounding floor)).
int radial_newton(const RadialSystem& sys, double sigma, std::vector<double>& u,
                  double* final_residual) {
    constexpr int max_newton = 50, max_backtracks = 30;
    const int m = sys.m;
    std::vector<double> r(m), rt(m), trial(m), sub(m), diag(m), sup(m), du;

    sys.residual(u, sigma, r);
    double rnorm = inf_norm(r);
    const double tol_base = std::max(1e-10 / (sys.p.epsilon * sys.p.epsilon), 1e-12 * rnorm);
    int iterations = 0;

    // Evaluating the residual amplifies rounding in u by 1/dr^2 through the
    // second difference; below that floor the norm is noise and cannot be
    // driven down (fine meshes on unit-size domains hit this before 1e-10).
    const auto tol_at = [&](const std::vector<double>& v) {
        const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                             std::max(1.0, inf_norm(v)) / (sys.dr * sys.dr);
        return std::max(tol_base, floor);
    };

    while (rnorm > tol_at(u)) {
        if (iterations >= max_newton)
            fail(ErrorCode::newton_max_iter,
                 "radial Newton: no convergence at sigma=" + std::to_string(sigma));
        sys.neg_jacobian(u, sigma, sub, diag, sup);
        du = r;
        tridiag_solve(sub, diag, sup, du);

        double alpha = 1.0;
        bool accepted = false;
        for (int bt = 0; bt <= max_backtracks; ++bt, alpha *= 0.5) {
            bool guarded = true;
            for (int k = 0; k < m; ++k) {
                trial[k] = u[k] + alpha * du[k];
                if (std::abs(trial[k]) > kExpArgGuard) {
                    guarded = false;
                    break;
                }
            }
            if (!guarded) continue;
            sys.residual(trial, sigma, rt);
            const double rtn = inf_norm(rt);
            if (rtn < rnorm) {
                u.swap(trial);
                r.swap(rt);
                rnorm = rtn;
                accepted = true;
                break;
            }
        }
        if (!accepted)
            fail(ErrorCode::newton_stalled,
                 "radial Newton stalled at sigma=" + std::to_string(sigma));
        ++iterations;
    }
    if (final_residual) *final_residual = rnorm;
    return iterations;
}

} // namespace

RadialProfile radial_solve(const RadialProblem& p, RadialReport* report) {
    p.validate();

    RadialSystem sys{p, (p.r_out - p.r_in) / (p.n - 1), p.r_in == 0.0, 0};
    sys.m = p.n - (sys.axis ? 1 : 2);

    std::vector<double> u(sys.m, 0.0);
    int total = 0;
    double final_residual = 0.0;
    double sigma_good = 0.0;

    for (double target : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        std::vector<double> pending{target};
        int inserted = 0;
        while (!pending.empty()) {
            const double s = pending.back();
            try {
                total += radial_newton(sys, s, u, &final_residual);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::newton_stalled &&
                    e.code() != ErrorCode::newton_max_iter)
                    throw;
                const double mid = 0.5 * (sigma_good + s);
                if (++inserted > 8 || mid <= sigma_good || mid >= s)
                    throw ContinuationError(std::string("radial sigma step stalled (") +
                                                e.what() + ")",
                                            sigma_good, p.epsilon);
                pending.push_back(mid);
                continue;
            }
            pending.pop_back();
            sigma_good = s;
        }
    }

    RadialProfile profile;
    profile.dr = sys.dr;
    profile.r.resize(p.n);
    profile.u.resize(p.n);
    for (int i = 0; i < p.n; ++i) profile.r[i] = p.r_in + i * sys.dr;
    if (sys.axis) {
        for (int k = 0; k < sys.m; ++k) profile.u[k] = u[k];
    } else {
        profile.u[0] = *p.u_in;
        for (int k = 0; k < sys.m; ++k) profile.u[k + 1] = u[k];
    }
    profile.u[p.n - 1] = p.u_out;

    if (report) {
        report->converged = true;
        report->total_newton_iterations = total;
        report->final_residual = final_residual;
    }
    return profile;
}

std::vector<double> radial_derivative(const std::vector<double>& profile, double dr) {
    const int n = static_cast<int>(profile.size());
    if (n < 3)
        fail(ErrorCode::too_short, "derivative needs at least 3 samples");
    std::vector<double> d(n);
    d[0] = (-3.0 * profile[0] + 4.0 * profile[1] - profile[2]) / (2.0 * dr);
    for (int i = 1; i < n - 1; ++i) d[i] = (profile[i + 1] - profile[i - 1]) / (2.0 * dr);
    d[n - 1] = (3.0 * profile[n - 1] - 4.0 * profile[n - 2] + profile[n - 3]) / (2.0 * dr);
    return d;
}

double interpolate_radial(const RadialProfile& profile, double r) {
    const int n = static_cast<int>(profile.r.size());
    const double r0 = profile.r.front(), r1 = profile.r.back();
    if (r < r0 - 1e-9 * (r1 - r0) || r > r1 + 1e-9 * (r1 - r0))
        fail(ErrorCode::invalid_config, "radius outside profile range");
    const double t = std::clamp((r - r0) / profile.dr, 0.0, double(n - 1));
    const int i = std::min(static_cast<int>(t), n - 2);
    const double w = t - i;
    return (1.0 - w) * profile.u[i] + w * profile.u[i + 1];
}

double monotonicity_tolerance(const RadialProfile& profile) {
    const int n = static_cast<int>(profile.u.size());
    double m = 0.0;
    for (int i = 1; i + 1 < n; ++i)
        m = std::max(m, std::abs(profile.u[i + 1] - 2.0 * profile.u[i] + profile.u[i - 1]));
    m /= profile.dr * profile.dr;
    return std::max(10.0 * profile.dr * profile.dr * m, 1e-8);
}

} // namespace swell
