#include "swell/krylov.hpp"

#include "swell/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace swell {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Jacobi application z = D^-1 r; rows with zero diagonal pass through.
struct Scaling {
    std::vector<double> inv_diag;

    static Scaling make(const SparseMatrix& a, Preconditioner p) {
        Scaling s;
        if (p == Preconditioner::jacobi) {
            s.inv_diag = a.diagonal();
            for (double& d : s.inv_diag) d = d != 0.0 ? 1.0 / d : 1.0;
        }
        return s;
    }

    void apply(std::span<const double> r, std::vector<double>& z) const {
        if (inv_diag.empty()) {
            z.assign(r.begin(), r.end());
        } else {
            z.resize(r.size());
            for (std::size_t k = 0; k < r.size(); ++k) z[k] = inv_diag[k] * r[k];
        }
    }
};

void check_dims(const SparseMatrix& a, std::span<const double> b, double tol) {
    if (b.size() != static_cast<std::size_t>(a.size()))
        fail(ErrorCode::dimension_mismatch, "rhs length != matrix dimension");
    if (!(tol > 0.0))
        fail(ErrorCode::invalid_config, "linear tolerance must be positive");
}

double true_relative_residual(const SparseMatrix& a, std::span<const double> x,
                              std::span<const double> b, double bnorm) {
    std::vector<double> ax = spmv(a, x);
    for (std::size_t k = 0; k < ax.size(); ++k) ax[k] -= b[k];
    return bnorm > 0.0 ? norm2(ax) / bnorm : norm2(ax);
}

} // namespace

const char* method_name(KrylovMethod m) {
    return m == KrylovMethod::cg ? "CG" : "BiCGSTAB";
}

LinearSolveResult solve_cg(const SparseMatrix& a, std::span<const double> b,
                           double tol, int max_iter, Preconditioner precond) {
    check_dims(a, b, tol);
    const int n = a.size();
    const Scaling scale = Scaling::make(a, precond);

    LinearSolveResult out;
    out.stats.method = KrylovMethod::cg;
    out.x.assign(n, 0.0);

    const double bnorm = norm2(b);
    out.stats.residual_history.push_back(bnorm);
    if (bnorm == 0.0) return out;

    std::vector<double> r(b.begin(), b.end()), z, p, ap;
    scale.apply(r, z);
    p = z;
    double rz = dot(r, z);

    for (int it = 1; it <= max_iter; ++it) {
        ap = spmv(a, p);
        const double pap = dot(p, ap);
        if (!(pap > 0.0))
            fail(ErrorCode::indefinite_breakdown,
                 "p'Ap = " + std::to_string(pap) + " at iteration " + std::to_string(it));
        const double alpha = rz / pap;
        for (int k = 0; k < n; ++k) out.x[k] += alpha * p[k];
        for (int k = 0; k < n; ++k) r[k] -= alpha * ap[k];
        const double rnorm = norm2(r);
        out.stats.residual_history.push_back(rnorm);
        out.stats.iterations = it;
        if (rnorm <= tol * bnorm) {
            out.stats.final_relative_residual = true_relative_residual(a, out.x, b, bnorm);
            return out;
        }
        scale.apply(r, z);
        const double rz_next = dot(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (int k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
    }
    fail(ErrorCode::not_converged,
         std::string("CG: ") + std::to_string(max_iter) + " iterations, relative residual " +
             std::to_string(out.stats.residual_history.back() / bnorm));
}

LinearSolveResult solve_bicgstab(const SparseMatrix& a, std::span<const double> b,
                                 double tol, int max_iter, Preconditioner precond) {
    check_dims(a, b, tol);
    const int n = a.size();
    const Scaling scale = Scaling::make(a, precond);

    LinearSolveResult out;
    out.stats.method = KrylovMethod::bicgstab;
    out.x.assign(n, 0.0);

    const double bnorm = norm2(b);
    out.stats.residual_history.push_back(bnorm);
    if (bnorm == 0.0) return out;

    std::vector<double> r(b.begin(), b.end());
    const std::vector<double> rhat = r;
    std::vector<double> p(n, 0.0), v(n, 0.0), phat, shat, s(n), t;
    double rho = 1.0, alpha = 1.0, omega = 1.0;
    const double tiny = std::numeric_limits<double>::min() / tol;

    for (int it = 1; it <= max_iter; ++it) {
        const double rho_next = dot(rhat, r);
        if (std::abs(rho_next) < tiny * bnorm * bnorm || omega == 0.0)
            fail(ErrorCode::breakdown, "rho ~ 0 at iteration " + std::to_string(it));
        const double beta = (rho_next / rho) * (alpha / omega);
        rho = rho_next;
        for (int k = 0; k < n; ++k) p[k] = r[k] + beta * (p[k] - omega * v[k]);
        scale.apply(p, phat);
        v = spmv(a, phat);
        const double rhat_v = dot(rhat, v);
        if (rhat_v == 0.0)
            fail(ErrorCode::breakdown, "rhat'v = 0 at iteration " + std::to_string(it));
        alpha = rho / rhat_v;
        for (int k = 0; k < n; ++k) s[k] = r[k] - alpha * v[k];
        out.stats.iterations = it;
        if (norm2(s) <= tol * bnorm) {
            for (int k = 0; k < n; ++k) out.x[k] += alpha * phat[k];
            out.stats.residual_history.push_back(norm2(s));
            out.stats.final_relative_residual = true_relative_residual(a, out.x, b, bnorm);
            return out;
        }
        scale.apply(s, shat);
        t = spmv(a, shat);
        const double tt = dot(t, t);
        if (tt == 0.0)
            fail(ErrorCode::breakdown, "t't = 0 at iteration " + std::to_string(it));
        omega = dot(t, s) / tt;
        for (int k = 0; k < n; ++k) out.x[k] += alpha * phat[k] + omega * shat[k];
        for (int k = 0; k < n; ++k) r[k] = s[k] - omega * t[k];
        const double rnorm = norm2(r);
        out.stats.residual_history.push_back(rnorm);
        if (rnorm <= tol * bnorm) {
            out.stats.final_relative_residual = true_relative_residual(a, out.x, b, bnorm);
            return out;
        }
    }
    fail(ErrorCode::not_converged,
         std::string("BiCGSTAB: ") + std::to_string(max_iter) +
             " iterations, relative residual " +
             std::to_string(out.stats.residual_history.back() / bnorm));
}

} // namespace swell
