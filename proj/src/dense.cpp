#include "swell/dense.hpp"

#include "swell/error.hpp"

#include <cmath>
#include <utility>

namespace swell {

std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    if (a.size() != n * n)
        fail(ErrorCode::dimension_mismatch, "dense_solve: matrix/vector size mismatch");

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(a[r * n + k]) > std::abs(a[piv * n + k])) piv = r;
        if (a[piv * n + k] == 0.0)
            fail(ErrorCode::breakdown, "dense_solve: singular matrix");
        if (piv != k) {
            for (std::size_t c = k; c < n; ++c) std::swap(a[k * n + c], a[piv * n + c]);
            std::swap(b[k], b[piv]);
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const double m = a[r * n + k] / a[k * n + k];
            if (m == 0.0) continue;
            for (std::size_t c = k + 1; c < n; ++c) a[r * n + c] -= m * a[k * n + c];
            b[r] -= m * b[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t c = k + 1; c < n; ++c) s -= a[k * n + c] * b[c];
        b[k] = s / a[k * n + k];
    }
    return b;
}

std::vector<double> dense_solve(const SparseMatrix& a, const std::vector<double>& b) {
    if (a.size() != static_cast<int>(b.size()))
        fail(ErrorCode::dimension_mismatch, "dense_solve: matrix/vector size mismatch");
    return dense_solve(a.to_dense(), b);
}

} // namespace swell
