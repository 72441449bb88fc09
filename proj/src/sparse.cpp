#include "swell/sparse.hpp"

#include "swell/error.hpp"

#include <algorithm>
#include <cmath>

namespace swell {

SparseMatrix::SparseMatrix(int n, std::vector<int> offsets, std::vector<int> cols,
                           std::vector<double> vals)
    : n_(n), offsets_(std::move(offsets)), cols_(std::move(cols)), vals_(std::move(vals)) {
    check();
}

void SparseMatrix::check() const {
    if (n_ < 0 || offsets_.size() != static_cast<std::size_t>(n_) + 1 || offsets_[0] != 0 ||
        cols_.size() != vals_.size() ||
        offsets_.back() != static_cast<int>(cols_.size()))
        fail(ErrorCode::dimension_mismatch, "inconsistent CSR arrays");
    for (int r = 0; r < n_; ++r) {
        if (offsets_[r] > offsets_[r + 1])
            fail(ErrorCode::dimension_mismatch, "CSR offsets decrease");
        for (int k = offsets_[r]; k < offsets_[r + 1]; ++k) {
            if (cols_[k] < 0 || cols_[k] >= n_)
                fail(ErrorCode::dimension_mismatch, "CSR column out of range");
            if (k > offsets_[r] && cols_[k] <= cols_[k - 1])
                fail(ErrorCode::dimension_mismatch, "CSR columns not strictly increasing");
            if (!std::isfinite(vals_[k]))
                fail(ErrorCode::dimension_mismatch, "CSR value not finite");
        }
    }
}

SparseMatrix SparseMatrix::from_triplets(int n, std::vector<Triplet> triplets) {
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    SparseMatrix m;
    m.n_ = n;
    m.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const Triplet& t : triplets)
        if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
            fail(ErrorCode::dimension_mismatch, "triplet index out of range");
    for (std::size_t k = 0; k < triplets.size();) {
        std::size_t e = k + 1;
        double sum = triplets[k].value;
        while (e < triplets.size() && triplets[e].row == triplets[k].row &&
               triplets[e].col == triplets[k].col)
            sum += triplets[e++].value;
        m.cols_.push_back(triplets[k].col);
        m.vals_.push_back(sum);
        ++m.offsets_[static_cast<std::size_t>(triplets[k].row) + 1];
        k = e;
    }
    for (int r = 0; r < n; ++r) m.offsets_[r + 1] += m.offsets_[r];
    m.check();
    return m;
}

std::vector<double> SparseMatrix::diagonal() const {
    std::vector<double> d(n_, 0.0);
    for (int r = 0; r < n_; ++r)
        for (int k = offsets_[r]; k < offsets_[r + 1]; ++k)
            if (cols_[k] == r) d[r] = vals_[k];
    return d;
}

std::vector<double> SparseMatrix::to_dense() const {
    std::vector<double> d(static_cast<std::size_t>(n_) * n_, 0.0);
    for (int r = 0; r < n_; ++r)
        for (int k = offsets_[r]; k < offsets_[r + 1]; ++k)
            d[static_cast<std::size_t>(r) * n_ + cols_[k]] = vals_[k];
    return d;
}

std::vector<double> spmv(const SparseMatrix& a, std::span<const double> x) {
    if (x.size() != static_cast<std::size_t>(a.size()))
        fail(ErrorCode::dimension_mismatch, "spmv: vector length != matrix dimension");
    std::vector<double> y(a.size());
    const auto& off = a.row_offsets();
    const auto& col = a.col_indices();
    const auto& val = a.values();
    for (int r = 0; r < a.size(); ++r) {
        double acc = 0.0;
        for (int k = off[r]; k < off[r + 1]; ++k) acc += val[k] * x[col[k]];
        y[r] = acc;
    }
    return y;
}

} // namespace swell
