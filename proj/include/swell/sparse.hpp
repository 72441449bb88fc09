#pragma once

#include <span>
#include <vector>

namespace swell {

struct Triplet {
    int row, col;
    double value;
};

class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(int n, std::vector<int> offsets, std::vector<int> cols,
                 std::vector<double> vals);

    // Duplicate (row,col) entries are summed; columns end up sorted per row.
    static SparseMatrix from_triplets(int n, std::vector<Triplet> triplets);

    int size() const { return n_; }
    const std::vector<int>& row_offsets() const { return offsets_; }
    const std::vector<int>& col_indices() const { return cols_; }
    const std::vector<double>& values() const { return vals_; }

    std::vector<double> diagonal() const;
    std::vector<double> to_dense() const; // row-major n*n, test/oracle duty

private:
    void check() const;

    int n_ = 0;
    std::vector<int> offsets_{0};
    std::vector<int> cols_;
    std::vector<double> vals_;
};

std::vector<double> spmv(const SparseMatrix& a, std::span<const double> x);

} // namespace swell
