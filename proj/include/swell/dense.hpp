#pragma once

#include "swell/sparse.hpp"

#include <vector>

namespace swell {

// Dense LU with partial pivoting.  Reference path only: the verify suite and
// unit tests use it as the oracle for the Krylov solvers on small systems.
std::vector<double> dense_solve(std::vector<double> a_row_major, std::vector<double> b);

std::vector<double> dense_solve(const SparseMatrix& a, const std::vector<double>& b);

} // namespace swell
