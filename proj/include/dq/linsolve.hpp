#pragma once

#include "dq/scalar.hpp"

#include <optional>
#include <vector>

namespace dq {

using Vec = std::vector<Scalar>;
using Mat = std::vector<std::vector<Scalar>>;

/// Result of an exact linear solve A x = b.  Exactly one of `solution`
/// or `residual_witness` is present: a witness y satisfies y^T A = 0 and
/// y^T b != 0, certifying inconsistency.
struct LinearSolveResult {
    std::optional<Vec> solution;
    std::vector<Vec> kernel_basis;
    std::optional<Vec> residual_witness;
};

/// Exact Gaussian elimination over the rationals.  Deterministic: pivots
/// are chosen as the first nonzero entry in column order, free variables
/// are set to zero in the particular solution.
LinearSolveResult solve_exact(const Mat& a, const Vec& b);

/// Rank of an exact matrix.
int rank(Mat a);

}  // namespace dq
