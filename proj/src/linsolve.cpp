#include "dq/linsolve.hpp"

namespace dq {

LinearSolveResult solve_exact(const Mat& a, const Vec& b) {
    const size_t rows = a.size();
    const size_t cols = rows == 0 ? 0 : a[0].size();
    if (b.size() != rows) throw InputError("solve_exact: dimension mismatch");
    for (const auto& row : a)
        if (row.size() != cols) throw InputError("solve_exact: ragged matrix");

    // Augmented system [A | b | E] with E tracking row operations, so an
    // inconsistent row directly yields the certificate y with y^T A = 0.
    Mat m(rows);
    for (size_t i = 0; i < rows; ++i) {
        m[i] = a[i];
        m[i].push_back(b[i]);
        for (size_t j = 0; j < rows; ++j) m[i].push_back(Scalar(i == j ? 1 : 0));
    }

    std::vector<int> pivot_col_of_row;
    std::vector<bool> is_pivot_col(cols, false);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Scalar inv = Scalar(1) / m[r][c];
        for (auto& v : m[r]) v *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Scalar f = m[i][c];
            for (size_t j = 0; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col_of_row.push_back(static_cast<int>(c));
        is_pivot_col[c] = true;
        ++r;
    }

    LinearSolveResult res;
    // Inconsistent row: zero A-part but nonzero b-part.
    for (size_t i = r; i < rows; ++i) {
        if (m[i][cols] != 0) {
            Vec y(rows);
            for (size_t j = 0; j < rows; ++j) y[j] = m[i][cols + 1 + j];
            res.residual_witness = y;
            return res;
        }
    }

    Vec x(cols, Scalar(0));
    for (size_t i = 0; i < pivot_col_of_row.size(); ++i) x[pivot_col_of_row[i]] = m[i][cols];
    res.solution = x;

    for (size_t c = 0; c < cols; ++c) {
        if (is_pivot_col[c]) continue;
        Vec v(cols, Scalar(0));
        v[c] = Scalar(1);
        for (size_t i = 0; i < pivot_col_of_row.size(); ++i) v[pivot_col_of_row[i]] = -m[i][c];
        res.kernel_basis.push_back(std::move(v));
    }
    return res;
}

int rank(Mat a) {
    const size_t rows = a.size();
    const size_t cols = rows == 0 ? 0 : a[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            Scalar f = a[i][c] / a[r][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return static_cast<int>(r);
}

}  // namespace dq
