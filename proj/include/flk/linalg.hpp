#pragma once

#include <cstddef>
#include <vector>

#include "flk/errors.hpp"

namespace flk {

/// Dense matrix over an exact field element type (FieldElement or
/// GenericScalar): rows of equal length.
template <class T>
using Mat = std::vector<std::vector<T>>;

/// In-place reduced row echelon form; returns pivot column list.
template <class T>
std::vector<size_t> rref(Mat<T>& M) {
    std::vector<size_t> pivots;
    if (M.empty()) return pivots;
    size_t rows = M.size(), cols = M[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && M[sel][c].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(M[sel], M[r]);
        T inv = M[r][c];
        for (size_t k = c; k < cols; ++k) M[r][k] = M[r][k] / inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || M[i][c].is_zero()) continue;
            T f = M[i][c];
            for (size_t k = c; k < cols; ++k) M[i][k] = M[i][k] - f * M[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T>
size_t rank(Mat<T> M) {
    return rref(M).size();
}

/// Basis of the right null space of M (vectors x with M x = 0).
/// `zero`/`one` are exemplars of the scalar type.
template <class T>
Mat<T> nullspace(Mat<T> M, const T& zero, const T& one) {
    if (M.empty()) return {};
    size_t cols = M[0].size();
    std::vector<size_t> pivots = rref(M);
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    Mat<T> basis;
    for (size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<T> v(cols, zero);
        v[fc] = one;
        for (size_t pr = 0; pr < pivots.size(); ++pr)
            v[pivots[pr]] = zero - M[pr][fc];
        basis.push_back(v);
    }
    return basis;
}

/// Solve A x = b where the columns of A are given as `cols`.  Returns true and
/// fills x with one solution when consistent.  If `require_unique`, throws on
/// an underdetermined system.
template <class T>
bool solve_in_span(const Mat<T>& cols, const std::vector<T>& b, std::vector<T>& x,
                   const T& zero, bool require_unique = false) {
    size_t n = b.size(), m = cols.size();
    Mat<T> aug(n, std::vector<T>(m + 1, zero));
    for (size_t j = 0; j < m; ++j)
        for (size_t i = 0; i < n; ++i) aug[i][j] = cols[j][i];
    for (size_t i = 0; i < n; ++i) aug[i][m] = b[i];
    std::vector<size_t> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m) return false;  // inconsistent
    if (require_unique && pivots.size() < m)
        throw Error("solve_in_span: solution not unique");
    x.assign(m, zero);
    for (size_t pr = 0; pr < pivots.size(); ++pr) x[pivots[pr]] = aug[pr][m];
    return true;
}

}  // namespace flk
