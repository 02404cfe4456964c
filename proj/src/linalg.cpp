#include "gq/linalg.hpp"

namespace gq {

Fel mat_det(const Field& F, const Mat4& A) {
    // Gaussian elimination, tracking the product of pivots.
    Mat4 M = A;
    Fel det = 1;
    for (int col = 0, row = 0; col < 4 && row < 4; ++col) {
        int piv = -1;
        for (int r = row; r < 4; ++r)
            if (M[r][col] != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != row) {
            std::swap(M[piv], M[row]);
            det = F.neg(det);
        }
        det = F.mul(det, M[row][col]);
        Fel inv = F.inv(M[row][col]);
        for (int r = row + 1; r < 4; ++r) {
            if (M[r][col] == 0) continue;
            Fel factor = F.mul(M[r][col], inv);
            for (int c = col; c < 4; ++c)
                M[r][c] = F.sub(M[r][c], F.mul(factor, M[row][c]));
        }
        ++row;
    }
    return det;
}

std::optional<Mat4> mat_inverse(const Field& F, const Mat4& A) {
    // Gauss-Jordan on [A | I].
    Mat4 M = A, R = mat_identity();
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (M[r][col] != 0) { piv = r; break; }
        if (piv < 0) return std::nullopt;
        std::swap(M[piv], M[col]);
        std::swap(R[piv], R[col]);
        Fel inv = F.inv(M[col][col]);
        for (int c = 0; c < 4; ++c) {
            M[col][c] = F.mul(M[col][c], inv);
            R[col][c] = F.mul(R[col][c], inv);
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col || M[r][col] == 0) continue;
            Fel factor = M[r][col];
            for (int c = 0; c < 4; ++c) {
                M[r][c] = F.sub(M[r][c], F.mul(factor, M[col][c]));
                R[r][c] = F.sub(R[r][c], F.mul(factor, R[col][c]));
            }
        }
    }
    return R;
}

RrefResult rref(const Field& F, std::vector<std::vector<Fel>> rows) {
    RrefResult out;
    if (rows.empty()) return out;
    size_t ncols = rows[0].size();
    size_t row = 0;
    for (size_t col = 0; col < ncols && row < rows.size(); ++col) {
        size_t piv = row;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[row]);
        Fel inv = F.inv(rows[row][col]);
        for (size_t c = 0; c < ncols; ++c) rows[row][c] = F.mul(rows[row][c], inv);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == row || rows[r][col] == 0) continue;
            Fel factor = rows[r][col];
            for (size_t c = 0; c < ncols; ++c)
                rows[r][c] = F.sub(rows[r][c], F.mul(factor, rows[row][c]));
        }
        out.pivot_cols.push_back(int(col));
        ++row;
    }
    out.rank = int(row);
    out.mat = std::move(rows);
    return out;
}

std::vector<std::vector<Fel>> kernel_basis(const Field& F, const std::vector<std::vector<Fel>>& rows, int ncols) {
    RrefResult r = rref(F, rows);
    std::vector<bool> is_pivot(ncols, false);
    for (int c : r.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Fel>> basis;
    for (int free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Fel> v(ncols, 0);
        v[free] = 1;
        // back-substitute pivot coordinates
        for (size_t i = 0; i < r.pivot_cols.size(); ++i) {
            int pc = r.pivot_cols[i];
            v[pc] = F.neg(r.mat[i][free]);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace gq
