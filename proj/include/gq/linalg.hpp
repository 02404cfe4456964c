#pragma once

// Small dense linear algebra over a gq::Field, on raw element codes.
// Row-vector convention throughout: maps act on the right, x -> x * M.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "gq/field.hpp"

namespace gq {

using Vec4 = std::array<Fel, 4>;
using Mat4 = std::array<Vec4, 4>;
using Mat24 = std::array<Vec4, 2>; // two basis rows of a 2-subspace

inline Vec4 vec_add(const Field& F, const Vec4& a, const Vec4& b) {
    return {F.add(a[0], b[0]), F.add(a[1], b[1]), F.add(a[2], b[2]), F.add(a[3], b[3])};
}

inline Vec4 vec_scale(const Field& F, Fel c, const Vec4& a) {
    return {F.mul(c, a[0]), F.mul(c, a[1]), F.mul(c, a[2]), F.mul(c, a[3])};
}

inline bool vec_is_zero(const Vec4& a) { return a[0] == 0 && a[1] == 0 && a[2] == 0 && a[3] == 0; }

// x * M for a row vector x
inline Vec4 vec_mat(const Field& F, const Vec4& x, const Mat4& M) {
    Vec4 r{0, 0, 0, 0};
    for (int j = 0; j < 4; ++j) {
        Fel s = 0;
        for (int i = 0; i < 4; ++i) s = F.add(s, F.mul(x[i], M[i][j]));
        r[j] = s;
    }
    return r;
}

inline Mat4 mat_mul(const Field& F, const Mat4& A, const Mat4& B) {
    Mat4 R{};
    for (int i = 0; i < 4; ++i) R[i] = vec_mat(F, A[i], B);
    return R;
}

inline Mat4 mat_transpose(const Mat4& A) {
    Mat4 R{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) R[j][i] = A[i][j];
    return R;
}

inline Mat4 mat_identity() {
    Mat4 R{};
    for (int i = 0; i < 4; ++i) R[i][i] = 1;
    return R;
}

// entrywise frobenius a -> a^(p^e)
inline Mat4 mat_frobenius(const Field& F, const Mat4& A, int e) {
    Mat4 R{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) R[i][j] = F.frobenius(A[i][j], e);
    return R;
}

inline Vec4 vec_frobenius(const Field& F, const Vec4& x, int e) {
    return {F.frobenius(x[0], e), F.frobenius(x[1], e), F.frobenius(x[2], e), F.frobenius(x[3], e)};
}

// bilinear form value x G y^T
inline Fel form_value(const Field& F, const Mat4& G, const Vec4& x, const Vec4& y) {
    Fel s = 0;
    for (int i = 0; i < 4; ++i) {
        if (x[i] == 0) continue;
        Fel row = 0;
        for (int j = 0; j < 4; ++j) row = F.add(row, F.mul(G[i][j], y[j]));
        s = F.add(s, F.mul(x[i], row));
    }
    return s;
}

Fel mat_det(const Field& F, const Mat4& A);
std::optional<Mat4> mat_inverse(const Field& F, const Mat4& A);

// --- generic small matrices as vector<vector<Fel>> (for solvers) ---

struct RrefResult {
    std::vector<std::vector<Fel>> mat; // reduced row echelon form
    std::vector<int> pivot_cols;
    int rank = 0;
};

RrefResult rref(const Field& F, std::vector<std::vector<Fel>> rows);

// basis of the right kernel {x : M x^T = 0}, one vector per row
std::vector<std::vector<Fel>> kernel_basis(const Field& F, const std::vector<std::vector<Fel>>& rows, int ncols);

} // namespace gq
