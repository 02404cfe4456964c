#include "gq/geometry.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace gq {

std::uint64_t pack_vec4(const Vec4& v) {
    return std::uint64_t(v[0]) | (std::uint64_t(v[1]) << 16) |
           (std::uint64_t(v[2]) << 32) | (std::uint64_t(v[3]) << 48);
}

static std::uint64_t pack_line(const Mat24& rows) {
    // entries are < 256 (q <= 169), so 8 bits each suffice
    std::uint64_t h = 0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 4; ++c) h = (h << 8) | std::uint64_t(rows[r][c] & 0xff);
    return h;
}

ProjPoint normalize_point(const Field& F, const Vec4& v) {
    int lead = -1;
    for (int i = 0; i < 4; ++i)
        if (v[i] != 0) { lead = i; break; }
    if (lead < 0) throw Error("cannot normalize the zero vector");
    Fel inv = F.inv(v[lead]);
    ProjPoint p;
    p.x = vec_scale(F, inv, v);
    return p;
}

ProjLine line_from_rows(const Field& F, const Mat24& rows) {
    std::vector<std::vector<Fel>> m = {
        {rows[0][0], rows[0][1], rows[0][2], rows[0][3]},
        {rows[1][0], rows[1][1], rows[1][2], rows[1][3]}};
    RrefResult r = rref(F, std::move(m));
    if (r.rank != 2) throw Error("line basis is rank-deficient");
    ProjLine l;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 4; ++j) l.rows[i][j] = r.mat[i][j];
    return l;
}

ProjLine line_from_span(const Field& F, const Vec4& a, const Vec4& b) {
    return line_from_rows(F, Mat24{a, b});
}

std::vector<ProjPoint> points_on_line(const Field& F, const ProjLine& l) {
    std::vector<ProjPoint> pts;
    pts.push_back(normalize_point(F, l.rows[0]));
    for (Fel t = 0; t < F.q(); ++t)
        pts.push_back(normalize_point(F, vec_add(F, vec_scale(F, t, l.rows[0]), l.rows[1])));
    std::sort(pts.begin(), pts.end());
    return pts;
}

GramMatrix GramMatrix::checked(const Field& F, const Mat4& m) {
    for (int i = 0; i < 4; ++i) {
        if (m[i][i] != 0) throw Error("gram matrix must have zero diagonal");
        for (int j = 0; j < 4; ++j)
            if (m[i][j] != F.neg(m[j][i]))
                throw Error("gram matrix must satisfy G^T = -G");
    }
    GramMatrix g;
    g.m = m;
    if (mat_det(F, m) == 0) throw Error("gram matrix is degenerate");
    return g;
}

GramMatrix standard_gram(const Field& F) {
    Mat4 m{};
    Fel minus1 = F.neg(1);
    m[0][1] = 1; m[1][0] = minus1;
    m[2][3] = 1; m[3][2] = minus1;
    return GramMatrix::checked(F, m);
}

GramMatrix alternate_gram(const Field& F) {
    Mat4 m{};
    Fel minus1 = F.neg(1);
    m[0][1] = 1; m[1][0] = minus1;
    m[2][3] = minus1; m[3][2] = 1;
    return GramMatrix::checked(F, m);
}

int GQModel::point_index(const ProjPoint& p) const {
    auto it = point_idx_.find(pack_vec4(p.x));
    return it == point_idx_.end() ? -1 : it->second;
}

int GQModel::line_index(const ProjLine& l) const {
    auto it = line_idx_.find(pack_line(l.rows));
    if (it == line_idx_.end()) return -1;
    for (int idx : it->second)
        if (lines[idx] == l) return idx;
    return -1;
}

bool GQModel::is_totally_isotropic(const Mat24& rows) const {
    // for an alternating form a 2-space is totally isotropic iff the two
    // basis vectors pair to zero
    return form_value(*field, gram.m, rows[0], rows[1]) == 0;
}

GQModel build_w3(FieldPtr field, const GramMatrix& gram) {
    const Field& F = *field;
    int q = F.q();
    GQModel M;
    M.field = field;
    M.gram = GramMatrix::checked(F, gram.m); // re-validate

    // all projective points, canonical and sorted: leading coordinate 1
    for (int lead = 0; lead < 4; ++lead) {
        // enumerate (0,..,0,1,*,..,*) with q^(3-lead) tails
        long long tails = 1;
        for (int i = lead + 1; i < 4; ++i) tails *= q;
        for (long long t = 0; t < tails; ++t) {
            Vec4 v{};
            v[lead] = 1;
            long long rest = t;
            for (int i = 3; i > lead; --i) { v[i] = Fel(rest % q); rest /= q; }
            M.points.push_back(ProjPoint{v});
        }
    }
    std::sort(M.points.begin(), M.points.end());
    int N = int(M.points.size());
    for (int i = 0; i < N; ++i) M.point_idx_[pack_vec4(M.points[i].x)] = i;

    // totally isotropic lines: through each point p, the isotropic lines are
    // exactly the 2-spaces spanned by p and any y in p-perp independent of p
    std::unordered_set<std::uint64_t> seen;
    std::vector<ProjLine> raw;
    for (const ProjPoint& pt : M.points) {
        // p-perp: kernel of the single linear functional y -> f(p, y)
        std::vector<Fel> functional(4);
        for (int j = 0; j < 4; ++j) {
            Fel s = 0;
            for (int i = 0; i < 4; ++i) s = F.add(s, F.mul(pt.x[i], M.gram.m[i][j]));
            functional[j] = s;
        }
        // p lies in its own perp (alternating form), so the perp is 3-dim and
        // every 2-space through p inside it is totally isotropic
        auto basis = kernel_basis(F, {functional}, 4);
        size_t dim = basis.size();
        long long total = 1;
        for (size_t i = 0; i < dim; ++i) total *= q;
        for (long long ci = 1; ci < total; ++ci) {
            Vec4 y{0, 0, 0, 0};
            long long rest = ci;
            for (size_t bi = 0; bi < dim; ++bi) {
                Fel c = Fel(rest % q);
                rest /= q;
                if (c != 0)
                    for (int j = 0; j < 4; ++j)
                        y[j] = F.add(y[j], F.mul(c, Fel(basis[bi][j])));
            }
            // need y independent of p
            bool dependent = false;
            {
                // y = c*p for some c iff cross-coordinates match
                int lead = -1;
                for (int i = 0; i < 4; ++i)
                    if (pt.x[i] != 0) { lead = i; break; }
                Fel c = y[lead]; // p normalized: x[lead] = 1
                dependent = (vec_add(F, y, vec_scale(F, F.neg(c), pt.x)) == Vec4{0, 0, 0, 0});
            }
            if (dependent) continue;
            ProjLine l = line_from_span(F, pt.x, y);
            std::uint64_t h = pack_line(l.rows);
            if (seen.insert(h).second) raw.push_back(l);
        }
    }
    std::sort(raw.begin(), raw.end());
    M.lines = std::move(raw);
    for (size_t j = 0; j < M.lines.size(); ++j)
        M.line_idx_[pack_line(M.lines[j].rows)].push_back(int(j));

    // incidence
    M.line_points.resize(M.lines.size());
    M.point_lines.resize(M.points.size());
    for (size_t j = 0; j < M.lines.size(); ++j) {
        for (const ProjPoint& p : points_on_line(F, M.lines[j])) {
            int pi = M.point_index(p);
            if (pi < 0) throw Error("internal error: line point missing from point list");
            M.line_points[j].push_back(pi);
            M.point_lines[pi].push_back(int(j));
        }
        std::sort(M.line_points[j].begin(), M.line_points[j].end());
    }
    for (auto& v : M.point_lines) std::sort(v.begin(), v.end());

    // structural sanity on the standard counts
    long long expect = (long long)(q + 1) * (q * q + 1);
    if (N != expect || (long long)M.lines.size() != expect)
        throw Error("model has wrong point/line counts (internal error)");
    return M;
}

GQModel build_w3(int q) {
    FieldPtr F = Field::for_order(q);
    return build_w3(F, standard_gram(*F));
}

std::pair<int, int> verify_gq_axioms(const GQModel& M) {
    const Field& F = *M.field;
    (void)F;
    int N = M.num_points(), L = M.num_lines();
    if (N == 0 || L == 0) throw AxiomError(1, "empty geometry");
    size_t s1 = M.line_points.empty() ? 0 : M.line_points[0].size();
    size_t t1 = M.point_lines.empty() ? 0 : M.point_lines[0].size();

    // axiom 1: constant point degree; two points on at most one common line
    for (int p = 0; p < N; ++p)
        if (M.point_lines[p].size() != t1)
            throw AxiomError(1, "point " + std::to_string(p) + " lies on " +
                                    std::to_string(M.point_lines[p].size()) + " lines, expected " +
                                    std::to_string(t1));
    {
        std::set<std::pair<int, int>> seen_pairs;
        for (int l = 0; l < L; ++l) {
            const auto& pts = M.line_points[l];
            for (size_t a = 0; a < pts.size(); ++a)
                for (size_t b = a + 1; b < pts.size(); ++b)
                    if (!seen_pairs.insert({pts[a], pts[b]}).second)
                        throw AxiomError(1, "points " + std::to_string(pts[a]) + " and " +
                                                std::to_string(pts[b]) + " lie on two common lines");
        }
    }
    // axiom 2: constant line size; two lines meet in at most one point
    for (int l = 0; l < L; ++l)
        if (M.line_points[l].size() != s1)
            throw AxiomError(2, "line " + std::to_string(l) + " carries " +
                                    std::to_string(M.line_points[l].size()) + " points, expected " +
                                    std::to_string(s1));
    {
        std::set<std::pair<int, int>> seen_pairs;
        for (int p = 0; p < N; ++p) {
            const auto& ls = M.point_lines[p];
            for (size_t a = 0; a < ls.size(); ++a)
                for (size_t b = a + 1; b < ls.size(); ++b)
                    if (!seen_pairs.insert({ls[a], ls[b]}).second)
                        throw AxiomError(2, "lines " + std::to_string(ls[a]) + " and " +
                                                std::to_string(ls[b]) + " meet in two points");
        }
    }

    // axiom 3: unique flag completion for non-incident pairs.
    // collinearity bitsets over points
    std::vector<std::vector<std::uint64_t>> collinear(N, std::vector<std::uint64_t>((N + 63) / 64, 0));
    for (int l = 0; l < L; ++l)
        for (int a : M.line_points[l])
            for (int b : M.line_points[l])
                if (a != b) collinear[a][b >> 6] |= (std::uint64_t(1) << (b & 63));
    for (int p = 0; p < N; ++p) {
        for (int l = 0; l < L; ++l) {
            const auto& pts = M.line_points[l];
            if (std::binary_search(pts.begin(), pts.end(), p)) continue; // incident
            int hits = 0;
            for (int x : pts)
                if (collinear[p][x >> 6] & (std::uint64_t(1) << (x & 63))) ++hits;
            if (hits != 1)
                throw AxiomError(3, "point " + std::to_string(p) + " and line " + std::to_string(l) +
                                        " admit " + std::to_string(hits) + " flag completions");
        }
    }
    return {int(s1) - 1, int(t1) - 1};
}

// hyperbolic basis rows (u1, v1, u2, v2) with B G B^T equal to the standard
// block form [[0,1],[-1,0]] + [[0,1],[-1,0]]
static Mat4 hyperbolic_basis(const Field& F, const GramMatrix& G) {
    auto f = [&](const Vec4& x, const Vec4& y) { return form_value(F, G.m, x, y); };
    std::vector<Vec4> basis;
    // ambient basis to draw candidates from
    std::vector<Vec4> candidates;
    for (int i = 0; i < 4; ++i) {
        Vec4 e{};
        e[i] = 1;
        candidates.push_back(e);
    }
    // first pair
    Vec4 u1 = candidates[0];
    Vec4 v1{};
    bool found = false;
    for (const Vec4& c : candidates) {
        if (f(u1, c) != 0) { v1 = vec_scale(F, F.inv(f(u1, c)), c); found = true; break; }
    }
    if (!found) throw Error("degenerate form in hyperbolic basis construction");
    // project into the perp of <u1, v1>: x' = x + f(v1,x) u1 - f(u1,x) v1
    // satisfies f(u1,x') = f(v1,x') = 0 since f(u1,v1) = 1
    auto project = [&](const Vec4& x) {
        Fel alpha = f(v1, x);
        Fel beta = F.neg(f(u1, x));
        return vec_add(F, x, vec_add(F, vec_scale(F, alpha, u1), vec_scale(F, beta, v1)));
    };
    Vec4 u2{}, v2{};
    found = false;
    for (const Vec4& c : candidates) {
        Vec4 pc = project(c);
        if (!vec_is_zero(pc)) { u2 = pc; found = true; break; }
    }
    if (!found) throw Error("rank collapse in hyperbolic basis construction");
    found = false;
    for (const Vec4& c : candidates) {
        Vec4 pc = project(c);
        if (f(u2, pc) != 0) { v2 = vec_scale(F, F.inv(f(u2, pc)), pc); found = true; break; }
    }
    if (!found) throw Error("degenerate restriction in hyperbolic basis construction");
    return Mat4{u1, v1, u2, v2};
}

Mat4 symplectic_transport(const Field& F, const GramMatrix& g1, const GramMatrix& g2) {
    Mat4 B1 = hyperbolic_basis(F, g1);
    Mat4 B2 = hyperbolic_basis(F, g2);
    auto B2inv = mat_inverse(F, B2);
    if (!B2inv) throw Error("hyperbolic basis is singular (internal error)");
    // K g1 K^T = g2 for K = B2^{-1} B1; return M = K^T so that M^T g1 M = g2
    Mat4 K = mat_mul(F, *B2inv, B1);
    return mat_transpose(K);
}

Mat4 transport_map(const Field& F, const GramMatrix& g1, const GramMatrix& g2) {
    Mat4 M = symplectic_transport(F, g1, g2);
    auto inv = mat_inverse(F, mat_transpose(M));
    if (!inv) throw Error("transport matrix is singular (internal error)");
    return *inv;
}

std::vector<GramMatrix> invariant_forms(const Field& F, const std::vector<ProjLine>& lines,
                                        std::size_t limit) {
    // unknowns: g12 g13 g14 g23 g24 g34; constraint per line with basis u, v:
    // sum_{i<j} g_ij (u_i v_j - u_j v_i) = 0
    const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    std::vector<std::vector<Fel>> constraints;
    for (const ProjLine& l : lines) {
        const Vec4& u = l.rows[0];
        const Vec4& v = l.rows[1];
        std::vector<Fel> row(6);
        for (int t = 0; t < 6; ++t) {
            int i = pairs[t][0], j = pairs[t][1];
            row[t] = F.sub(F.mul(u[i], v[j]), F.mul(u[j], v[i]));
        }
        constraints.push_back(std::move(row));
    }
    std::vector<GramMatrix> found;
    auto basis = kernel_basis(F, constraints, 6);
    if (basis.empty()) return found;
    size_t dim = basis.size();
    long long total = 1;
    for (size_t i = 0; i < dim; ++i) {
        total *= F.q();
        if (total > 2000000) throw CapError("invariant-form solution space too large to scan");
    }
    for (long long ci = 1; ci < total && found.size() < limit; ++ci) {
        std::vector<Fel> sol(6, 0);
        long long rest = ci;
        for (size_t bi = 0; bi < dim; ++bi) {
            Fel c = Fel(rest % F.q());
            rest /= F.q();
            if (c != 0)
                for (int t = 0; t < 6; ++t) sol[t] = F.add(sol[t], F.mul(c, basis[bi][t]));
        }
        Mat4 m{};
        for (int t = 0; t < 6; ++t) {
            int i = pairs[t][0], j = pairs[t][1];
            m[i][j] = sol[t];
            m[j][i] = F.neg(sol[t]);
        }
        if (mat_det(F, m) != 0) found.push_back(GramMatrix::checked(F, m));
    }
    return found;
}

std::optional<GramMatrix> find_invariant_form(const Field& F, const std::vector<ProjLine>& lines) {
    auto all = invariant_forms(F, lines, 1);
    if (all.empty()) return std::nullopt;
    return all.front();
}

} // namespace gq
