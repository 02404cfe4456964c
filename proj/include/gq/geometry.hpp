#pragma once

// The symplectic generalised quadrangle W3(q): points are the projective
// points of PG(3,q), lines are the 2-subspaces of GF(q)^4 that are totally
// isotropic for a fixed nondegenerate alternating form.  Both carriers have
// size (q+1)(q^2+1) and the geometry has order (q, q).
//
// Canonical representatives: a point is scaled so its first nonzero
// coordinate is 1; a line is the reduced row echelon form of any basis.
// Points and lines are stored sorted lexicographically on these forms (with
// field elements ordered by code), which fixes the vertex numbering used by
// the incidence graph: point i is vertex i, line j is vertex N + j.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "gq/linalg.hpp"

namespace gq {

struct ProjPoint {
    Vec4 x{}; // normalized: first nonzero coordinate is 1

    friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.x == b.x; }
    friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return a.x < b.x; }
};

struct ProjLine {
    Mat24 rows{}; // reduced row echelon form, rank 2

    friend bool operator==(const ProjLine& a, const ProjLine& b) { return a.rows == b.rows; }
    friend bool operator<(const ProjLine& a, const ProjLine& b) { return a.rows < b.rows; }
};

ProjPoint normalize_point(const Field& F, const Vec4& v); // error on zero vector
// canonical span of two independent vectors; error if dependent
ProjLine line_from_span(const Field& F, const Vec4& a, const Vec4& b);
// canonical form of a (rank-2) 2x4 matrix
ProjLine line_from_rows(const Field& F, const Mat24& rows);
// all q+1 projective points on a line, sorted
std::vector<ProjPoint> points_on_line(const Field& F, const ProjLine& l);

struct GramMatrix {
    Mat4 m{};
    // valid: alternating (zero diagonal and G^T = -G; both checked, they are
    // independent in characteristic 2) and nondegenerate (det != 0)
    static GramMatrix checked(const Field& F, const Mat4& m);
};

// x1 y2 - x2 y1 + x3 y4 - x4 y3 (the default model form)
GramMatrix standard_gram(const Field& F);
// x1 y2 - x2 y1 - x3 y4 + x4 y3 (the block-construction form); coincides with
// the standard one in characteristic 2
GramMatrix alternate_gram(const Field& F);

struct GQModel {
    FieldPtr field;
    GramMatrix gram;
    std::vector<ProjPoint> points; // sorted canonically
    std::vector<ProjLine> lines;   // sorted canonically
    std::vector<std::vector<int>> point_lines; // line indices through each point, sorted
    std::vector<std::vector<int>> line_points; // point indices on each line, sorted

    int q() const { return field->q(); }
    int num_points() const { return int(points.size()); }
    int num_lines() const { return int(lines.size()); }

    int point_index(const ProjPoint& p) const; // -1 if absent
    int line_index(const ProjLine& l) const;   // -1 if absent

    bool is_totally_isotropic(const Mat24& rows) const;

private:
    friend GQModel build_w3(FieldPtr field, const GramMatrix& gram);
    std::unordered_map<std::uint64_t, int> point_idx_;
    std::unordered_map<std::uint64_t, std::vector<int>> line_idx_; // hash -> candidates
};

std::uint64_t pack_vec4(const Vec4& v);

GQModel build_w3(FieldPtr field, const GramMatrix& gram);
GQModel build_w3(int q); // standard gram

// Checks the quadrangle axioms directly on the incidence lists and returns
// the order (s, t).  Throws AxiomError naming the violated axiom and a
// witness otherwise.
//   axiom 1: every point on t+1 lines; two points on at most one common line
//   axiom 2: every line has s+1 points; two lines meet in at most one point
//   axiom 3: for a non-incident (point, line) pair there is exactly one
//            incident pair (point', line') with point' on line and line'
//            through point
std::pair<int, int> verify_gq_axioms(const GQModel& model);

// Matrix M with M^T g1 M = g2, built from hyperbolic bases of both forms.
Mat4 symplectic_transport(const Field& F, const GramMatrix& g1, const GramMatrix& g2);

// Map points of the g1 model onto points of the g2 model: x -> x * A with
// A g2 A^T = g1, derived from symplectic_transport (A = (M^T)^{-1}).
Mat4 transport_map(const Field& F, const GramMatrix& g1, const GramMatrix& g2);

// Some nondegenerate alternating form vanishing on every given 2-subspace,
// or nullopt if none exists.  Solves the linear system on the 6 independent
// entries and scans the solution space for a nondegenerate member.
std::optional<GramMatrix> find_invariant_form(const Field& F, const std::vector<ProjLine>& lines);

// All nondegenerate members of the same solution space, in scan order (so the
// first entry is find_invariant_form's answer), up to `limit` results.  When
// the solution space has dimension > 1 the members are genuinely different
// forms, not scalar multiples of one another, and a caller may need one with
// an extra compatibility property.
std::vector<GramMatrix> invariant_forms(const Field& F, const std::vector<ProjLine>& lines,
                                        std::size_t limit = 64);

} // namespace gq
