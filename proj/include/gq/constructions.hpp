#pragma once

// Concrete code families in the symplectic quadrangle, each packaged with the
// matrix generators that witness its neighbour-transitivity.  Every result
// lives in the standard model for its field (codes built under another
// alternating form are transported), so results for the same q share one
// incidence graph and can be compared directly.

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "gq/codegraph.hpp"
#include "gq/geometry.hpp"
#include "gq/groupaction.hpp"

namespace gq {

// Shared standard-model incidence graph for order q (process-wide cache; the
// graph is immutable so sharing is safe).
GraphPtr standard_graph(int q);

// Metric/classification values a construction promises for its output.  They
// are stored claims, re-derived independently by the metric routines in tests
// and in the acceptance suite; nothing here feeds back into the computation.
struct ClaimedMetrics {
    int delta = 0;
    int rho = -1;          // -1: no covering-radius claim
    int size = 0;
    std::string classification; // matches Classification::describe(), "" if unclaimed
};

struct ConstructionResult {
    Code code;
    ClaimedMetrics claimed;
    // Semilinear similitudes of the standard form, each stabilising the code
    // setwise.  Feed to certify_nt; may be empty (w33_five_code), in which
    // case decide_nt is the intended tool.
    std::vector<SemilinearMap> nt_generators;
    std::string name;       // construction identifier, e.g. "regular-spread"
    std::string parameters; // human-readable parameter summary, e.g. "q=3"
};

// --- subgroups of SL2(q) acting freely on nonzero vectors ---

using Mat2 = std::array<std::array<Fel, 2>, 2>;

Mat2 mat2_identity();
Mat2 mat2_mul(const Field& F, const Mat2& a, const Mat2& b);
Fel mat2_det(const Field& F, const Mat2& a);
// true when no nonzero vector is fixed, i.e. 1 is not an eigenvalue
bool mat2_fixed_point_free(const Field& F, const Mat2& a);

struct SL2Subgroup {
    int q = 0;
    std::vector<Mat2> elements; // sorted canonically, identity first
    std::string label;          // isomorphism-type tag, e.g. "Q8"
};

// Checks the defining invariants: every element has determinant 1, the set is
// closed under multiplication (hence under inverse), contains the identity,
// has exactly q^2-1 elements, and every non-identity element is fixed-point
// free on nonzero vectors.  Throws Error with a witness on failure.
void validate_sl2_subgroup(const Field& F, const SL2Subgroup& G);

// Exhaustive search (q <= 11) for subgroups of SL2(q) of order q^2-1 all of
// whose non-identity elements are fixed-point free — equivalently, subgroups
// sharply transitive on the q^2-1 nonzero vectors.  Scans closures of all
// generator pairs, keeps the fixed-point-free closures of the right order,
// and returns one representative per GL2(q)-conjugacy class, labelled by
// order: 3 -> GL1(4), 8 -> Q8, 24 -> 2.A4, 48 -> 2.S4, 120 -> SL2(5).
// Empty for q in {4, 9}.
std::vector<SL2Subgroup> sharply_transitive_subgroups(int q);

// --- constructions ---

// The q^2+1 lines obtained by reading the one-dimensional F_{q^2}-subspaces
// of F_{q^2}^2 as 2-dimensional F_q-subspaces of F_q^4 (coordinates taken in
// the basis {1, w} of F_{q^2} over F_q), transported into the standard model.
// Generators: F_q-linear maps induced by GL2(q^2) with determinant in F_q
// and by the q-power Frobenius of F_{q^2}.
ConstructionResult regular_spread(int q);

// regular_spread(q) with its least line (smallest vertex index) removed.
// Generators: the subgroup of the spread generators stabilising the removed
// line — translations, a torus, the determinant scaler and the Frobenius.
ConstructionResult spread_minus_line(int q);

// The q+1 points of the nondegenerate 2-subspace W = <e1, e2>.  Generators:
// block-diagonal SL2(q) x SL2(q) acting on W and on its perp <e3, e4>.
ConstructionResult hyperbolic_line_code(int q);

// The q^2-1 lines [I | A] for A in G, built under the split form
// x1 y2 - x2 y1 - x3 y4 + x4 y3 and transported to the standard model.
// Generators: every block-diagonal map (X, Y) with X, Y in G, plus the
// involution swapping the two coordinate blocks.
ConstructionResult coolsaet_partial_spread(int q, const SL2Subgroup& G);

// A specific set of five pairwise disjoint lines of the q=3 quadrangle,
// stored as verbatim basis matrices.  No generators are attached; its
// symmetry is meant to be decided exactly with decide_nt.
ConstructionResult w33_five_code();

enum class PairSide { Points, Lines };

// A canonical pair at distance 4: two non-collinear points <e1>, <e2> or two
// disjoint lines <e1,e3>, <e2,e4>.  Generators: a code-swapping involution
// plus an SL2(q) acting transitively on the neighbourhood of each member.
ConstructionResult pair_code(int q, PairSide side);

// Every construction above for the given order, for catalogue-style tests
// and the CLI.  Coolsaet results appear once per subgroup class when q <= 11
// and q^2-1 has a sharply transitive subgroup.
std::vector<ConstructionResult> all_constructions(int q);

// Build a construction by its catalogue name: "regular-spread",
// "spread-minus-line", "hyperbolic-line", "coolsaet", "w33-five" or "pair".
// `subgroup` selects the coolsaet subgroup class by label (empty: the first
// class); `pair_side` is "points" or "lines"; `gram` is "standard" or
// "split" and transports the whole result — members by the coordinate
// transport, generators by conjugation — onto the chosen alternating form.
// Throws Error for unknown names, missing subgroups or impossible orders.
ConstructionResult named_construction(const std::string& name, int q,
                                      const std::string& subgroup = "",
                                      const std::string& pair_side = "points",
                                      const std::string& gram = "standard");

} // namespace gq
