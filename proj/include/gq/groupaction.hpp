#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "gq/codegraph.hpp"
#include "gq/errors.hpp"
#include "gq/geometry.hpp"
#include "gq/linalg.hpp"

namespace gq {

// A semilinear map x ↦ frob^e(x) · matrix acting on row vectors.
// Composition applies the left factor first.
struct SemilinearMap {
    FieldPtr field;
    Mat4 matrix{};
    int frob = 0;
};

SemilinearMap semilinear_identity(const FieldPtr& field);
Vec4 apply_semilinear(const SemilinearMap& m, const Vec4& v);
SemilinearMap compose_semilinear(const SemilinearMap& a, const SemilinearMap& b);
SemilinearMap inverse_semilinear(const SemilinearMap& m);

// Scaling factor λ with  M G Mᵀ = λ · frob^e(G).  Throws Error with a witness
// pair of basis vectors when the map is not a similitude of the form.
Fel similitude_factor(const SemilinearMap& m, const GramMatrix& gram);
bool is_similitude(const SemilinearMap& m, const GramMatrix& gram);

// Conjugate a similitude of G1 into a similitude of G2, where A G2 Aᵀ = G1:
// the result is (frob^e(A⁻¹) · B · A, e).
SemilinearMap conjugate_semilinear(const SemilinearMap& m, const Mat4& a);

// A permutation of the vertices of an incidence graph.  Construction checks
// that the images form a bijection, preserve adjacency, and treat the two
// sides of the bipartition uniformly (all kept or all exchanged).
class VertexPerm {
public:
    VertexPerm(GraphPtr graph, std::vector<std::uint16_t> images);
    static VertexPerm identity(GraphPtr graph);

    int apply(int v) const { return images_[static_cast<std::size_t>(v)]; }
    int operator[](int v) const { return apply(v); }
    const std::vector<std::uint16_t>& images() const { return images_; }
    const GraphPtr& graph() const { return graph_; }
    bool swaps_sides() const { return swaps_sides_; }
    bool is_identity() const;

    VertexPerm compose(const VertexPerm& then) const; // this first, then `then`
    VertexPerm inverse() const;

    bool operator==(const VertexPerm& o) const { return images_ == o.images_; }
    bool operator!=(const VertexPerm& o) const { return !(*this == o); }

private:
    struct Trusted {};
    VertexPerm(Trusted, GraphPtr graph, std::vector<std::uint16_t> images, bool swaps);

    GraphPtr graph_;
    std::vector<std::uint16_t> images_;
    bool swaps_sides_ = false;
};

// Vertex permutation induced by a semilinear similitude: points map through
// the semilinear action, lines through the row-space image.
VertexPerm induce_permutation(const SemilinearMap& m, const GraphPtr& graph);
std::vector<VertexPerm> induce_all(const std::vector<SemilinearMap>& maps, const GraphPtr& graph);

// A group of vertex permutations given by generators.  Full enumeration is
// lazy and capped; orbit machinery works from the generators alone.
class PermGroup {
public:
    static constexpr std::uint64_t kDefaultCap = 10'000'000;

    PermGroup(GraphPtr graph, std::vector<VertexPerm> generators);
    static PermGroup trivial(GraphPtr graph);

    const GraphPtr& graph() const { return graph_; }
    const std::vector<VertexPerm>& generators() const { return gens_; }

    // Breadth-first closure of the generators; CapError beyond `cap` elements.
    const std::vector<VertexPerm>& elements(std::uint64_t cap = kDefaultCap) const;
    std::uint64_t order(std::uint64_t cap = kDefaultCap) const;

    std::vector<int> orbit(int seed) const;
    std::vector<int> orbit(const std::vector<int>& seeds) const;
    // Orbit partition of a union-of-orbits cell; Error if the cell is not invariant.
    std::vector<std::vector<int>> orbits_within(const std::vector<int>& cell) const;
    bool transitive_on(const std::vector<int>& cell) const;
    // True iff every generator maps the set onto itself.
    bool preserves(const std::vector<int>& members) const;

    PermGroup setwise_stabiliser(const std::vector<int>& members,
                                 std::uint64_t cap = kDefaultCap) const;

private:
    GraphPtr graph_;
    std::vector<VertexPerm> gens_;
    mutable std::shared_ptr<const std::vector<VertexPerm>> elements_;
};

// Orbit of `target` under the stabiliser of `fixed`, computed from Schreier
// generators applied as composites — the subgroup is never materialised.
std::vector<int> stabiliser_orbit(const PermGroup& group, int fixed, int target);

// Semilinear similitude generators for the full symmetry group of the model:
// symplectic transvections x ↦ x + c·f(x,v)·v over a spanning set of
// directions, one similitude scaling generator, and (for non-prime fields)
// the Frobenius map.
std::vector<SemilinearMap> sp4_generators(const FieldPtr& field, const GramMatrix& gram);

// Order of the projective group generated by semilinear maps, by closure over
// scalar-normalised matrices.  CapError beyond `cap` elements.
std::uint64_t semilinear_closure_order(const FieldPtr& field,
                                       const std::vector<SemilinearMap>& gens,
                                       std::uint64_t cap = PermGroup::kDefaultCap);

// Backtracking search over distance-profile-consistent vertex maps.
enum class SideMode { Preserve, Swap };

std::uint64_t count_graph_automorphisms(const GraphPtr& graph, SideMode mode,
                                        std::uint64_t node_cap = 2'000'000'000ULL);

// A side-swapping automorphism when one exists (q even), none otherwise.
// Only small fields are supported; beyond them an Error is raised.
std::optional<VertexPerm> find_duality(const GraphPtr& graph);

// Transitivity certificate for a code and an explicit generator list: orbit
// counts on the code and on its distance cells up to `level`.
struct NTCertificate {
    GraphPtr graph;
    std::vector<int> code_members;
    int level = 1;
    std::vector<SemilinearMap> matrix_generators; // empty when given raw permutations
    std::vector<VertexPerm> generators;
    std::vector<bool> generator_preserves_code;   // per generator, always all true
    std::vector<std::size_t> cell_sizes;          // code cell first, then level 1..level
    std::vector<std::size_t> orbit_counts;        // parallel to cell_sizes
    bool success = false;
};

NTCertificate certify_nt(const Code& code, const std::vector<VertexPerm>& gens, int level);
NTCertificate certify_nt(const Code& code, const std::vector<SemilinearMap>& gens, int level);
// Re-run the orbit computation of a certificate from scratch; true iff it
// again proves transitivity on every cell up to its level.
bool replay_certificate(const Code& code, const NTCertificate& cert);

// Exact decision: compute the setwise stabiliser of the code inside the full
// automorphism group of the graph (similitude-induced permutations, plus a
// duality when one exists) and test transitivity on the code and its
// neighbour cell.
struct NTDecision {
    bool is_nt = false;
    std::uint64_t aut_order = 0;       // order of the ambient automorphism group
    std::uint64_t stabiliser_order = 0;
    std::size_t orbits_on_code = 0;
    std::size_t orbits_on_c1 = 0;
    std::shared_ptr<PermGroup> stabiliser;
};

NTDecision decide_nt(const Code& code, std::uint64_t cap = PermGroup::kDefaultCap);
// Same decision against a caller-supplied ambient group (which must act on
// the code's graph); avoids rebuilding the group for repeated decisions.
NTDecision decide_nt(const Code& code, const PermGroup& ambient,
                     std::uint64_t cap = PermGroup::kDefaultCap);

// The full automorphism group of the graph as an explicit permutation group
// (induced similitudes plus the duality coset when present).
PermGroup full_automorphism_group(const GraphPtr& graph);

// True iff the group is transitive on the code and the stabiliser of one
// codeword (the lowest by default; the choice is immaterial and tests vary
// it) is transitive on that codeword's graph neighbours.
bool local_nt_check(const Code& code, const PermGroup& group, int codeword_position = 0);

// Necessary divisibility for the group order of a transitive ovoid-like code.
bool divisibility_check(long long s, long long t, long long group_order);

} // namespace gq
