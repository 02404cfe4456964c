#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "gq/constructions.hpp"
#include "gq/linalg.hpp"

using namespace gq;

namespace {

// Claimed values against fresh recomputation by the metric routines.
void check_claims(const ConstructionResult& r) {
    INFO(r.name, " ", r.parameters);
    CHECK(r.code.size() == r.claimed.size);
    CHECK(min_distance(r.code) == r.claimed.delta);
    if (r.claimed.rho >= 0) CHECK(covering_radius(r.code) == r.claimed.rho);
    if (!r.claimed.classification.empty())
        CHECK(classify(r.code).describe() == r.claimed.classification);
}

int multiplicative_order(const Field& F, const Mat2& m) {
    Mat2 acc = m;
    int ord = 1;
    while (!(acc == mat2_identity())) {
        acc = mat2_mul(F, acc, m);
        ++ord;
        REQUIRE(ord <= 1000);
    }
    return ord;
}

} // namespace

TEST_CASE("regular spread: structure at q=2") {
    ConstructionResult r = regular_spread(2);
    const IncidenceGraph& g = *r.code.graph;
    REQUIRE(r.code.size() == 5);
    for (int v : r.code.members) CHECK_FALSE(g.is_point(v));
    // pairwise disjoint lines, and together they cover all 15 points
    std::set<int> covered;
    for (int v : r.code.members) {
        for (int w : r.code.members)
            if (v != w) CHECK(g.distance(v, w) == 4);
        for (int p : g.model->line_points[v - g.num_points]) covered.insert(p);
    }
    CHECK(int(covered.size()) == g.num_points);
    DistancePartition part = distance_partition(r.code);
    CHECK(part.rho() == 2);
    CHECK(classify(r.code).describe() == "spread");
}

TEST_CASE("regular spread: claims hold for q=2..5") {
    for (int q : {2, 3, 4, 5}) {
        ConstructionResult r = regular_spread(q);
        check_claims(r);
        CHECK(r.code.side() == Side::Lines);
    }
}

TEST_CASE("regular spread: certificates at q=2,3,5") {
    for (int q : {2, 3, 5}) {
        ConstructionResult r = regular_spread(q);
        REQUIRE_FALSE(r.nt_generators.empty());
        NTCertificate cert = certify_nt(r.code, r.nt_generators, 1);
        INFO("q=", q);
        CHECK(cert.success);
        CHECK(cert.cell_sizes[0] == std::size_t(q * q + 1));
        // a spread's neighbour cell is every point of the quadrangle
        CHECK(cert.cell_sizes[1] == std::size_t((q + 1) * (q * q + 1)));
        CHECK(replay_certificate(r.code, cert));
    }
}

TEST_CASE("spread minus line: q=2 partition and counting") {
    ConstructionResult base = regular_spread(2);
    ConstructionResult r = spread_minus_line(2);
    check_claims(r);
    REQUIRE(r.code.size() == 4);

    // the removed line is the least member of the spread and sits alone at
    // distance 4; the partition cells are 4 / 12 / 10 / 3 / 1
    int removed = base.code.members.front();
    CHECK_FALSE(r.code.contains(removed));
    DistancePartition part = distance_partition(r.code);
    REQUIRE(part.rho() == 4);
    CHECK(part.cells[0].size() == 4);
    CHECK(part.cells[1].size() == 12);
    CHECK(part.cells[2].size() == 10);
    CHECK(part.cells[3].size() == 3);
    REQUIRE(part.cells[4].size() == 1);
    CHECK(part.cells[4][0] == removed);
    for (int v : r.code.members) CHECK(r.code.graph->distance(removed, v) == 4);

    CountingCheck cc = counting_check(r.code);
    CHECK(cc.all_pass);
    REQUIRE_FALSE(cc.identities.empty());
    CHECK(cc.identities[0].expected == 12); // 3 * |C| neighbour points
    CHECK(cc.identities[0].actual == 12);
}

TEST_CASE("spread minus line: claims and certificates at q=2,3") {
    for (int q : {2, 3}) {
        ConstructionResult r = spread_minus_line(q);
        check_claims(r);
        NTCertificate cert = certify_nt(r.code, r.nt_generators, 1);
        INFO("q=", q);
        CHECK(cert.success);
        CHECK(replay_certificate(r.code, cert));
    }
}

TEST_CASE("spread minus line: generators fix the removed line") {
    ConstructionResult base = regular_spread(3);
    ConstructionResult r = spread_minus_line(3);
    int removed = base.code.members.front();
    for (const SemilinearMap& m : r.nt_generators) {
        VertexPerm perm = induce_permutation(m, r.code.graph);
        CHECK(perm[removed] == removed);
    }
}

TEST_CASE("hyperbolic line code: claims at q=2,3,5") {
    for (int q : {2, 3, 5}) {
        ConstructionResult r = hyperbolic_line_code(q);
        INFO("q=", q);
        check_claims(r);
        CHECK(r.code.side() == Side::Points);
        // members are pairwise non-collinear points
        for (int v : r.code.members)
            for (int w : r.code.members)
                if (v != w) CHECK(r.code.graph->distance(v, w) == 4);
    }
}

TEST_CASE("hyperbolic line code: certificates at q=2,3,5") {
    for (int q : {2, 3, 5}) {
        ConstructionResult r = hyperbolic_line_code(q);
        NTCertificate cert = certify_nt(r.code, r.nt_generators, 1);
        INFO("q=", q);
        CHECK(cert.success);
        // |C1| = (q+1) lines through each of the q+1 points
        CHECK(cert.cell_sizes[1] == std::size_t((q + 1) * (q + 1)));
    }
}

TEST_CASE("sharply transitive subgroups: q=2 cyclic of order 3") {
    auto subs = sharply_transitive_subgroups(2);
    REQUIRE(subs.size() == 1);
    const SL2Subgroup& G = subs[0];
    CHECK(G.label == "GL1(4)");
    REQUIRE(G.elements.size() == 3);
    FieldPtr F = Field::for_order(2);
    validate_sl2_subgroup(*F, G);
    // cyclic: some element has multiplicative order 3
    bool has_order3 = false;
    for (const Mat2& m : G.elements)
        if (!(m == mat2_identity())) has_order3 = has_order3 || multiplicative_order(*F, m) == 3;
    CHECK(has_order3);
}

TEST_CASE("sharply transitive subgroups: q=3 quaternion") {
    auto subs = sharply_transitive_subgroups(3);
    REQUIRE(subs.size() == 1);
    const SL2Subgroup& G = subs[0];
    CHECK(G.label == "Q8");
    REQUIRE(G.elements.size() == 8);
    FieldPtr F = Field::for_order(3);
    validate_sl2_subgroup(*F, G);
    // quaternion signature: exactly one involution, six elements of order 4
    int order2 = 0, order4 = 0;
    for (const Mat2& m : G.elements) {
        if (m == mat2_identity()) continue;
        int ord = multiplicative_order(*F, m);
        order2 += ord == 2;
        order4 += ord == 4;
    }
    CHECK(order2 == 1);
    CHECK(order4 == 6);
}

TEST_CASE("sharply transitive subgroups: q=4 has none, q=5 gives order 24") {
    CHECK(sharply_transitive_subgroups(4).empty());

    auto subs = sharply_transitive_subgroups(5);
    REQUIRE_FALSE(subs.empty());
    FieldPtr F = Field::for_order(5);
    for (const SL2Subgroup& G : subs) {
        CHECK(G.elements.size() == 24);
        CHECK(G.label == "2.A4");
        validate_sl2_subgroup(*F, G);
    }
}

TEST_CASE("sharply transitive subgroups: invalid input rejected") {
    CHECK_THROWS_AS(sharply_transitive_subgroups(13), Error);
    CHECK_THROWS_AS(sharply_transitive_subgroups(6), Error);

    // validation catches a broken subgroup: drop one element
    auto subs = sharply_transitive_subgroups(3);
    SL2Subgroup broken = subs[0];
    broken.elements.pop_back();
    FieldPtr F = Field::for_order(3);
    CHECK_THROWS_AS(validate_sl2_subgroup(*F, broken), Error);
}

TEST_CASE("block lines are isotropic exactly for determinant one") {
    // under the split form x1 y2 - x2 y1 - x3 y4 + x4 y3
    for (int q : {2, 3, 4, 5}) {
        FieldPtr Fp = Field::for_order(q);
        const Field& F = *Fp;
        GramMatrix split = alternate_gram(F);
        int checked = 0;
        for (Fel a = 0; a < F.q(); ++a)
            for (Fel b = 0; b < F.q(); ++b)
                for (Fel c = 0; c < F.q(); ++c)
                    for (Fel d = 0; d < F.q(); ++d) {
                        Mat2 A{{{a, b}, {c, d}}};
                        if (mat2_det(F, A) == 0) continue; // invertible blocks only
                        Vec4 r0{F.one(), 0, a, b};
                        Vec4 r1{0, F.one(), c, d};
                        bool isotropic = form_value(F, split.m, r0, r1) == 0;
                        CHECK(isotropic == (mat2_det(F, A) == F.one()));
                        ++checked;
                    }
        CHECK(checked > 0);
    }
}

TEST_CASE("coolsaet code: q=2 gives a maximal partial spread of 3 lines") {
    auto subs = sharply_transitive_subgroups(2);
    ConstructionResult r = coolsaet_partial_spread(2, subs[0]);
    check_claims(r);
    CHECK(r.code.size() == 3);
    CHECK(classify(r.code).describe() == "maximal partial spread");
}

TEST_CASE("coolsaet code: q=3 claims, certificate and block-map orbit") {
    auto subs = sharply_transitive_subgroups(3);
    ConstructionResult r = coolsaet_partial_spread(3, subs[0]);
    check_claims(r);
    REQUIRE(r.code.size() == 8);
    CHECK(covering_radius(r.code) == 3);

    NTCertificate cert = certify_nt(r.code, r.nt_generators, 1);
    CHECK(cert.success);
    CHECK(replay_certificate(r.code, cert));

    // the block maps alone reach every member from any one of them
    PermGroup group(r.code.graph, induce_all(r.nt_generators, r.code.graph));
    std::vector<int> orbit = group.orbit(r.code.members.front());
    std::sort(orbit.begin(), orbit.end());
    CHECK(orbit == r.code.members);
}

TEST_CASE("coolsaet code: rejects a subgroup for the wrong field") {
    auto subs = sharply_transitive_subgroups(2);
    CHECK_THROWS_AS(coolsaet_partial_spread(3, subs[0]), Error);
}

TEST_CASE("five-line code: claims and exact symmetry") {
    ConstructionResult r = w33_five_code();
    check_claims(r);
    REQUIRE(r.code.size() == 5);
    CHECK(r.nt_generators.empty());
    CHECK(covering_radius(r.code) == 3);
    CHECK(classify(r.code).describe() == "maximal partial spread");

    NTDecision d = decide_nt(r.code);
    CHECK(d.is_nt);
    CHECK(d.stabiliser_order == 120);
    CHECK(d.orbits_on_code == 1);
    CHECK(d.orbits_on_c1 == 1);

    // the stabiliser acts on the five members as the full symmetric group
    std::set<std::vector<int>> induced;
    const std::vector<int>& mem = r.code.members;
    for (const VertexPerm& g : d.stabiliser->elements()) {
        std::vector<int> perm(5);
        for (int i = 0; i < 5; ++i) {
            int img = g[mem[i]];
            auto it = std::lower_bound(mem.begin(), mem.end(), img);
            REQUIRE(it != mem.end());
            perm[i] = int(it - mem.begin());
        }
        induced.insert(perm);
    }
    CHECK(induced.size() == 120);
}

TEST_CASE("pair codes: claims and certificates at q=2,3") {
    for (int q : {2, 3}) {
        for (PairSide side : {PairSide::Points, PairSide::Lines}) {
            ConstructionResult r = pair_code(q, side);
            INFO("q=", q, " side=", side == PairSide::Points ? "points" : "lines");
            check_claims(r);
            REQUIRE(r.code.size() == 2);
            CHECK(min_distance(r.code) == 4);
            CHECK(r.code.side() == (side == PairSide::Points ? Side::Points : Side::Lines));
            NTCertificate cert = certify_nt(r.code, r.nt_generators, 1);
            CHECK(cert.success);
        }
    }
}

TEST_CASE("pair codes: exact decision and pair-transitivity at q=2") {
    ConstructionResult r = pair_code(2, PairSide::Points);
    NTDecision d = decide_nt(r.code);
    CHECK(d.is_nt);

    // the full automorphism group moves the pair onto every same-side
    // distance-4 pair (the duality carries point pairs to line pairs, so the
    // two sides merge into one orbit at q=2)
    PermGroup full = full_automorphism_group(r.code.graph);
    const IncidenceGraph& g = *r.code.graph;
    std::set<std::pair<int, int>> all_pairs;
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (g.is_point(u) == g.is_point(v) && g.distance(u, v) == 4) all_pairs.insert({u, v});

    std::set<std::pair<int, int>> orbit;
    std::vector<std::pair<int, int>> frontier{{r.code.members[0], r.code.members[1]}};
    orbit.insert(frontier[0]);
    while (!frontier.empty()) {
        auto [u, v] = frontier.back();
        frontier.pop_back();
        for (const VertexPerm& gen : full.generators()) {
            int a = gen[u], b = gen[v];
            if (a > b) std::swap(a, b);
            if (orbit.insert({a, b}).second) frontier.push_back({a, b});
        }
    }
    CHECK(orbit == all_pairs);
}

TEST_CASE("catalogue: claims, preservation and local criterion agree") {
    for (int q : {2, 3}) {
        for (const ConstructionResult& r : all_constructions(q)) {
            INFO(r.name, " ", r.parameters);
            check_claims(r);
            if (r.nt_generators.empty()) continue;
            std::vector<VertexPerm> perms = induce_all(r.nt_generators, r.code.graph);
            PermGroup group(r.code.graph, perms);
            CHECK(group.preserves(r.code.members));
            NTCertificate cert = certify_nt(r.code, r.nt_generators, 1);
            CHECK(cert.success);
            CHECK(local_nt_check(r.code, group) == cert.success);
        }
    }
}
