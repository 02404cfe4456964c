#include "doctest.h"

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gq/groupaction.hpp"

using namespace gq;

namespace {

GraphPtr graph_for(int q) {
    static std::map<int, GraphPtr> cache;
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    GraphPtr g = IncidenceGraph::build(build_w3(q));
    cache.emplace(q, g);
    return g;
}

// five pairwise-disjoint lines of W3(2), by backtracking
std::vector<int> find_spread(const IncidenceGraph& g) {
    std::vector<int> chosen;
    std::function<bool(int)> rec = [&](int from) {
        if (chosen.size() == 5) return true;
        for (int v = from; v < g.n; ++v) {
            bool ok = true;
            for (int c : chosen)
                if (g.distance(c, v) < 4) { ok = false; break; }
            if (!ok) continue;
            chosen.push_back(v);
            if (rec(v + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    rec(g.num_points);
    return chosen;
}

} // namespace

TEST_CASE("semilinear map algebra") {
    auto F = Field::get(2, 2); // GF(4)
    auto gens = sp4_generators(F, standard_gram(*F));
    REQUIRE(gens.size() >= 4);
    SemilinearMap a = gens[0];
    a.frob = 1;
    SemilinearMap b = gens[3];
    b.frob = 1;
    SemilinearMap ab = compose_semilinear(a, b);
    CHECK(ab.frob == 0); // exponents add mod k = 2
    for (Fel x0 = 0; x0 < 4; ++x0)
        for (Fel x1 = 0; x1 < 4; ++x1) {
            Vec4 x{x0, x1, 1, 2};
            CHECK(apply_semilinear(ab, x) == apply_semilinear(b, apply_semilinear(a, x)));
        }
    SemilinearMap inv = inverse_semilinear(a);
    SemilinearMap round = compose_semilinear(a, inv);
    CHECK(round.matrix == mat_identity());
    CHECK(round.frob == 0);
    CHECK(semilinear_identity(F).matrix == mat_identity());
}

TEST_CASE("similitude factors and rejection witnesses") {
    auto F3 = Field::get(3, 1);
    GramMatrix G = standard_gram(*F3);
    for (const auto& g : sp4_generators(F3, G)) {
        Fel lambda = similitude_factor(g, G);
        CHECK(lambda != 0);
    }
    // scaling diag(1, w, 1, w) multiplies the form by the generator w
    Mat4 d{};
    d[0][0] = 1; d[1][1] = 2; d[2][2] = 1; d[3][3] = 2;
    CHECK(similitude_factor(SemilinearMap{F3, d, 0}, G) == 2);
    // diag(1,1,1,2) scales only one hyperbolic pair: not a similitude
    Mat4 bad = mat_identity();
    bad[3][3] = 2;
    CHECK_FALSE(is_similitude(SemilinearMap{F3, bad, 0}, G));
    try {
        similitude_factor(SemilinearMap{F3, bad, 0}, G);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("(2, 3)") != std::string::npos);
    }
    // singular matrix
    Mat4 sing{};
    CHECK_THROWS_AS(similitude_factor(SemilinearMap{F3, sing, 0}, G), Error);
}

TEST_CASE("conjugation carries similitudes between forms") {
    auto F3 = Field::get(3, 1);
    GramMatrix std_g = standard_gram(*F3);
    GramMatrix alt_g = alternate_gram(*F3);
    Mat4 a = transport_map(*F3, std_g, alt_g);
    for (const auto& g : sp4_generators(F3, std_g)) {
        SemilinearMap moved = conjugate_semilinear(g, a);
        CHECK(is_similitude(moved, alt_g));
    }
}

TEST_CASE("induced permutations: identity, the block swap, rejection") {
    auto F3 = Field::get(3, 1);
    auto model = build_w3(F3, alternate_gram(*F3));
    GraphPtr g = IncidenceGraph::build(std::move(model));
    const GQModel& M = *g->model;

    VertexPerm id = induce_permutation(semilinear_identity(F3), g);
    CHECK(id.is_identity());

    // the involution exchanging the two coordinate blocks maps the line with
    // rows [I | A] to the line with rows [I | A^{-1}]
    Mat4 swap{};
    swap[0][2] = 1; swap[1][3] = 1; swap[2][0] = 1; swap[3][1] = 1;
    VertexPerm tau = induce_permutation(SemilinearMap{F3, swap, 0}, g);
    CHECK_FALSE(tau.swaps_sides());
    int N = M.num_points();
    auto block_line = [&](Fel a11, Fel a12, Fel a21, Fel a22) {
        Vec4 r0{1, 0, a11, a12}, r1{0, 1, a21, a22};
        int idx = M.line_index(line_from_span(*M.field, r0, r1));
        REQUIRE(idx >= 0);
        return N + idx;
    };
    int l_a = block_line(1, 1, 0, 1);     // A = [[1,1],[0,1]], det 1
    int l_ainv = block_line(1, 2, 0, 1);  // A^{-1} = [[1,2],[0,1]]
    int l_id = block_line(1, 0, 0, 1);
    CHECK(tau.apply(l_a) == l_ainv);
    CHECK(tau.apply(l_ainv) == l_a);
    CHECK(tau.apply(l_id) == l_id);

    // a non-similitude is rejected before any permutation is built
    auto std_graph = graph_for(3);
    Mat4 bad = mat_identity();
    bad[3][3] = 2;
    CHECK_THROWS_AS(induce_permutation(SemilinearMap{F3, bad, 0}, std_graph), Error);
}

TEST_CASE("vertex permutation validation") {
    auto g = graph_for(2);
    std::vector<std::uint16_t> ims(size_t(g->n));
    for (int v = 0; v < g->n; ++v) ims[size_t(v)] = std::uint16_t(v);
    CHECK(VertexPerm(g, ims).is_identity());
    // wrong length
    CHECK_THROWS_AS(VertexPerm(g, std::vector<std::uint16_t>(5)), Error);
    // not a bijection
    auto dup = ims;
    dup[1] = 0;
    CHECK_THROWS_AS(VertexPerm(g, dup), Error);
    // mixes the sides
    auto mix = ims;
    std::swap(mix[0], mix[size_t(g->num_points)]);
    CHECK_THROWS_AS(VertexPerm(g, mix), Error);
    // breaks adjacency
    auto breaks = ims;
    std::swap(breaks[0], breaks[1]);
    CHECK_THROWS_AS(VertexPerm(g, breaks), Error);
}

TEST_CASE("induced symmetry group orders at q = 2 and 3") {
    // q = 2: order 2^4 * (2^2-1) * (2^4-1) = 720
    auto F2 = Field::get(2, 1);
    auto gens2 = sp4_generators(F2, standard_gram(*F2));
    CHECK(semilinear_closure_order(F2, gens2) == 720);
    auto g2 = graph_for(2);
    PermGroup induced2(g2, induce_all(gens2, g2));
    CHECK(induced2.order() == 720);

    // q = 3: order 3^4 * 8 * 80 = 51840, with the similitude factor folded in
    auto F3 = Field::get(3, 1);
    auto gens3 = sp4_generators(F3, standard_gram(*F3));
    CHECK(semilinear_closure_order(F3, gens3) == 51840);
    auto g3 = graph_for(3);
    PermGroup induced3(g3, induce_all(gens3, g3));
    CHECK(induced3.order(60000) == 51840);

    // the same group arises for the block-construction form
    CHECK(semilinear_closure_order(F3, sp4_generators(F3, alternate_gram(*F3))) == 51840);

    // cap enforcement (on a fresh group: a populated cache is returned as is)
    CHECK_THROWS_AS(semilinear_closure_order(F3, gens3, 1000), CapError);
    PermGroup fresh(g3, induced3.generators());
    CHECK_THROWS_AS(fresh.order(1000), CapError);
    CHECK(induced3.order(1000) == 51840);
}

TEST_CASE("induced symmetry group order at q = 4" * doctest::skip(false)) {
    // 4^4 * 15 * 255 * 2 = 1958400; the factor 2 is the field automorphism
    auto F4 = Field::get(2, 2);
    auto gens = sp4_generators(F4, standard_gram(*F4));
    CHECK(semilinear_closure_order(F4, gens, 3'000'000) == 1'958'400);
}

TEST_CASE("orbits") {
    auto g = graph_for(2);
    PermGroup trivial = PermGroup::trivial(g);
    CHECK(trivial.orbit(7) == std::vector<int>{7});
    CHECK(trivial.order() == 1);

    auto F2 = Field::get(2, 1);
    PermGroup induced(g, induce_all(sp4_generators(F2, standard_gram(*F2)), g));
    std::vector<int> pts = induced.orbit(0);
    CHECK(int(pts.size()) == g->num_points);
    CHECK(pts.front() == 0);
    CHECK(pts.back() == g->num_points - 1);
    std::vector<int> lns = induced.orbit(g->num_points);
    CHECK(int(lns.size()) == g->n - g->num_points);
    // seeding with one vertex from each side reaches everything
    CHECK(induced.orbit(std::vector<int>{0, g->num_points}).size() == size_t(g->n));
}

TEST_CASE("duality exists exactly for even q") {
    auto g2 = graph_for(2);
    auto d2 = find_duality(g2);
    REQUIRE(d2.has_value());
    CHECK(d2->swaps_sides());
    CHECK_FALSE(d2->compose(*d2).swaps_sides());

    auto g3 = graph_for(3);
    CHECK_FALSE(find_duality(g3).has_value());

    auto g4 = graph_for(4);
    auto d4 = find_duality(g4);
    REQUIRE(d4.has_value());
    CHECK(d4->swaps_sides());

    auto g7 = graph_for(7);
    CHECK_THROWS_AS(find_duality(g7), Error);
}

TEST_CASE("full graph symmetry group: side-preserving index 2 at q = 2") {
    auto g = graph_for(2);
    PermGroup full = full_automorphism_group(g);
    CHECK(full.order() == 1440);
    // counting by backtracking agrees per side mode
    CHECK(count_graph_automorphisms(g, SideMode::Preserve) == 720);
    CHECK(count_graph_automorphisms(g, SideMode::Swap) == 720);
}

TEST_CASE("graph symmetry counts at q = 3 match the induced group") {
    auto g = graph_for(3);
    CHECK(count_graph_automorphisms(g, SideMode::Preserve) == 51840);
    CHECK(count_graph_automorphisms(g, SideMode::Swap) == 0);
}

TEST_CASE("setwise stabilisers") {
    auto g = graph_for(2);
    PermGroup full = full_automorphism_group(g);
    // stabiliser of everything is everything
    std::vector<int> all(size_t(g->n));
    for (int v = 0; v < g->n; ++v) all[size_t(v)] = v;
    CHECK(full.setwise_stabiliser(all).order() == full.order());

    // the stabiliser of a spread moves its five lines 2-transitively
    std::vector<int> spread = find_spread(*g);
    REQUIRE(spread.size() == 5);
    PermGroup stab = full.setwise_stabiliser(spread);
    CHECK(stab.transitive_on(spread));
    std::vector<int> rest = stabiliser_orbit(stab, spread[0], spread[1]);
    std::vector<int> expect(spread.begin() + 1, spread.end());
    CHECK(rest == expect);
}

TEST_CASE("Schreier stabiliser orbits agree with brute force") {
    auto g = graph_for(2);
    PermGroup full = full_automorphism_group(g);
    const auto& els = full.elements();
    for (int fixed : {0, 7, g->num_points, g->n - 1}) {
        // brute force: filter the elements fixing `fixed`, close each target
        std::vector<const VertexPerm*> fixers;
        for (const auto& e : els)
            if (e.apply(fixed) == fixed) fixers.push_back(&e);
        for (int target : {1, g->num_points + 2}) {
            std::vector<char> seen(size_t(g->n), 0);
            std::vector<int> work{target};
            seen[size_t(target)] = 1;
            for (std::size_t i = 0; i < work.size(); ++i)
                for (const auto* e : fixers) {
                    int y = e->apply(work[i]);
                    if (!seen[size_t(y)]) { seen[size_t(y)] = 1; work.push_back(y); }
                }
            std::sort(work.begin(), work.end());
            CHECK(stabiliser_orbit(full, fixed, target) == work);
        }
    }
}

TEST_CASE("transitivity certificates for a spread of W3(2)") {
    auto g = graph_for(2);
    std::vector<int> spread = find_spread(*g);
    Code c(g, spread);
    PermGroup full = full_automorphism_group(g);
    PermGroup stab = full.setwise_stabiliser(spread);

    // covering radius 2, so level 2 certifies complete transitivity
    NTCertificate cert = certify_nt(c, stab.generators(), 2);
    CHECK(cert.success);
    CHECK(cert.cell_sizes == std::vector<std::size_t>{5, 15, 10});
    CHECK(cert.orbit_counts == std::vector<std::size_t>{1, 1, 1});
    CHECK(replay_certificate(c, cert));

    // beyond the covering radius there is no cell to certify
    CHECK_THROWS_AS(certify_nt(c, stab.generators(), 3), Error);
    CHECK_THROWS_AS(certify_nt(c, stab.generators(), 0), Error);

    // a single preserving generator is not transitive: failure, not an error
    std::vector<VertexPerm> one{stab.generators()[0]};
    NTCertificate weak = certify_nt(c, one, 1);
    CHECK_FALSE(weak.success);
    CHECK(weak.orbit_counts[0] >= 1);
    CHECK_FALSE(replay_certificate(c, weak));

    // a generator moving the code is rejected outright
    bool threw = false;
    for (const auto& e : full.elements()) {
        bool preserves = true;
        for (int v : spread)
            if (!c.contains(e.apply(v))) { preserves = false; break; }
        if (!preserves) {
            try {
                certify_nt(c, std::vector<VertexPerm>{e}, 1);
            } catch (const Error& err) {
                threw = true;
                CHECK(std::string(err.what()).find("preserve") != std::string::npos);
            }
            break;
        }
    }
    CHECK(threw);
}

TEST_CASE("matrix-generator certificates: the full line set") {
    auto g = graph_for(3);
    std::vector<int> all_lines;
    for (int v = g->num_points; v < g->n; ++v) all_lines.push_back(v);
    Code c(g, all_lines);
    auto F3 = Field::get(3, 1);
    NTCertificate cert = certify_nt(c, sp4_generators(F3, standard_gram(*F3)), 1);
    CHECK(cert.success);
    CHECK(cert.cell_sizes == std::vector<std::size_t>{40, 40});
    CHECK(cert.matrix_generators.size() == cert.generators.size());
    CHECK(replay_certificate(c, cert));
}

TEST_CASE("local transitivity criterion") {
    auto g = graph_for(2);
    std::vector<int> spread = find_spread(*g);
    Code c(g, spread);
    PermGroup full = full_automorphism_group(g);
    PermGroup stab = full.setwise_stabiliser(spread);

    CHECK(local_nt_check(c, stab));
    CHECK(local_nt_check(c, stab, 1)); // the codeword choice is immaterial
    CHECK_FALSE(local_nt_check(c, PermGroup::trivial(g)));

    // agreement with the level-1 certificate, generator set by generator set
    for (std::size_t take : {std::size_t(1), stab.generators().size()}) {
        std::vector<VertexPerm> gens(stab.generators().begin(),
                                     stab.generators().begin() + long(take));
        PermGroup part(g, gens);
        bool local = local_nt_check(c, part);
        bool cert = certify_nt(c, gens, 1).success;
        CHECK(local == cert);
    }

    // distance-2 codes are outside the criterion's domain
    Code close(g, {g->adj[g->num_points][0], g->adj[g->num_points][1]});
    CHECK_THROWS_AS(local_nt_check(close, PermGroup::trivial(g)), Error);
}

TEST_CASE("exact decisions at q = 2") {
    auto g = graph_for(2);
    // a pair of disjoint lines is neighbour-transitive
    int l0 = g->num_points;
    int l1 = -1;
    for (int v = l0 + 1; v < g->n; ++v)
        if (g->distance(l0, v) == 4) { l1 = v; break; }
    REQUIRE(l1 > 0);
    NTDecision pair = decide_nt(Code(g, {l0, l1}));
    CHECK(pair.is_nt);
    CHECK(pair.aut_order == 1440);

    // a pair of collinear points is not: the joining line is fixed within C1
    int p0 = 0;
    int p1 = -1;
    for (int v = 1; v < g->num_points; ++v)
        if (g->distance(0, v) == 2) { p1 = v; break; }
    REQUIRE(p1 > 0);
    NTDecision coll = decide_nt(Code(g, {p0, p1}));
    CHECK_FALSE(coll.is_nt);
    CHECK(coll.orbits_on_code == 1);
    CHECK(coll.orbits_on_c1 > 1);

    // the spread decision matches its certificate
    std::vector<int> spread = find_spread(*g);
    NTDecision sd = decide_nt(Code(g, spread));
    CHECK(sd.is_nt);
    CHECK(sd.stabiliser_order == sd.stabiliser->order());
    CHECK(sd.stabiliser->preserves(spread));
}

TEST_CASE("induced permutations preserve distances (exhaustive at q = 2)") {
    auto g = graph_for(2);
    auto F2 = Field::get(2, 1);
    auto perms = induce_all(sp4_generators(F2, standard_gram(*F2)), g);
    perms.push_back(*find_duality(g));
    for (const auto& perm : perms)
        for (int u = 0; u < g->n; ++u)
            for (int v = 0; v < g->n; ++v)
                CHECK(g->distance(u, v) == g->distance(perm.apply(u), perm.apply(v)));
}

TEST_CASE("codeword neighbourhood blocks map to blocks") {
    auto g = graph_for(2);
    std::vector<int> spread = find_spread(*g);
    Code c(g, spread);
    PermGroup stab = full_automorphism_group(g).setwise_stabiliser(spread);
    DistancePartition dp = distance_partition(c);
    std::vector<char> in_c1(size_t(g->n), 0);
    for (int v : dp.cells[1]) in_c1[size_t(v)] = 1;
    auto block_of = [&](int alpha) {
        std::vector<int> b;
        for (int u : g->adj[size_t(alpha)])
            if (in_c1[size_t(u)]) b.push_back(u);
        return b;
    };
    for (const auto& gen : stab.generators())
        for (int alpha : spread) {
            std::vector<int> image;
            for (int u : block_of(alpha)) image.push_back(gen.apply(u));
            std::sort(image.begin(), image.end());
            CHECK(image == block_of(gen.apply(alpha)));
        }
}

TEST_CASE("group-order divisibility filter") {
    // the exceptional ovoid arithmetic: 6 * 126 = 756 does not divide 2016
    CHECK_FALSE(divisibility_check(25, 5, 2016));
    CHECK(divisibility_check(3, 3, 51840));
    CHECK(divisibility_check(7, 9, (9 + 1) * (7 * 9 + 1)));
    CHECK_THROWS_AS(divisibility_check(0, 3, 10), Error);
}
