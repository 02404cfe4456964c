#include "doctest.h"

#include <algorithm>
#include <deque>
#include <vector>

#include "gq/codegraph.hpp"

using namespace gq;

namespace {

// test-local BFS oracle, independent of the cached table
int bfs_oracle(const IncidenceGraph& g, int u, int v) {
    std::vector<int> dist(g.n, -1);
    std::deque<int> queue{u};
    dist[u] = 0;
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int y : g.adj[x])
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
    }
    return dist[v];
}

// smallest spread found by plain backtracking over line vertices
std::vector<int> find_spread(const IncidenceGraph& g) {
    int N = g.num_points;
    int target = 0;
    {
        int q = g.model->q();
        target = q * q + 1;
    }
    std::vector<int> chosen;
    std::function<bool(int)> rec = [&](int from) {
        if (int(chosen.size()) == target) return true;
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
    if (!rec(N)) return {};
    return chosen;
}

} // namespace

TEST_CASE("graph structure and distances at q = 2") {
    auto g = IncidenceGraph::build(build_w3(2));
    CHECK(g->n == 30);
    CHECK(g->num_points == 15);
    CHECK(g->diameter() == 4);
    CHECK(g->girth() == 8);
    for (const auto& nb : g->adj) CHECK(nb.size() == 3);
    // exhaustive: symmetry, triangle-free parity, and agreement with BFS
    for (int u = 0; u < g->n; ++u)
        for (int v = 0; v < g->n; ++v) {
            CHECK(g->distance(u, v) == g->distance(v, u));
            CHECK(g->distance(u, v) == bfs_oracle(*g, u, v));
            bool same_side = g->is_point(u) == g->is_point(v);
            CHECK((g->distance(u, v) % 2 == 0) == same_side);
        }
}

TEST_CASE("elementary distance facts") {
    auto g = IncidenceGraph::build(build_w3(3));
    const GQModel& M = *g->model;
    int N = g->num_points;
    // incident point-line pairs have distance 1, non-incident 3
    for (int p = 0; p < N; ++p)
        for (int l = 0; l < M.num_lines(); ++l) {
            bool inc = std::binary_search(M.point_lines[p].begin(), M.point_lines[p].end(), l);
            CHECK(g->distance(p, N + l) == (inc ? 1 : 3));
        }
    // collinear distinct points have distance 2, the rest 4
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b) {
            bool coll = false;
            for (int l : M.point_lines[a])
                if (std::binary_search(M.line_points[l].begin(), M.line_points[l].end(), b)) coll = true;
            CHECK(g->distance(a, b) == (coll ? 2 : 4));
        }
}

TEST_CASE("code basics and side detection") {
    auto g = IncidenceGraph::build(build_w3(2));
    Code pts(g, {0, 1, 2});
    CHECK(pts.side() == Side::Points);
    Code lns(g, {15, 16});
    CHECK(lns.side() == Side::Lines);
    Code mixed(g, {0, 15});
    CHECK(mixed.side() == Side::Mixed);
    CHECK(pts.contains(1));
    CHECK_FALSE(pts.contains(3));
    // duplicates collapse, members sort
    Code dup(g, {5, 3, 5});
    CHECK(dup.members == std::vector<int>{3, 5});
    CHECK_THROWS_AS(Code(g, {99}), Error);
    CHECK_THROWS_AS(min_distance(Code(g, {0})), Error);
    CHECK_THROWS_AS(distance_partition(Code(g, {})), Error);
}

TEST_CASE("spread partition at q = 2: cells 5, 15, 10") {
    auto g = IncidenceGraph::build(build_w3(2));
    std::vector<int> spread = find_spread(*g);
    REQUIRE(spread.size() == 5);
    Code c(g, spread);
    CHECK(min_distance(c) == 4);
    DistancePartition dp = distance_partition(c);
    CHECK(dp.rho() == 2);
    CHECK(dp.cells[0].size() == 5);
    CHECK(dp.cells[1].size() == 15);
    CHECK(dp.cells[2].size() == 10);
    // partition covers every vertex exactly once
    size_t total = 0;
    for (const auto& cell : dp.cells) total += cell.size();
    CHECK(total == size_t(g->n));
    Classification cls = classify(c);
    CHECK(cls.partial);
    CHECK(cls.maximal);
    CHECK(cls.ovoid_or_spread);
    CHECK(cls.describe() == "spread");

    CountingCheck cc = counting_check(c);
    CHECK(cc.all_pass);
    CHECK(cc.identities[0].expected == 15); // (s+1)|C| = 3 * 5
}

TEST_CASE("single vertex and pair codes") {
    auto g = IncidenceGraph::build(build_w3(2));
    Code single(g, {0});
    CHECK(covering_radius(single) == 4);
    Classification cls = classify(single);
    CHECK(cls.partial);
    CHECK_FALSE(cls.maximal);
    CHECK_FALSE(cls.ovoid_or_spread);

    // two non-collinear points
    int other = -1;
    for (int v = 1; v < g->num_points; ++v)
        if (g->distance(0, v) == 4) { other = v; break; }
    REQUIRE(other > 0);
    Code pair(g, {0, other});
    CHECK(min_distance(pair) == 4);
    CHECK(classify(pair).partial);
    CHECK_FALSE(classify(pair).maximal);

    Code mixed(g, {0, 15});
    CHECK_THROWS_AS(classify(mixed), Error);
    CHECK_THROWS_AS(counting_check(mixed), Error);
    // delta = 2 codes fail the counting precondition
    Code close(g, {g->adj[15][0], g->adj[15][1]});
    CHECK(min_distance(close) == 2);
    CHECK_THROWS_AS(counting_check(close), Error);
}

TEST_CASE("counting identities for a point code with delta 4 at q = 3") {
    auto g = IncidenceGraph::build(build_w3(3));
    // greedy maximal set of pairwise non-collinear points
    std::vector<int> members;
    for (int v = 0; v < g->num_points; ++v) {
        bool ok = true;
        for (int m : members)
            if (g->distance(m, v) < 4) { ok = false; break; }
        if (ok) members.push_back(v);
    }
    REQUIRE(members.size() >= 2);
    Code c(g, members);
    REQUIRE(min_distance(c) == 4);
    CountingCheck cc = counting_check(c);
    CHECK(cc.all_pass);
    CHECK(cc.identities[0].expected == 4 * c.size());
    CHECK(cc.identities[1].expected == 40);
    CHECK(cc.identities[2].expected == 40);
}

TEST_CASE("rational helpers and the perfect-size identity") {
    CHECK(make_rational(30, 4) == Rational{15, 2});
    CHECK(make_rational(-6, -4) == Rational{3, 2});
    CHECK(make_rational(6, -4) == Rational{-3, 2});
    CHECK_THROWS_AS(make_rational(1, 0), Error);

    CHECK(perfect_size_identity(2) == Rational{15, 2});
    CHECK(perfect_size_identity(3) == Rational{16, 1});
    CHECK(perfect_size_identity(8) == Rational{117, 1});
    // the printed rewriting of the same quantity evaluates differently
    CHECK(perfect_size_printed_form(2) == Rational{11, 2});
    CHECK_FALSE(perfect_size_identity(2) == perfect_size_printed_form(2));
    // difference is 4s/(s+2)
    for (long long s = 1; s <= 50; ++s)
        CHECK(rational_sub(perfect_size_identity(s), perfect_size_printed_form(s)) ==
              make_rational(4 * s, s + 2));
}

TEST_CASE("perfect-size divisibility scan") {
    PerfectSizeScan scan = scan_perfect_size(1000);
    // (s+2) divides 2(s^3+s^2+s+1) iff (s+2) divides 10, so s = 3 or s = 8
    CHECK(scan.divisible_s == std::vector<long long>{3, 8});
    CHECK(scan.first_form_mismatch == 1);
    CHECK(scan.mismatch_count == 1000);
}
